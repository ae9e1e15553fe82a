#pragma once

#include "gcs/error.hpp"
#include "gcs/specfun.hpp"
#include "gcs/quadrature.hpp"
#include "gcs/families.hpp"
#include "gcs/fock.hpp"
#include "gcs/opspace.hpp"
#include "gcs/duality.hpp"
#include "gcs/verify.hpp"
#include "gcs/io.hpp"
