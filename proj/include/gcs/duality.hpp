#pragma once

// Gazeau-Klauder states, their duals and temporal stabilization.

#include <cmath>
#include <complex>
#include <cstddef>

#include "gcs/error.hpp"
#include "gcs/families.hpp"
#include "gcs/fock.hpp"

namespace gcs {

namespace detail {

inline void check_gk_label(const GKLabel& label) {
  if (!(label.J >= 0.0) || !std::isfinite(label.J)) throw DomainError("GK label: needs finite J >= 0");
  if (!(label.omega > 0.0)) throw DomainError("GK label: needs omega > 0");
}

}  // namespace detail

// |J, γ⟩ with γ = ωt: coefficients J^{n/2} e^{-i e_n γ} / sqrt(ρ(n)).
inline FockExpansion gk_state(const FamilySpec& f, const GKLabel& label, const TruncationPolicy& policy = {}) {
  detail::check_gk_label(label);
  if (label.theta != 0.0) throw DomainError("gk_state: theta must be 0; use generalized_gk_state");
  FockExpansion s = build_state(f, cplx(std::sqrt(label.J), 0.0), label.omega * label.t, policy);
  s.gk_label = label;
  return s;
}

// |z̃, α⟩ built from μ(n) = (n!)²/ρ(n) and ε_n = n²/e_n.
inline FockExpansion dual_gk_state(const FamilySpec& f, cplx z, double alpha, const TruncationPolicy& policy = {}) {
  return build_state(dual_family(f), z, alpha, policy);
}

// Multiplies c_n by e^{-iα e_n}.
inline FockExpansion stabilize(const FockExpansion& state, double alpha) {
  FockExpansion out = state;
  if (alpha == 0.0) return out;
  for (std::size_t n = 1; n < out.size(); ++n)
    out.coefficients[static_cast<Eigen::Index>(n)] *= std::polar(1.0, -alpha * spectrum(state.family, n));
  out.stabilization_alpha = state.stabilization_alpha.value_or(0.0) + alpha;
  if (out.gk_label) out.gk_label->t += alpha / out.gk_label->omega;
  return out;
}

// Time evolution under Ĥ = A†A for time t at frequency ω.
inline FockExpansion evolve(const FockExpansion& state, double t, double omega = 1.0) {
  return stabilize(state, omega * t);
}

// J^{n/2} e^{inθ} e^{-iω e_n t} / sqrt([e_n]!).
inline FockExpansion generalized_gk_state(const FamilySpec& f, const GKLabel& label,
                                          const TruncationPolicy& policy = {}) {
  detail::check_gk_label(label);
  FockExpansion s = build_state(f, std::polar(std::sqrt(label.J), label.theta), label.omega * label.t, policy);
  s.gk_label = label;
  return s;
}

inline FockExpansion dual_generalized_gk_state(const FamilySpec& f, const GKLabel& label,
                                               const TruncationPolicy& policy = {}) {
  return generalized_gk_state(dual_family(f), label, policy);
}

// ln [e_n]! = Σ_{k=1..n} ln e_k, which reproduces ln ρ(n).
inline double log_spectrum_factorial(const FamilySpec& f, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) s += std::log(spectrum(f, k));
  return s;
}

}  // namespace gcs
