#pragma once

// Coherent-state expansions over the truncated Fock basis.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "gcs/error.hpp"
#include "gcs/families.hpp"

namespace gcs {

using cplx = std::complex<double>;

struct TruncationPolicy {
  double tolerance = 1e-12;  // target tail probability beyond N
  std::size_t max_n = 512;
  std::size_t min_n = 0;  // keep at least this many levels, even if the tail is already small
};

// Gazeau-Klauder labels; ħ = 1, z = sqrt(J)·e^{iθ}, stabilization phase ω·t.
struct GKLabel {
  double J = 0.0;
  double theta = 0.0;
  double t = 0.0;
  double omega = 1.0;
};

struct FockExpansion {
  Eigen::VectorXcd coefficients;
  FamilySpec family;
  cplx label_z{0.0, 0.0};
  std::optional<double> stabilization_alpha;
  std::size_t truncation_N = 0;
  double tail_mass = 0.0;
  std::optional<GKLabel> gk_label;

  std::size_t size() const { return static_cast<std::size_t>(coefficients.size()); }
  double norm() const { return coefficients.norm(); }
};

struct PhotonStatistics {
  std::vector<double> distribution;
  double mean_n = 0.0;
  double variance_n = 0.0;
  double mandel_q = 0.0;
  bool vacuum = false;  // mean below 1e-300, mandel_q set to 0
};

namespace detail {

// ln(x^n / ρ(n)) for n = 0..N chosen by the truncation policy.
struct LogSeries {
  std::vector<double> log_terms;
  double log_sum = 0.0;
  double tail = 0.0;  // relative to the included sum
};

inline void check_label(const FamilySpec& f, double abs_z) {
  if (abs_z == 0.0 || dimension(f)) return;
  const double radius = convergence_radius(f);
  if (std::isinf(radius)) return;
  if (!(abs_z <= 0.99 * radius))
    throw DivergenceError("|z| = " + format_number(abs_z) + " is not inside 0.99 x radius " + format_number(radius) +
                          " for " + to_string(f));
}

inline LogSeries log_series(const FamilySpec& f, double x, const TruncationPolicy& policy) {
  check_label(f, std::sqrt(x));
  LogSeries out;
  const auto dim = dimension(f);
  const double lx = x > 0.0 ? std::log(x) : -kInfinity;
  auto term = [&](std::size_t n) { return n == 0 ? 0.0 : static_cast<double>(n) * lx - log_weight(f, n); };

  if (dim) {
    const std::size_t top = *dim - 1;
    for (std::size_t n = 0; n <= top; ++n) out.log_terms.push_back(term(n));
  } else if (x == 0.0) {
    out.log_terms.assign(policy.min_n + 1, -kInfinity);
    out.log_terms[0] = 0.0;
  } else {
    out.log_terms.push_back(0.0);
    double log_sum = 0.0;
    std::size_t n = 0;
    double next = term(1);
    while (true) {
      const double ratio = std::exp(next - out.log_terms[n]);
      const double tail = ratio < 1.0 ? std::exp(next - log_sum) / (1.0 - ratio) : kInfinity;
      if (n >= policy.min_n && tail < policy.tolerance) {
        out.tail = tail;
        break;
      }
      if (n >= std::max(policy.max_n, policy.min_n))
        throw TruncationError("tail " + format_number(tail) + " above tolerance at N = " + std::to_string(n) + " for " +
                                  to_string(f),
                              tail);
      ++n;
      out.log_terms.push_back(next);
      log_sum = specfun::log_add(log_sum, next);
      next = term(n + 1);
    }
  }
  double s = -kInfinity;
  for (double t : out.log_terms) s = specfun::log_add(s, t);
  out.log_sum = s;
  return out;
}

}  // namespace detail

// |z⟩ ∝ Σ zⁿ e^{-iα e_n} / sqrt(ρ(n)) |n⟩, normalized on 0..N.
inline FockExpansion build_state(const FamilySpec& f, cplx z, std::optional<double> alpha = std::nullopt,
                                 const TruncationPolicy& policy = {}) {
  const double r = std::abs(z);
  const auto series = detail::log_series(f, r * r, policy);
  const double theta = std::arg(z);
  const std::size_t N = series.log_terms.size() - 1;
  FockExpansion s;
  s.family = f;
  s.label_z = z;
  s.stabilization_alpha = alpha;
  s.truncation_N = N;
  s.tail_mass = series.tail;
  s.coefficients.resize(static_cast<Eigen::Index>(N + 1));
  const double a = alpha.value_or(0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    const double mod = std::exp(0.5 * (series.log_terms[n] - series.log_sum));
    double phase = static_cast<double>(n) * theta;
    if (a != 0.0 && mod != 0.0) phase -= a * spectrum(f, n);
    s.coefficients[static_cast<Eigen::Index>(n)] = std::polar(mod, phase);
  }
  return s;
}

// N(x) = Σ xⁿ/ρ(n), truncated by the same policy as build_state.
inline double log_normalization_value(const FamilySpec& f, double x, const TruncationPolicy& policy = {}) {
  if (!(x >= 0.0)) throw DomainError("normalization_value: needs x >= 0");
  return detail::log_series(f, x, policy).log_sum;
}

inline double normalization_value(const FamilySpec& f, double x, const TruncationPolicy& policy = {}) {
  return std::exp(log_normalization_value(f, x, policy));
}

inline Eigen::VectorXcd padded(const Eigen::VectorXcd& v, std::size_t dim) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  const auto n = std::min<Eigen::Index>(v.size(), out.size());
  out.head(n) = v.head(n);
  return out;
}

inline cplx overlap(const FockExpansion& s1, const FockExpansion& s2) {
  const std::size_t dim = std::max(s1.size(), s2.size());
  return padded(s1.coefficients, dim).dot(padded(s2.coefficients, dim));
}

inline PhotonStatistics photon_statistics(const FockExpansion& s) {
  PhotonStatistics ps;
  ps.distribution.resize(s.size());
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double p = std::norm(s.coefficients[static_cast<Eigen::Index>(n)]);
    ps.distribution[n] = p;
    m1 += p * static_cast<double>(n);
    m2 += p * static_cast<double>(n) * static_cast<double>(n);
  }
  ps.mean_n = m1;
  ps.variance_n = m2 - m1 * m1;
  if (m1 < 1e-300) {
    ps.vacuum = true;
    ps.mandel_q = 0.0;
  } else {
    ps.mandel_q = ps.variance_n / m1 - 1.0;
  }
  return ps;
}

enum class Parity { even, odd };

// Normalized |z,α⟩ ± |-z,α⟩.
inline FockExpansion cat_superposition(const FamilySpec& f, cplx z, std::optional<double> alpha, Parity parity,
                                       const TruncationPolicy& policy = {}) {
  FockExpansion s = build_state(f, z, alpha, policy);
  const std::size_t keep = parity == Parity::even ? 0 : 1;
  for (std::size_t n = 0; n < s.size(); ++n)
    if (n % 2 != keep) s.coefficients[static_cast<Eigen::Index>(n)] = 0.0;
  const double norm = s.coefficients.norm();
  if (!(norm > 1e-150)) throw DegenerateStateError("cat superposition vanishes (odd parity at z = 0?)");
  s.coefficients /= norm;
  s.tail_mass /= norm * norm;
  return s;
}

}  // namespace gcs
