#pragma once

// Real special functions used by the family catalogue. Everything that can
// overflow has a log-space variant.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "gcs/error.hpp"
#include "gcs/quadrature.hpp"

namespace gcs::specfun {

// Result of a series or quadrature evaluation. When log_scale is set the true
// value is value * exp(*log_scale) and |value| lies in [1, e).
struct EvalResult {
  double value = 0.0;
  std::optional<double> log_scale;
  int terms_used = 0;
  bool converged = false;

  double log_abs() const { return std::log(std::abs(value)) + log_scale.value_or(0.0); }
  double plain() const { return log_scale ? value * std::exp(*log_scale) : value; }
};

inline constexpr double kSeriesTolerance = 1e-15;
inline constexpr int kSeriesCap = 100000;

// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return std::lgamma(x);
}

inline double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// ln |(γ)_n| for γ > 0 via log-gamma differences.
inline double log_pochhammer(double gamma, std::size_t n) {
  if (n == 0) return 0.0;
  if (!(gamma > 0.0)) throw DomainError("log_pochhammer: needs gamma > 0");
  return std::lgamma(gamma + static_cast<double>(n)) - std::lgamma(gamma);
}

// (γ)_n by direct product; any real γ as long as no factor vanishes.
inline double pochhammer(double gamma, std::size_t n) {
  double p = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double factor = gamma + static_cast<double>(k);
    if (factor == 0.0) throw DomainError("pochhammer: pole hit at k = " + std::to_string(k));
    p *= factor;
  }
  return p;
}

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

}  // namespace detail

// pFq(alphas; betas; x) by direct summation. Stops after two consecutive terms
// fall below tol·|partial sum|; rescales internally so large sums come back
// with a log_scale instead of overflowing.
inline EvalResult generalized_hypergeometric(std::span<const double> alphas, std::span<const double> betas,
                                             double x) {
  const std::size_t p = alphas.size(), q = betas.size();
  if (p > q + 1) throw DomainError("generalized_hypergeometric: p > q + 1 diverges for every x != 0");
  if (p == q + 1 && std::abs(x) >= 1.0) throw DivergenceError("generalized_hypergeometric: p = q + 1 needs |x| < 1");
  for (double b : betas)
    if (detail::is_nonpositive_integer(b)) throw DomainError("generalized_hypergeometric: beta is a non-positive integer");

  EvalResult out;
  double term = 1.0, sum = 1.0, scale = 0.0;
  int small_run = 0;
  for (int n = 0; n < kSeriesCap; ++n) {
    double ratio = x / (n + 1.0);
    for (double a : alphas) ratio *= a + n;
    for (double b : betas) ratio /= b + n;
    term *= ratio;
    sum += term;
    out.terms_used = n + 2;
    if (std::abs(sum) > 1e250) {
      scale += std::log(1e250);
      sum /= 1e250;
      term /= 1e250;
    }
    if (std::abs(term) < kSeriesTolerance * std::abs(sum)) {
      if (++small_run == 2) {
        out.converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  const double total_log = std::log(std::abs(sum)) + scale;
  if (scale == 0.0 || total_log < 700.0) {
    out.value = sum * std::exp(scale);
  } else {
    const double ls = std::floor(total_log);
    out.value = std::copysign(std::exp(total_log - ls), sum);
    out.log_scale = ls;
  }
  return out;
}

// ln U(a, b, z) from the integral representation
//   U = 1/Γ(a) ∫_0^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,   a > 0, z > 0.
inline double log_tricomi_u(double a, double b, double z) {
  if (!(a > 0.0)) throw DomainError("tricomi_u: integral representation needs a > 0");
  if (!(z > 0.0)) throw DomainError("tricomi_u: integral representation needs z > 0");
  const double c = b - a - 1.0;
  auto log_integrand = [=](double t) { return -z * t + (a - 1.0) * std::log(t) + c * std::log1p(t); };

  // peak of t·integrand in u = ln t: root of -z e^u + a + c e^u/(1+e^u)
  auto slope = [=](double u) {
    const double t = std::exp(u);
    return -z * t + a + c * t / (1.0 + t);
  };
  double lo = -60.0, hi = 60.0;
  if (slope(lo) <= 0.0) {
    hi = lo;
  } else {
    while (slope(hi) > 0.0 && hi < 700.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
  }
  const double center = std::exp(0.5 * (lo + hi));
  const auto integral = quad::log_integrate_exp_sinh(log_integrand, center, 1e-14);
  return integral.log_value - std::lgamma(a);
}

inline double tricomi_u(double a, double b, double z) { return std::exp(log_tricomi_u(a, b, z)); }

// I_ν(x) by the ascending series, terms accumulated in log space.
inline double modified_bessel_i(double nu, double x) {
  if (!(nu >= 0.0)) throw DomainError("modified_bessel_i: needs nu >= 0");
  if (!(x >= 0.0)) throw DomainError("modified_bessel_i: needs x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double log_half_x = std::log(0.5 * x);
  const double log_lead = nu * log_half_x - std::lgamma(nu + 1.0);
  // ratio of successive terms: (x/2)^2 / ((k+1)(k+1+ν))
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  int small_run = 0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= q / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (term < kSeriesTolerance * sum) {
      if (++small_run == 2) break;
    } else {
      small_run = 0;
    }
  }
  return std::exp(log_lead + std::log(sum));
}

// Laguerre polynomial L_m^{(0)}(x) by the three-term recurrence.
inline double laguerre(std::size_t m, double x) {
  if (m == 0) return 1.0;
  double prev = 1.0, cur = 1.0 - x;
  for (std::size_t k = 1; k < m; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 - x) * cur - kd * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace gcs::specfun
