#pragma once

// Reference values computed by routes independent of the library: direct
// products, textbook series in long double, and closed forms.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline long double factorial(unsigned n) {
  long double p = 1.0L;
  for (unsigned k = 2; k <= n; ++k) p *= k;
  return p;
}

inline long double rising(long double g, unsigned n) {
  long double p = 1.0L;
  for (unsigned k = 0; k < n; ++k) p *= g + k;
  return p;
}

// E1(x) = -γ - ln x - Σ (-x)^k / (k k!)
inline double expint_e1(double x) {
  const long double gamma = 0.577215664901532860606512090082402431L;
  long double sum = 0.0L, term = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -static_cast<long double>(x) / k;
    sum += term / k;
  }
  return static_cast<double>(-gamma - std::log(static_cast<long double>(x)) - sum);
}

// U(1/2, 1/2, x) = sqrt(pi) e^x erfc(sqrt(x))
inline double tricomi_half_half(double x) { return std::sqrt(std::numbers::pi) * std::exp(x) * std::erfc(std::sqrt(x)); }

// I_ν(x) from a fixed number of series terms in long double.
inline double bessel_i(double nu, double x, int terms = 60) {
  long double s = 0.0L;
  for (int k = 0; k < terms; ++k)
    s += std::pow(0.5L * x, 2.0L * k + nu) / (factorial(k) * std::tgamma(static_cast<long double>(k) + nu + 1.0L));
  return static_cast<double>(s);
}

// L_m(x) = Σ C(m,k) (-x)^k / k!
inline double laguerre(unsigned m, double x) {
  long double s = 0.0L;
  for (unsigned k = 0; k <= m; ++k)
    s += factorial(m) / (factorial(k) * factorial(m - k)) * std::pow(-static_cast<long double>(x), k) / factorial(k);
  return static_cast<double>(s);
}

// Canonical coherent-state coefficients e^{-|z|²/2} zⁿ/sqrt(n!).
inline std::vector<std::complex<double>> canonical_state(std::complex<double> z, std::size_t N) {
  std::vector<std::complex<double>> c(N + 1);
  const double pref = std::exp(-0.5 * std::norm(z));
  std::complex<double> zn = 1.0;
  for (std::size_t n = 0; n <= N; ++n) {
    c[n] = pref * zn / std::sqrt(static_cast<double>(factorial(static_cast<unsigned>(n))));
    zn *= z;
  }
  return c;
}

// Σ_{n<=top} x^n / ρ(n) with ρ given as a callable returning long double.
template <class Rho>
long double series(double x, unsigned top, Rho rho) {
  long double s = 0.0L;
  for (unsigned n = 0; n <= top; ++n) s += std::pow(static_cast<long double>(x), n) / rho(n);
  return s;
}

// B(a, b) via tgamma.
inline double beta_fn(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

}  // namespace oracle
