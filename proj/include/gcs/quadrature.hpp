#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace gcs::quad {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
inline std::pair<double, double> legendre_pair(int order, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= order; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, p0};
}

}  // namespace detail

// Nodes by Newton iteration on P_n from the Chebyshev-like initial guess.
inline GaussLegendreRule gauss_legendre(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, pm] = detail::legendre_pair(order, x);
      const double dp = order * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = detail::legendre_pair(order, x);
    const double dp = order * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

inline const GaussLegendreRule& gl20() {
  static const GaussLegendreRule rule = gauss_legendre(20);
  return rule;
}

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

inline double gauss_legendre_panel(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = gl20();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

// Composite 20-point Gauss-Legendre on [a, b]. Every panel is bisected until
// its value agrees with the sum of its two halves; the run is converged when
// all panels have settled and the last two refinement levels agree to rel_tol.
inline IntegrationResult integrate(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol = 1e-10, int max_level = 40) {
  struct Panel {
    double a, b, value;
  };
  std::vector<Panel> active{{a, b, gauss_legendre_panel(f, a, b)}};
  double settled = 0.0;
  double previous = active.front().value;
  IntegrationResult out;
  out.panels = 1;
  for (int level = 0; level < max_level && !active.empty(); ++level) {
    std::vector<Panel> children;
    children.reserve(2 * active.size());
    double level_total = settled;
    for (const Panel& p : active) {
      const double m = 0.5 * (p.a + p.b);
      children.push_back({p.a, m, gauss_legendre_panel(f, p.a, m)});
      children.push_back({m, p.b, gauss_legendre_panel(f, m, p.b)});
      level_total += children[children.size() - 2].value + children.back().value;
    }
    out.panels += static_cast<int>(children.size());
    const double scale = std::max(std::abs(level_total), std::numeric_limits<double>::min());
    std::vector<Panel> still_active;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const Panel& l = children[2 * i];
      const Panel& r = children[2 * i + 1];
      if (std::abs(active[i].value - (l.value + r.value)) <= 1e-2 * rel_tol * scale) {
        settled += l.value + r.value;
      } else {
        still_active.push_back(l);
        still_active.push_back(r);
      }
    }
    out.value = level_total;
    out.error_estimate = std::abs(level_total - previous);
    previous = level_total;
    active = std::move(still_active);
  }
  out.converged = active.empty() || out.error_estimate <= rel_tol * std::abs(out.value);
  return out;
}

// Integral over [a, inf) through x = a + u / (1 - u).
inline IntegrationResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                                 double rel_tol = 1e-10, int max_level = 40) {
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double value = f(a + u / one_minus);
    if (value == 0.0) return 0.0;
    return value / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, rel_tol, max_level);
}

struct LogIntegral {
  double log_value = -std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = false;
};

// log of int_0^inf exp(log_integrand(t)) dt for a positive integrand, by the
// exp-sinh rule t = center * exp(pi/2 sinh s) and step halving. Sums are taken
// relative to the running maximum so neither tail overflows.
inline LogIntegral log_integrate_exp_sinh(const std::function<double(double)>& log_integrand, double center,
                                          double rel_tol = 1e-14, int max_halvings = 12) {
  const double half_pi = 0.5 * std::numbers::pi;
  const double log_center = std::log(center);
  LogIntegral out;
  auto log_term = [&](double s) {
    const double u = half_pi * std::sinh(s);
    const double log_t = log_center + u;
    if (log_t > 700.0) return -std::numeric_limits<double>::infinity();
    const double t = std::exp(log_t);
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    const double v = log_integrand(t);
    return v + log_t + std::log(half_pi * std::cosh(s));
  };

  // samples indexed by k*h; collect until the tails drop 45 e-folds under the peak
  double h = 0.5;
  auto collect = [&](double step) {
    std::vector<std::pair<double, double>> pts;
    double peak = -std::numeric_limits<double>::infinity();
    pts.emplace_back(0.0, log_term(0.0));
    peak = std::max(peak, pts.back().second);
    for (int dir : {1, -1}) {
      for (int k = 1; k < 4000; ++k) {
        const double s = dir * k * step;
        const double v = log_term(s);
        ++out.evaluations;
        pts.emplace_back(s, v);
        if (std::isfinite(v)) peak = std::max(peak, v);
        if (std::abs(s) > 1.0 && (!std::isfinite(v) || v < peak - 45.0)) break;
      }
    }
    double acc = 0.0;
    for (const auto& [s, v] : pts)
      if (std::isfinite(v)) acc += std::exp(v - peak);
    return peak + std::log(acc * step);
  };
  double prev = collect(h);
  for (int i = 0; i < max_halvings; ++i) {
    h *= 0.5;
    const double cur = collect(h);
    out.log_value = cur;
    if (std::abs(cur - prev) <= rel_tol) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

}  // namespace gcs::quad
