#pragma once

// Coherent-state family registry. Every family is described by its weight
// sequence ρ(n) with ρ(0) = 1; spectrum e_n = ρ(n)/ρ(n-1) and nonlinearity
// f(n) = sqrt(e_n / n) are derived from it.

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gcs/error.hpp"
#include "gcs/specfun.hpp"

namespace gcs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace family {

struct Canonical {};

// Library-only family given by ln ρ(n). The callback must return 0 at n = 0.
struct KPSCustom {
  std::function<double(std::size_t)> log_rho;
  std::string name = "kps_custom";
};

struct MittagLeffler {
  double alpha = 1.0;
  double beta = 1.0;
};

struct Hypergeometric {
  std::vector<double> alphas;
  std::vector<double> betas;
};

struct TricomiFirst {
  double p = 1.0;
};

struct TricomiSecond {
  double lambda = 0.0;
  double beta = 1.0;
};

struct PensonSolomon {
  double q = 1.0;
};

struct BarutGirardello {
  double kappa = 1.0;
};

struct GilmorePerelomov {
  double kappa = 1.0;
};

// Fock index k = n - m of the Landau-level states.
struct LandauLevel {
  int m = 0;
  double alpha = 0.0;
};

// Either a finite list e_1..e_L (dimension L+1) or a callback e(n), n >= 1.
struct GazeauKlauderFromSpectrum {
  std::vector<double> values;
  std::function<double(std::size_t)> callback;
};

struct PoschlTeller {
  double nu = 3.0;
};

struct InfiniteWell {};
struct HydrogenLike {};

struct Morse {
  int M = 1;
};

}  // namespace family

class FamilySpec;

namespace family {
struct DualOf {
  std::shared_ptr<const FamilySpec> inner;
};
}  // namespace family

using FamilyVariant =
    std::variant<family::Canonical, family::KPSCustom, family::MittagLeffler, family::Hypergeometric,
                 family::TricomiFirst, family::TricomiSecond, family::PensonSolomon, family::BarutGirardello,
                 family::GilmorePerelomov, family::LandauLevel, family::GazeauKlauderFromSpectrum,
                 family::PoschlTeller, family::InfiniteWell, family::HydrogenLike, family::Morse,
                 family::DualOf>;

// Immutable, validated family description.
class FamilySpec {
 public:
  FamilySpec() : v_(family::Canonical{}) {}
  template <class T, class = std::enable_if_t<!std::is_same_v<std::decay_t<T>, FamilySpec> &&
                                              std::is_constructible_v<FamilyVariant, T>>>
  FamilySpec(T alt) : v_(std::move(alt)) {
    validate();
    collapse_double_dual();
  }

  const FamilyVariant& variant() const { return v_; }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&v_); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(v_); }

  bool is_dual() const { return is<family::DualOf>(); }
  const FamilySpec& inner() const {
    if (!is_dual()) throw DomainError("inner: family is not a dual");
    return *std::get<family::DualOf>(v_).inner;
  }

 private:
  void validate() const;
  void collapse_double_dual() {
    if (auto* d = std::get_if<family::DualOf>(&v_)) {
      if (d->inner->is_dual()) {
        FamilyVariant unwrapped = d->inner->inner().v_;
        v_ = std::move(unwrapped);
      }
    }
  }

  FamilyVariant v_;
};

inline FamilySpec dual_family(const FamilySpec& f) {
  if (f.is_dual()) return f.inner();
  return FamilySpec(family::DualOf{std::make_shared<const FamilySpec>(f)});
}

namespace detail {

inline bool is_half_integer_at_least_one(double kappa) {
  return kappa >= 1.0 && std::abs(2.0 * kappa - std::round(2.0 * kappa)) < 1e-12;
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace detail

inline void FamilySpec::validate() const {
  using namespace family;
  using detail::require;
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KPSCustom>) {
          require(static_cast<bool>(f.log_rho), "kps_custom: missing log-weight callback");
        } else if constexpr (std::is_same_v<T, MittagLeffler>) {
          require(f.alpha > 0.0 && f.beta > 0.0, "mittag_leffler: needs alpha > 0 and beta > 0");
        } else if constexpr (std::is_same_v<T, Hypergeometric>) {
          const auto p = static_cast<long>(f.alphas.size()), q = static_cast<long>(f.betas.size());
          require(p >= q - 1 && p <= q + 1, "hypergeometric: needs q-1 <= p <= q+1");
          for (double a : f.alphas) require(a > 0.0, "hypergeometric: alphas must be positive");
          for (double b : f.betas) require(b > 0.0, "hypergeometric: betas must be positive");
        } else if constexpr (std::is_same_v<T, TricomiFirst>) {
          require(f.p > 0.0, "tricomi1: needs p > 0");
        } else if constexpr (std::is_same_v<T, TricomiSecond>) {
          require(std::isfinite(f.lambda), "tricomi2: lambda must be finite");
          require(f.beta >= 1e-6, "tricomi2: needs beta >= 1e-6");
        } else if constexpr (std::is_same_v<T, PensonSolomon>) {
          require(f.q > 0.0 && f.q <= 1.0, "penson_solomon: needs 0 < q <= 1");
        } else if constexpr (std::is_same_v<T, BarutGirardello> || std::is_same_v<T, GilmorePerelomov>) {
          require(detail::is_half_integer_at_least_one(f.kappa), "kappa must be one of 1, 3/2, 2, 5/2, ...");
        } else if constexpr (std::is_same_v<T, LandauLevel>) {
          require(f.m >= 0, "landau: needs m >= 0");
          require(f.alpha > -1.0, "landau: needs alpha > -1");
        } else if constexpr (std::is_same_v<T, GazeauKlauderFromSpectrum>) {
          require(!f.values.empty() || static_cast<bool>(f.callback), "gk_spectrum: needs values or a callback");
          for (double e : f.values) require(std::isfinite(e) && e > 0.0, "gk_spectrum: e_n must be positive for n >= 1");
        } else if constexpr (std::is_same_v<T, PoschlTeller>) {
          require(f.nu > 2.0, "poschl_teller: needs nu > 2");
        } else if constexpr (std::is_same_v<T, Morse>) {
          require(f.M >= 1, "morse: needs M >= 1");
        } else if constexpr (std::is_same_v<T, DualOf>) {
          require(f.inner != nullptr, "dual: missing inner family");
        }
      },
      v_);
}

// Number of Fock states, or nullopt for infinite families.
inline std::optional<std::size_t> dimension(const FamilySpec& f) {
  if (auto* m = f.get_if<family::Morse>()) return static_cast<std::size_t>(m->M) + 1;
  if (auto* g = f.get_if<family::GazeauKlauderFromSpectrum>(); g && !g->values.empty()) return g->values.size() + 1;
  if (f.is_dual()) return dimension(f.inner());
  return std::nullopt;
}

namespace detail {

inline void check_index(const FamilySpec& f, std::size_t n) {
  if (auto d = dimension(f); d && n >= *d)
    throw DomainError("index " + std::to_string(n) + " beyond family dimension " + std::to_string(*d));
}

inline double log_tc1_d(double p, std::size_t n) {
  const double x = 1.0 / (4.0 * p);
  const double nd = static_cast<double>(n);
  return -0.5 * nd * std::log(p) - nd * std::numbers::ln2 + specfun::log_tricomi_u(0.5 * (nd + 1.0), 0.5, x) -
         specfun::log_tricomi_u(0.5, 0.5, x);
}

inline double log_tc2_d(double lambda, double beta, std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd * std::log(beta) + specfun::log_tricomi_u(nd + 1.0, nd + 2.0 - lambda, beta) -
         specfun::log_tricomi_u(1.0, 2.0 - lambda, beta);
}

inline double gk_value(const family::GazeauKlauderFromSpectrum& g, std::size_t n) {
  if (!g.values.empty()) return g.values.at(n - 1);
  const double e = g.callback(n);
  if (!(std::isfinite(e) && e > 0.0)) throw DomainError("gk_spectrum: callback returned non-positive e_" + std::to_string(n));
  return e;
}

}  // namespace detail

double log_weight(const FamilySpec& f, std::size_t n);

// e_n; closed forms where the family has one, ρ ratio otherwise.
inline double spectrum(const FamilySpec& f, std::size_t n) {
  using namespace family;
  detail::check_index(f, n);
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Canonical>) {
          return nd;
        } else if constexpr (std::is_same_v<T, Hypergeometric>) {
          double e = nd;
          for (double b : g.betas) e *= b + nd - 1.0;
          for (double a : g.alphas) e /= a + nd - 1.0;
          return e;
        } else if constexpr (std::is_same_v<T, PensonSolomon>) {
          return nd * std::pow(g.q, -2.0 * (nd - 1.0));
        } else if constexpr (std::is_same_v<T, BarutGirardello>) {
          return nd * (nd + 2.0 * g.kappa - 1.0);
        } else if constexpr (std::is_same_v<T, GilmorePerelomov>) {
          return nd / (nd + 2.0 * g.kappa - 1.0);
        } else if constexpr (std::is_same_v<T, LandauLevel>) {
          return nd * (nd + g.alpha + g.m);
        } else if constexpr (std::is_same_v<T, GazeauKlauderFromSpectrum>) {
          return detail::gk_value(g, n);
        } else if constexpr (std::is_same_v<T, PoschlTeller>) {
          return nd * (nd + g.nu);
        } else if constexpr (std::is_same_v<T, InfiniteWell>) {
          return nd * (nd + 2.0);
        } else if constexpr (std::is_same_v<T, HydrogenLike>) {
          return 1.0 - 1.0 / ((nd + 1.0) * (nd + 1.0));
        } else if constexpr (std::is_same_v<T, Morse>) {
          return nd * (g.M + 1.0 - nd) / (g.M + 2.0);
        } else if constexpr (std::is_same_v<T, DualOf>) {
          return nd * nd / spectrum(*g.inner, n);
        } else {
          return std::exp(log_weight(f, n) - log_weight(f, n - 1));
        }
      },
      f.variant());
}

// ln ρ(n), normalized so that ln ρ(0) = 0.
inline double log_weight(const FamilySpec& f, std::size_t n) {
  using namespace family;
  detail::check_index(f, n);
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  const double lf = specfun::log_factorial(n);
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Canonical>) {
          return lf;
        } else if constexpr (std::is_same_v<T, KPSCustom>) {
          return g.log_rho(n) - g.log_rho(0);
        } else if constexpr (std::is_same_v<T, MittagLeffler>) {
          return std::lgamma(g.alpha * nd + g.beta) - std::lgamma(g.beta);
        } else if constexpr (std::is_same_v<T, Hypergeometric>) {
          double s = lf;
          for (double b : g.betas) s += specfun::log_pochhammer(b, n);
          for (double a : g.alphas) s -= specfun::log_pochhammer(a, n);
          return s;
        } else if constexpr (std::is_same_v<T, TricomiFirst>) {
          return lf + detail::log_tc1_d(g.p, n);
        } else if constexpr (std::is_same_v<T, TricomiSecond>) {
          return lf + detail::log_tc2_d(g.lambda, g.beta, n);
        } else if constexpr (std::is_same_v<T, PensonSolomon>) {
          return lf - nd * (nd - 1.0) * std::log(g.q);
        } else if constexpr (std::is_same_v<T, BarutGirardello>) {
          return lf + specfun::log_pochhammer(2.0 * g.kappa, n);
        } else if constexpr (std::is_same_v<T, GilmorePerelomov>) {
          return lf - specfun::log_pochhammer(2.0 * g.kappa, n);
        } else if constexpr (std::is_same_v<T, LandauLevel>) {
          const double s = g.alpha + g.m + 1.0;
          return lf + std::lgamma(s + nd) - std::lgamma(s);
        } else if constexpr (std::is_same_v<T, GazeauKlauderFromSpectrum>) {
          double s = 0.0;
          for (std::size_t k = 1; k <= n; ++k) s += std::log(detail::gk_value(g, k));
          return s;
        } else if constexpr (std::is_same_v<T, PoschlTeller>) {
          return lf + std::lgamma(nd + g.nu + 1.0) - std::lgamma(g.nu + 1.0);
        } else if constexpr (std::is_same_v<T, InfiniteWell>) {
          return lf + std::lgamma(nd + 3.0) - std::numbers::ln2;
        } else if constexpr (std::is_same_v<T, HydrogenLike>) {
          return std::log(nd + 2.0) - std::log(2.0 * (nd + 1.0));
        } else if constexpr (std::is_same_v<T, Morse>) {
          return lf + std::lgamma(g.M + 1.0) - nd * std::log(g.M + 2.0) - std::lgamma(g.M + 1.0 - nd);
        } else {
          return 2.0 * lf - log_weight(*g.inner, n);
        }
      },
      f.variant());
}

inline double weight(const FamilySpec& f, std::size_t n) { return std::exp(log_weight(f, n)); }

inline double nonlinearity(const FamilySpec& f, std::size_t n) {
  if (n == 0) throw DomainError("nonlinearity: defined for n >= 1");
  return std::sqrt(spectrum(f, n) / static_cast<double>(n));
}

// The per-family f(n) printed in the literature, where one exists. Used only
// for cross-checks against the derived f(n).
inline std::optional<double> published_nonlinearity(const FamilySpec& f, std::size_t n) {
  using namespace family;
  if (n == 0) return std::nullopt;
  detail::check_index(f, n);
  const double nd = static_cast<double>(n);
  return std::visit(
      [&](const auto& g) -> std::optional<double> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Canonical>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, Hypergeometric>) {
          double r = nd - 1.0;
          for (double b : g.betas) r *= b + nd - 1.0;
          for (double a : g.alphas) r /= a + nd - 1.0;
          return std::sqrt(std::max(r, 0.0));
        } else if constexpr (std::is_same_v<T, TricomiFirst>) {
          const double x = 1.0 / (4.0 * g.p);
          const double lr = specfun::log_tricomi_u(0.5 * (nd + 1.0), 0.5, x) - specfun::log_tricomi_u(0.5 * nd, 0.5, x);
          return std::sqrt(2.0 / std::sqrt(g.p) * std::exp(lr));
        } else if constexpr (std::is_same_v<T, TricomiSecond>) {
          const double lr = specfun::log_tricomi_u(nd + 1.0, nd + 2.0 - g.lambda, g.beta) -
                            specfun::log_tricomi_u(nd, nd + 1.0 - g.lambda, g.beta);
          return std::sqrt(g.beta * std::exp(lr));
        } else if constexpr (std::is_same_v<T, PensonSolomon>) {
          return std::pow(g.q, 1.0 - nd);
        } else if constexpr (std::is_same_v<T, BarutGirardello>) {
          return std::sqrt(nd + 2.0 * g.kappa - 1.0);
        } else if constexpr (std::is_same_v<T, GilmorePerelomov>) {
          return 1.0 / std::sqrt(nd + 2.0 * g.kappa - 1.0);
        } else if constexpr (std::is_same_v<T, LandauLevel>) {
          // printed in the original index n = k + m
          const double orig = nd + g.m;
          return (orig - g.m + 1.0) * (orig + g.alpha + 1.0) / std::sqrt(orig + 1.0);
        } else {
          return std::nullopt;
        }
      },
      f.variant());
}

// Large-n behaviour e_n ~ c·n^k used for the convergence radius.
struct Asymptotics {
  double c = 1.0;
  double k = 1.0;
  bool finite_dimension = false;
  bool estimated = false;  // obtained from a numeric tail probe
  double limit = kInfinity;  // lim e_n
};

namespace detail {

inline double limit_from(double c, double k) {
  if (k > 0.0) return kInfinity;
  if (k < 0.0) return 0.0;
  return c;
}

// Richardson-style probe on e_n for n = 2500..10^4.
inline Asymptotics probe_tail(const FamilySpec& f) {
  Asymptotics a;
  a.estimated = true;
  const double e2 = spectrum(f, 2500), e3 = spectrum(f, 5000), e4 = spectrum(f, 10000);
  const double k_prev = std::log2(e3 / e2);
  const double k = std::log2(e4 / e3);
  a.k = std::abs(k) < 0.02 ? 0.0 : k;
  if (a.k == 0.0) {
    // e_n ≈ L + b/n: combine the last two probes
    a.c = 2.0 * e4 - e3;
    if (std::abs(k - k_prev) > 0.05 || std::abs((2.0 * e3 - e2) - a.c) > 1e-3 * std::abs(a.c)) a.c = e4;
  } else {
    a.c = e4 / std::pow(10000.0, a.k);
  }
  a.limit = limit_from(a.c, a.k);
  return a;
}

}  // namespace detail

inline Asymptotics asymptotics(const FamilySpec& f) {
  using namespace family;
  if (dimension(f)) {
    Asymptotics a;
    a.finite_dimension = true;
    a.limit = kInfinity;
    return a;
  }
  auto make = [](double c, double k) {
    Asymptotics a;
    a.c = c;
    a.k = k;
    a.limit = detail::limit_from(c, k);
    return a;
  };
  return std::visit(
      [&](const auto& g) -> Asymptotics {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Canonical> || std::is_same_v<T, TricomiSecond>) {
          return make(1.0, 1.0);
        } else if constexpr (std::is_same_v<T, MittagLeffler>) {
          return make(std::pow(g.alpha, g.alpha), g.alpha);
        } else if constexpr (std::is_same_v<T, Hypergeometric>) {
          return make(1.0, 1.0 + static_cast<double>(g.betas.size()) - static_cast<double>(g.alphas.size()));
        } else if constexpr (std::is_same_v<T, TricomiFirst>) {
          return make(1.0 / std::sqrt(2.0 * g.p), 0.5);
        } else if constexpr (std::is_same_v<T, PensonSolomon>) {
          return g.q < 1.0 ? make(1.0, kInfinity) : make(1.0, 1.0);
        } else if constexpr (std::is_same_v<T, BarutGirardello> || std::is_same_v<T, LandauLevel> ||
                             std::is_same_v<T, PoschlTeller> || std::is_same_v<T, InfiniteWell>) {
          return make(1.0, 2.0);
        } else if constexpr (std::is_same_v<T, GilmorePerelomov> || std::is_same_v<T, HydrogenLike>) {
          return make(1.0, 0.0);
        } else if constexpr (std::is_same_v<T, DualOf>) {
          const Asymptotics in = asymptotics(*g.inner);
          Asymptotics a = make(1.0 / in.c, 2.0 - in.k);
          a.estimated = in.estimated;
          return a;
        } else {
          return detail::probe_tail(f);
        }
      },
      f.variant());
}

// Radius in the |z| plane: sqrt(lim e_n). Infinite for finite-dimensional
// families, whose sums always converge.
inline double convergence_radius(const FamilySpec& f) {
  const Asymptotics a = asymptotics(f);
  return std::sqrt(a.limit);
}

struct WeightSequence {
  std::vector<double> log_values;
  bool normalized_at_zero = true;

  double operator[](std::size_t n) const { return std::exp(log_values.at(n)); }
  std::size_t size() const { return log_values.size(); }
};

struct Spectrum {
  std::vector<double> values;
  std::size_t monotone_up_to = 0;  // largest n with e_0 < e_1 < ... < e_n
};

struct NonlinearityFn {
  std::vector<double> modulus;     // f(1), f(2), ...
  std::vector<double> phase_rate;  // e_n - e_{n-1}, n >= 1
};

// ρ(0..n_max), clipped to the family dimension.
inline WeightSequence weight_table(const FamilySpec& f, std::size_t n_max) {
  WeightSequence w;
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  w.log_values.reserve(top + 1);
  for (std::size_t n = 0; n <= top; ++n) w.log_values.push_back(log_weight(f, n));
  return w;
}

inline Spectrum spectrum_table(const FamilySpec& f, std::size_t n_max) {
  Spectrum s;
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  s.values.reserve(top + 1);
  bool rising = true;
  for (std::size_t n = 0; n <= top; ++n) {
    s.values.push_back(spectrum(f, n));
    if (n > 0 && rising) {
      if (s.values[n] > s.values[n - 1]) s.monotone_up_to = n;
      else rising = false;
    }
  }
  return s;
}

inline NonlinearityFn nonlinearity_table(const FamilySpec& f, std::size_t n_max) {
  const Spectrum s = spectrum_table(f, n_max);
  NonlinearityFn out;
  for (std::size_t n = 1; n < s.values.size(); ++n) {
    out.modulus.push_back(std::sqrt(s.values[n] / static_cast<double>(n)));
    out.phase_rate.push_back(s.values[n] - s.values[n - 1]);
  }
  return out;
}

// ---- text form ---------------------------------------------------------

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string join_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ':';
    s += format_number(xs[i]);
  }
  return s;
}

}  // namespace detail

inline std::string to_string(const FamilySpec& f) {
  using namespace family;
  const auto num = format_number;
  return std::visit(
      [&](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Canonical>) return "canonical";
        else if constexpr (std::is_same_v<T, KPSCustom>) return g.name;
        else if constexpr (std::is_same_v<T, MittagLeffler>)
          return "mittag_leffler(alpha=" + num(g.alpha) + ",beta=" + num(g.beta) + ")";
        else if constexpr (std::is_same_v<T, Hypergeometric>)
          return "hypergeometric(alphas=" + detail::join_list(g.alphas) + ",betas=" + detail::join_list(g.betas) + ")";
        else if constexpr (std::is_same_v<T, TricomiFirst>) return "tricomi1(p=" + num(g.p) + ")";
        else if constexpr (std::is_same_v<T, TricomiSecond>)
          return "tricomi2(lambda=" + num(g.lambda) + ",beta=" + num(g.beta) + ")";
        else if constexpr (std::is_same_v<T, PensonSolomon>) return "penson_solomon(q=" + num(g.q) + ")";
        else if constexpr (std::is_same_v<T, BarutGirardello>) return "bg(kappa=" + num(g.kappa) + ")";
        else if constexpr (std::is_same_v<T, GilmorePerelomov>) return "gp(kappa=" + num(g.kappa) + ")";
        else if constexpr (std::is_same_v<T, LandauLevel>)
          return "landau(m=" + std::to_string(g.m) + ",alpha=" + num(g.alpha) + ")";
        else if constexpr (std::is_same_v<T, GazeauKlauderFromSpectrum>)
          return g.values.empty() ? std::string("gk_spectrum(callback)") : "gk_spectrum(e=" + detail::join_list(g.values) + ")";
        else if constexpr (std::is_same_v<T, PoschlTeller>) return "poschl_teller(nu=" + num(g.nu) + ")";
        else if constexpr (std::is_same_v<T, InfiniteWell>) return "infinite_well";
        else if constexpr (std::is_same_v<T, HydrogenLike>) return "hydrogen";
        else if constexpr (std::is_same_v<T, Morse>) return "morse(M=" + std::to_string(g.M) + ")";
        else return "dual(" + to_string(*g.inner) + ")";
      },
      f.variant());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view s, const std::string& what) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("bad number for " + what + ": '" + std::string(s) + "'");
  return v;
}

inline int parse_int(std::string_view s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v)) throw DomainError(what + " must be an integer");
  return static_cast<int>(v);
}

inline std::vector<double> parse_list(std::string_view s, const std::string& what) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(':', start);
    out.push_back(parse_number(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start), what));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Parameters k=v separated by commas at paren depth zero.
struct ParamList {
  std::vector<std::pair<std::string, std::string>> items;
  std::vector<bool> used;

  std::optional<std::string> take(std::initializer_list<const char*> keys) {
    for (std::size_t i = 0; i < items.size(); ++i)
      for (const char* k : keys)
        if (items[i].first == k) {
          used[i] = true;
          return items[i].second;
        }
    return std::nullopt;
  }
  void finish(const std::string& family_name) const {
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!used[i]) throw DomainError("unknown parameter '" + items[i].first + "' for " + family_name);
  }
};

inline ParamList split_params(std::string_view body) {
  ParamList pl;
  body = trim(body);
  if (body.empty()) return pl;
  int depth = 0;
  std::size_t start = 0;
  auto push = [&](std::string_view item) {
    item = trim(item);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("expected key=value, got '" + std::string(item) + "'");
    pl.items.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
    pl.used.push_back(false);
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    else if (body[i] == ')') --depth;
    else if (body[i] == ',' && depth == 0) {
      push(body.substr(start, i - start));
      start = i + 1;
    }
  }
  push(body.substr(start));
  return pl;
}

}  // namespace detail

// Parses `name(k=v,...)`; the parentheses may be omitted when there are no
// parameters. Throws DomainError on unknown names, keys or bad values.
inline FamilySpec parse_family(std::string_view text) {
  using namespace family;
  text = detail::trim(text);
  std::string_view name = text, body;
  if (const auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') throw DomainError("unbalanced parentheses in family '" + std::string(text) + "'");
    name = detail::trim(text.substr(0, open));
    body = text.substr(open + 1, text.size() - open - 2);
  }
  const std::string nm(name);
  if (nm == "dual") {
    if (detail::trim(body).empty()) throw DomainError("dual() needs an inner family");
    return dual_family(parse_family(body));
  }
  auto params = detail::split_params(body);
  auto need = [&](std::initializer_list<const char*> keys, const char* label) {
    auto v = params.take(keys);
    if (!v) throw DomainError(nm + ": missing parameter " + label);
    return *v;
  };
  auto num = [&](std::initializer_list<const char*> keys, const char* label) {
    return detail::parse_number(need(keys, label), label);
  };
  auto opt = [&](std::initializer_list<const char*> keys, const char* label, double fallback) {
    auto v = params.take(keys);
    return v ? detail::parse_number(*v, label) : fallback;
  };

  FamilySpec out;
  if (nm == "canonical") {
    out = Canonical{};
  } else if (nm == "mittag_leffler" || nm == "ml") {
    out = MittagLeffler{num({"alpha"}, "alpha"), opt({"beta"}, "beta", 1.0)};
  } else if (nm == "hypergeometric" || nm == "hg") {
    auto a = params.take({"alphas", "alpha"});
    auto b = params.take({"betas", "beta"});
    out = Hypergeometric{a ? detail::parse_list(*a, "alphas") : std::vector<double>{},
                         b ? detail::parse_list(*b, "betas") : std::vector<double>{}};
  } else if (nm == "tricomi1") {
    out = TricomiFirst{num({"p"}, "p")};
  } else if (nm == "tricomi2") {
    out = TricomiSecond{num({"lambda"}, "lambda"), num({"beta"}, "beta")};
  } else if (nm == "penson_solomon" || nm == "ps") {
    out = PensonSolomon{num({"q"}, "q")};
  } else if (nm == "bg" || nm == "barut_girardello") {
    out = BarutGirardello{num({"kappa"}, "kappa")};
  } else if (nm == "gp" || nm == "gilmore_perelomov") {
    out = GilmorePerelomov{num({"kappa"}, "kappa")};
  } else if (nm == "landau") {
    out = LandauLevel{detail::parse_int(need({"m"}, "m"), "m"), num({"alpha"}, "alpha")};
  } else if (nm == "gk_spectrum") {
    out = GazeauKlauderFromSpectrum{detail::parse_list(need({"e"}, "e"), "e"), {}};
  } else if (nm == "poschl_teller" || nm == "pt") {
    out = PoschlTeller{num({"nu"}, "nu")};
  } else if (nm == "infinite_well" || nm == "iw") {
    out = InfiniteWell{};
  } else if (nm == "hydrogen") {
    out = HydrogenLike{};
  } else if (nm == "morse") {
    out = Morse{detail::parse_int(need({"M", "m"}, "M"), "M")};
  } else {
    throw DomainError("unknown family '" + nm + "'");
  }
  params.finish(nm);
  return out;
}

struct CatalogEntry {
  std::string name;
  std::string parameters;
  std::string example;
};

inline std::vector<CatalogEntry> catalog() {
  return {
      {"canonical", "none", "canonical"},
      {"mittag_leffler", "alpha > 0, beta > 0 (default 1)", "mittag_leffler(alpha=2,beta=1)"},
      {"hypergeometric", "alphas, betas > 0 as a:b:c lists, q-1 <= p <= q+1", "hypergeometric(alphas=2,betas=1:3)"},
      {"tricomi1", "p > 0", "tricomi1(p=0.5)"},
      {"tricomi2", "lambda real, beta >= 1e-6", "tricomi2(lambda=0.5,beta=1)"},
      {"penson_solomon", "0 < q <= 1", "penson_solomon(q=0.8)"},
      {"bg", "kappa in {1, 3/2, 2, ...}", "bg(kappa=1)"},
      {"gp", "kappa in {1, 3/2, 2, ...}; |z| < 1", "gp(kappa=1)"},
      {"landau", "m >= 0 integer, alpha > -1", "landau(m=1,alpha=0.5)"},
      {"gk_spectrum", "e = e_1:e_2:...:e_L, all > 0 (dimension L+1)", "gk_spectrum(e=1:3:6)"},
      {"poschl_teller", "nu > 2", "poschl_teller(nu=3)"},
      {"infinite_well", "none", "infinite_well"},
      {"hydrogen", "none; |z| < 1", "hydrogen"},
      {"morse", "M >= 1 integer (dimension M+1)", "morse(M=3)"},
      {"dual", "any family above", "dual(poschl_teller(nu=3))"},
  };
}

}  // namespace gcs
