#pragma once

// Numerical checks of the coherent-state identities. Every check returns
// VerifyReport values whose pass flag is recomputable from the residual.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcs/duality.hpp"
#include "gcs/error.hpp"
#include "gcs/families.hpp"
#include "gcs/fock.hpp"
#include "gcs/opspace.hpp"
#include "gcs/quadrature.hpp"

namespace gcs {

struct VerifyReport {
  std::string check_name;
  cplx target{0.0, 0.0};
  cplx computed{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool relative = true;  // which residual the tolerance applies to
  bool passed = false;
  bool skipped = false;  // informational; never counts as a failure
  std::string notes;

  double applicable_residual() const { return relative ? rel_residual : abs_residual; }
  bool failed() const { return !skipped && !passed; }
};

inline VerifyReport make_report(std::string name, cplx target, cplx computed, double tol, bool relative,
                                std::string notes = {}) {
  VerifyReport r;
  r.check_name = std::move(name);
  r.target = target;
  r.computed = computed;
  r.abs_residual = std::abs(computed - target);
  r.rel_residual = std::abs(target) > 0.0 ? r.abs_residual / std::abs(target) : r.abs_residual;
  r.tolerance = tol;
  r.relative = relative;
  r.passed = r.applicable_residual() <= tol;
  r.notes = std::move(notes);
  return r;
}

inline VerifyReport skipped_report(std::string name, std::string notes) {
  VerifyReport r;
  r.check_name = std::move(name);
  r.skipped = true;
  r.passed = false;
  r.tolerance = 0.0;
  r.notes = std::move(notes);
  return r;
}

inline bool all_passed(const std::vector<VerifyReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.failed(); });
}

namespace weights {

// ν(1-x)^{ν-1} on [0, 1].
struct PTWeight {
  double nu = 3.0;
};
// 2(1-x) on [0, 1].
struct IWWeight {};
// e^{-x} on [0, ∞).
struct CanonicalWeight {};
// ln w(x) on [0, R]; R may be infinite.
struct Custom {
  std::function<double(double)> log_w;
  double R = kInfinity;
  std::string name = "custom";
};

}  // namespace weights

using WeightFunction = std::variant<weights::PTWeight, weights::IWWeight, weights::CanonicalWeight, weights::Custom>;

namespace detail {

struct WeightView {
  std::function<double(double)> log_w;
  double R;
  std::string name;
};

inline WeightView view(const WeightFunction& w) {
  return std::visit(
      [](const auto& v) -> WeightView {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, weights::PTWeight>) {
          const double nu = v.nu;
          return {[nu](double x) { return std::log(nu) + (nu - 1.0) * std::log1p(-x); }, 1.0,
                  "pt_weight(nu=" + format_number(nu) + ")"};
        } else if constexpr (std::is_same_v<T, weights::IWWeight>) {
          return {[](double x) { return std::numbers::ln2 + std::log1p(-x); }, 1.0, "iw_weight"};
        } else if constexpr (std::is_same_v<T, weights::CanonicalWeight>) {
          return {[](double x) { return -x; }, kInfinity, "canonical_weight"};
        } else {
          return {v.log_w, v.R, v.name};
        }
      },
      w);
}

}  // namespace detail

// ∫ xⁿ w(x) dx against ρ(n) for n = 0..n_max. The integrand is divided by
// ρ(n) inside the exponential, so the quadrature always targets 1.
inline std::vector<VerifyReport> verify_moments(const WeightFunction& w, const FamilySpec& f, std::size_t n_max,
                                                double tol = 1e-8) {
  const auto wv = detail::view(w);
  std::vector<VerifyReport> out;
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  for (std::size_t n = 0; n <= top; ++n) {
    const double lr = log_weight(f, n);
    const double nd = static_cast<double>(n);
    auto integrand = [&](double x) {
      if (x <= 0.0) return n == 0 ? std::exp(wv.log_w(0.0) - lr) : 0.0;
      if (x >= wv.R) return 0.0;
      const double v = nd * std::log(x) + wv.log_w(x) - lr;
      return std::isfinite(v) ? std::exp(v) : 0.0;
    };
    const auto res = std::isinf(wv.R) ? quad::integrate_semi_infinite(integrand, 0.0, 1e-12)
                                      : quad::integrate(integrand, 0.0, wv.R, 1e-12);
    const double rho = std::exp(lr);
    auto r = make_report("moment n=" + std::to_string(n), rho, rho * res.value, tol, true,
                         wv.name + " vs " + to_string(f));
    r.rel_residual = std::abs(res.value - 1.0);
    r.passed = res.converged && r.rel_residual <= tol;
    if (!res.converged) r.notes += "; quadrature did not converge";
    out.push_back(r);
  }
  return out;
}

// Closed-form moment targets whose weights are Meijer-G functions: compares
// the target against the family's own ρ(n) in log space.
inline std::optional<std::vector<VerifyReport>> verify_moment_targets(const FamilySpec& f, std::size_t n_max,
                                                                      double tol = 1e-11) {
  if (!f.is_dual()) return std::nullopt;
  const FamilySpec& in = f.inner();
  std::function<double(std::size_t)> target;
  std::string what;
  if (in.is<family::HydrogenLike>()) {
    target = [](std::size_t n) {
      const double nd = static_cast<double>(n);
      return std::numbers::ln2 + std::lgamma(nd + 1.0) + std::lgamma(nd + 2.0) - std::log(nd + 2.0);
    };
    what = "2 n!(n+1)!/(n+2)";
  } else if (auto* m = in.get_if<family::Morse>()) {
    const double M = m->M;
    target = [M](std::size_t n) {
      const double nd = static_cast<double>(n);
      return nd * std::log(M + 2.0) + std::lgamma(nd + 1.0) + std::lgamma(M - nd + 1.0) - std::lgamma(M + 1.0);
    };
    what = "(M+2)^n n!(M-n)!/M!";
  } else {
    return std::nullopt;
  }
  std::vector<VerifyReport> out;
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  for (std::size_t n = 0; n <= top; ++n) {
    const double lt = target(n), lw = log_weight(f, n);
    auto r = make_report("moment n=" + std::to_string(n), std::exp(lt), std::exp(lw), tol, true,
                         "closed-form target " + what);
    r.rel_residual = std::abs(std::expm1(lw - lt));
    r.passed = r.rel_residual <= tol;
    out.push_back(r);
  }
  return out;
}

// Weight function known for a family's resolution of identity, if any. The
// infinite well and Pöschl-Teller weights belong to the dual states, so both
// the family and its dual map onto the dual moment problem.
inline std::optional<std::pair<WeightFunction, FamilySpec>> known_weight(const FamilySpec& f) {
  const FamilySpec& base = f.is_dual() ? f.inner() : f;
  if (base.is<family::Canonical>()) return std::make_pair(WeightFunction{weights::CanonicalWeight{}}, base);
  if (base.is<family::InfiniteWell>()) return std::make_pair(WeightFunction{weights::IWWeight{}}, dual_family(base));
  if (auto* pt = base.get_if<family::PoschlTeller>())
    return std::make_pair(WeightFunction{weights::PTWeight{pt->nu}}, dual_family(base));
  return std::nullopt;
}

namespace detail {

inline TruncationPolicy policy_with_min(std::size_t N) {
  TruncationPolicy p;
  p.min_n = N;
  p.max_n = std::max<std::size_t>(512, N);
  return p;
}

inline std::size_t clamp_to_family(const FamilySpec& f, std::size_t N) {
  if (auto d = dimension(f)) return std::min(N, *d - 1);
  return N;
}

}  // namespace detail

// ‖a v − (z+λ) v‖ on rows 0..N-1 for v = e^{λa†}|z⟩.
inline VerifyReport verify_photon_added(cplx z, double lambda, std::size_t N, double tol = 1e-9) {
  const Eigen::VectorXcd v = photon_added_state(z, lambda, N);
  const Eigen::VectorXcd r = (ladder_matrices(N).a.entries * v - (z + lambda) * v).head(static_cast<Eigen::Index>(N));
  return make_report("photon_added", 0.0, r.norm(), tol, false,
                     "lambda=" + format_number(lambda) + " N=" + std::to_string(N));
}

// ⟨e^{-μa}z|e^{μa}z⟩ = e^{2iμ Im z}, which is 1 on the real axis.
inline VerifyReport verify_binomial_pairing(cplx z, double mu, std::size_t N, double tol = 1e-10) {
  const cplx got = binomial_state(z, -mu, N).dot(binomial_state(z, mu, N));
  return make_report("binomial_pairing", std::polar(1.0, 2.0 * mu * z.imag()), got, tol, false,
                     "mu=" + format_number(mu) + " N=" + std::to_string(N));
}

// ‖A s - z s‖ over rows 0..N-1, where A acts without truncation loss.
inline VerifyReport verify_eigenstate(const FamilySpec& f, cplx z, std::optional<double> alpha, std::size_t N,
                                      double tol = 1e-8) {
  N = detail::clamp_to_family(f, N);
  const FockExpansion s = build_state(f, z, alpha, detail::policy_with_min(N));
  const OperatorPair A = deformed_ladder(f, N, alpha);
  const Eigen::VectorXcd v = padded(s.coefficients, N + 1);
  const Eigen::VectorXcd r = (A.op.entries * v - z * v).head(static_cast<Eigen::Index>(N));
  const double res = r.norm();
  auto rep = make_report("eigenstate", 0.0, res, tol, false,
                         to_string(f) + " z=" + format_number(z.real()) + "," + format_number(z.imag()) +
                             (alpha ? " alpha=" + format_number(*alpha) : "") + " N=" + std::to_string(N));
  return rep;
}

// |⟨z|D(z)|0⟩|² with D(z)|0⟩ normalized first; D is not unitary once f != 1.
inline VerifyReport verify_displacement(const FamilySpec& f, cplx z, std::size_t N, double tol = 1e-6) {
  N = detail::clamp_to_family(f, N);
  const TruncatedOperator D = displacement(f, z, N, DisplacementKind::D);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N + 1));
  vac[0] = 1.0;
  const Eigen::VectorXcd out = D.apply(vac);
  const FockExpansion s = build_state(f, z);
  const double fid = std::norm(padded(s.coefficients, N + 1).dot(out)) / out.squaredNorm();
  return make_report("displacement", 1.0, fid, tol, false, to_string(f) + " N=" + std::to_string(N));
}

// ⟨A†A⟩ on the GK state |J, 0⟩ against ωJ (ω = 1).
inline VerifyReport verify_action_identity(const FamilySpec& f, double J, double tol = 1e-8) {
  const std::string name = "action_identity";
  if (dimension(f)) {
    const Spectrum sp = spectrum_table(f, *dimension(f) - 1);
    return skipped_report(name, "finite dimension " + std::to_string(*dimension(f)) + ", spectrum monotone only up to n=" +
                                    std::to_string(sp.monotone_up_to));
  }
  TruncationPolicy policy;
  policy.tolerance = 1e-17;
  policy.max_n = 4096;
  const FockExpansion s = gk_state(f, GKLabel{J, 0.0, 0.0, 1.0}, policy);
  const Spectrum sp = spectrum_table(f, s.truncation_N);
  if (sp.monotone_up_to < s.truncation_N)
    return skipped_report(name, "spectrum not increasing beyond n=" + std::to_string(sp.monotone_up_to));
  double h = 0.0;
  for (std::size_t n = 1; n < s.size(); ++n) h += std::norm(s.coefficients[static_cast<Eigen::Index>(n)]) * sp.values[n];
  return make_report(name, J, h, tol, false, to_string(f) + " J=" + format_number(J) + " N=" + std::to_string(s.truncation_N));
}

// Distance between Ŝ(t)|z,α⟩ and |z,α+t⟩.
inline VerifyReport verify_temporal_stability(const FamilySpec& f, cplx z, double alpha, double t, double tol = 1e-12) {
  const FockExpansion s = build_state(f, z, alpha);
  const std::size_t N = s.truncation_N;
  const TruncatedOperator S = diagonal_transform(f, std::max<std::size_t>(N, 1), TransformKind::S, t);
  const Eigen::VectorXcd evolved = S.apply(s.coefficients);
  const FockExpansion target = build_state(f, z, alpha + t);
  const double dist = (evolved - padded(target.coefficients, S.dim())).norm();
  return make_report("temporal_stability", 0.0, dist, tol, false,
                     to_string(f) + " alpha=" + format_number(alpha) + " t=" + format_number(t));
}

namespace detail {

// Largest elementwise error of got vs want on indices 0..interior, each scaled
// by the magnitude of the products that formed it (at least 1).
struct Elementwise {
  double abs = 0.0;
  double rel = 0.0;
  std::size_t worst_row = 0;
};

inline Elementwise compare(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want, const Eigen::MatrixXd& scale,
                           std::size_t interior) {
  Elementwise e;
  for (std::size_t i = 0; i <= interior; ++i)
    for (std::size_t j = 0; j <= interior; ++j) {
      const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
      const double d = std::abs(got(I, J) - want(I, J));
      const double r = d / std::max(1.0, scale(I, J));
      e.abs = std::max(e.abs, d);
      if (r > e.rel) {
        e.rel = r;
        e.worst_row = i;
      }
    }
  return e;
}

inline Eigen::MatrixXd product_scale(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  const Eigen::MatrixXd ax = x.cwiseAbs(), ay = y.cwiseAbs();
  return ax * ay + ay * ax;
}

inline VerifyReport elementwise_report(const std::string& name, const Elementwise& e, double tol,
                                       const std::string& notes) {
  VerifyReport r;
  r.check_name = name;
  r.target = 0.0;
  r.computed = e.abs;
  r.abs_residual = e.abs;
  r.rel_residual = e.rel;
  r.tolerance = tol;
  r.relative = true;
  r.passed = e.rel <= tol;
  r.notes = notes + (e.rel > 0.0 ? "; worst row " + std::to_string(e.worst_row) : "");
  return r;
}

inline Eigen::MatrixXcd diag_of(const std::function<double(std::size_t)>& v, std::size_t N) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(N + 1));
  for (std::size_t n = 0; n <= N; ++n) m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = v(n);
  return m;
}

}  // namespace detail

// Commutator identities on the truncation interior.
inline std::vector<VerifyReport> verify_algebra(const FamilySpec& f, std::size_t N, double tol = 1e-11,
                                                std::optional<double> alpha = std::nullopt) {
  if (N < 4) throw DomainError("verify_algebra: needs N >= 4");
  N = detail::clamp_to_family(f, N);
  if (N < 4) throw DomainError("verify_algebra: family dimension below 5");
  const std::string tag = to_string(f) + " N=" + std::to_string(N);
  const OperatorPair A = deformed_ladder(f, N, alpha);
  const OperatorPair B = conjugate_ladder(f, N, alpha);
  const LadderSet L = ladder_matrices(N);
  const Spectrum sp = spectrum_table(f, N);
  const std::size_t interior = N - 2;
  // a finite family ends at its last level: A†|top⟩ = 0, so e beyond it is 0
  const auto fam_dim = dimension(f);
  const auto e = [&](std::size_t n) {
    if (fam_dim && n >= *fam_dim) return 0.0;
    return n <= N ? sp.values[n] : spectrum(f, n);
  };
  std::vector<VerifyReport> out;

  {
    const auto c = commutator(A.op, A.dagger);
    const auto want = detail::diag_of([&](std::size_t n) { return e(n + 1) - e(n); }, N);
    out.push_back(detail::elementwise_report(
        "[A,A+] = e_{n+1}-e_n", detail::compare(c.entries, want, detail::product_scale(A.op.entries, A.dagger.entries), interior),
        tol, tag));
  }
  {
    const auto c = commutator(A.op, L.number);
    out.push_back(detail::elementwise_report(
        "[A,n] = A", detail::compare(c.entries, A.op.entries, detail::product_scale(A.op.entries, L.number.entries), interior),
        tol, tag));
  }
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(N + 1));
  {
    const auto c = commutator(A.op, B.dagger);
    out.push_back(detail::elementwise_report(
        "[A,B+] = I", detail::compare(c.entries, I, detail::product_scale(A.op.entries, B.dagger.entries), interior), tol, tag));
  }
  {
    const auto c = commutator(B.op, A.dagger);
    out.push_back(detail::elementwise_report(
        "[B,A+] = I", detail::compare(c.entries, I, detail::product_scale(B.op.entries, A.dagger.entries), interior), tol, tag));
  }
  {
    const Eigen::MatrixXcd h = A.dagger.entries * A.op.entries;
    const auto want = detail::diag_of(e, N);
    out.push_back(detail::elementwise_report(
        "A+A = e_n", detail::compare(h, want, detail::product_scale(A.dagger.entries, A.op.entries) / 2.0, N - 1), tol, tag));
  }
  {
    const auto c = commutator(B.op, B.dagger);
    const auto eps = [&](std::size_t n) { return n == 0 || e(n) == 0.0 ? 0.0 : static_cast<double>(n * n) / e(n); };
    const auto want = detail::diag_of([&](std::size_t n) { return eps(n + 1) - eps(n); }, N);
    out.push_back(detail::elementwise_report(
        "[B,B+] = eps_{n+1}-eps_n", detail::compare(c.entries, want, detail::product_scale(B.op.entries, B.dagger.entries), interior),
        tol, tag));
  }
  if (!dimension(f) || N + 1 < *dimension(f)) {
    const auto hm = hamiltonian(f, N, HamiltonianVariant::manko);
    const auto hn = hamiltonian(f, N, HamiltonianVariant::normal_ordered);
    const auto want = detail::diag_of(
        [&](std::size_t n) {
          const double fn1 = nonlinearity(f, n + 1);
          const double fn = n == 0 ? 0.0 : nonlinearity(f, n);
          return 0.5 * ((n + 1.0) * fn1 * fn1 - static_cast<double>(n) * fn * fn);
        },
        N);
    Eigen::MatrixXd scale = (hm.entries.cwiseAbs() + hn.entries.cwiseAbs());
    out.push_back(detail::elementwise_report("H_manko - H = ((n+1)f(n+1)^2 - n f(n)^2)/2",
                                             detail::compare(hm.entries - hn.entries, want, scale, hm.valid_interior), tol,
                                             tag));
  }
  // closed form for the su(1,1) pair: e^{GP}_{n+1} - e^{GP}_n = (2κ-1)/((n+2κ)(n+2κ-1))
  const family::BarutGirardello* bg = f.get_if<family::BarutGirardello>();
  const family::GilmorePerelomov* gp = f.get_if<family::GilmorePerelomov>();
  if (bg || gp) {
    const double k2 = 2.0 * (bg ? bg->kappa : gp->kappa);
    const auto want = detail::diag_of(
        [&](std::size_t n) { return (k2 - 1.0) / ((n + k2) * (n + k2 - 1.0)); }, N);
    const OperatorPair& gp_ladder = bg ? B : A;
    const auto c = commutator(gp_ladder.op, gp_ladder.dagger);
    out.push_back(detail::elementwise_report(
        "GP ladder commutator (2k-1)/((n+2k)(n+2k-1))",
        detail::compare(c.entries, want, detail::product_scale(gp_ladder.op.entries, gp_ladder.dagger.entries), interior), tol,
        tag));
  }
  return out;
}

// μ(n)ρ(n) = (n!)², dual of dual, ε_n e_n = n², and the BG/GP and canonical
// identifications. One report per identity, worst n in the notes.
inline std::vector<VerifyReport> verify_duality(const FamilySpec& f, std::size_t n_max, double tol = 1e-11) {
  const FamilySpec dual = dual_family(f);
  const FamilySpec back = dual_family(dual);
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  std::vector<VerifyReport> out;
  auto run = [&](const std::string& name, const std::function<double(std::size_t)>& log_ratio, std::size_t from) {
    double worst = 0.0;
    std::size_t at = from;
    for (std::size_t n = from; n <= top; ++n) {
      const double r = std::abs(std::expm1(log_ratio(n)));
      if (r > worst) {
        worst = r;
        at = n;
      }
    }
    auto rep = make_report(name, 1.0, 1.0 + worst, tol, true,
                           to_string(f) + " n<=" + std::to_string(top) + (worst > 0 ? "; worst n=" + std::to_string(at) : ""));
    out.push_back(rep);
  };
  // μ from [ε_n]! (closed-form spectra) against ρ from the weight formula
  run("mu(n) rho(n) = (n!)^2",
      [&](std::size_t n) { return log_spectrum_factorial(dual, n) + log_weight(f, n) - 2.0 * specfun::log_factorial(n); }, 0);
  run("dual(dual(F)) = F", [&](std::size_t n) { return log_weight(back, n) - log_weight(f, n); }, 0);
  run("eps_n e_n = n^2",
      [&](std::size_t n) { return std::log(spectrum(dual, n)) + std::log(spectrum(f, n)) - 2.0 * std::log(double(n)); }, 1);
  if (f.is<family::Canonical>())
    run("canonical self-duality", [&](std::size_t n) { return log_weight(dual, n) - specfun::log_factorial(n); }, 0);
  if (auto* bg = f.get_if<family::BarutGirardello>()) {
    const FamilySpec gp = family::GilmorePerelomov{bg->kappa};
    run("dual(BG) = GP", [&](std::size_t n) { return log_weight(dual, n) - log_weight(gp, n); }, 0);
  }
  if (auto* gp = f.get_if<family::GilmorePerelomov>()) {
    const FamilySpec bg = family::BarutGirardello{gp->kappa};
    run("dual(GP) = BG", [&](std::size_t n) { return log_weight(dual, n) - log_weight(bg, n); }, 0);
  }
  return out;
}

struct SpectrumDiagnostics {
  std::size_t checked_up_to = 0;
  std::size_t monotone_up_to = 0;
  std::optional<std::size_t> dimension;
  double radius = 0.0;
  bool radius_estimated = false;
  VerifyReport rho0;

  // ρ(0) = 1 as a real check, the rest informational.
  std::vector<VerifyReport> reports() const {
    std::vector<VerifyReport> out{rho0};
    auto info = [](std::string name, double v, std::string notes) {
      VerifyReport r = skipped_report(std::move(name), std::move(notes));
      r.computed = v;
      return r;
    };
    out.push_back(info("monotone_up_to", static_cast<double>(monotone_up_to),
                       "strictly increasing e_n up to n=" + std::to_string(monotone_up_to) + " of " +
                           std::to_string(checked_up_to)));
    out.push_back(info("dimension", dimension ? static_cast<double>(*dimension) : kInfinity,
                       dimension ? std::to_string(*dimension) : "infinite"));
    out.push_back(info("convergence_radius", radius, radius_estimated ? "estimated from tail probe" : "closed form"));
    return out;
  }
};

inline SpectrumDiagnostics spectrum_diagnostics(const FamilySpec& f, std::size_t n_max) {
  SpectrumDiagnostics d;
  const Spectrum sp = spectrum_table(f, n_max);
  d.checked_up_to = sp.values.size() - 1;
  d.monotone_up_to = sp.monotone_up_to;
  d.dimension = dimension(f);
  const Asymptotics a = asymptotics(f);
  d.radius = std::sqrt(a.limit);
  d.radius_estimated = a.estimated;
  d.rho0 = make_report("rho(0) = 1", 1.0, weight(f, 0), 0.0, false, to_string(f));
  return d;
}

// Derived f(n) against the per-family published expression. Families whose
// published form is known to disagree get a skipped report carrying the size
// of the discrepancy.
inline std::optional<VerifyReport> published_f_crosscheck(const FamilySpec& f, std::size_t n_max, double tol = 1e-10) {
  if (!published_nonlinearity(f, 1) && !published_nonlinearity(f, 2)) return std::nullopt;
  std::size_t top = n_max;
  if (auto d = dimension(f)) top = std::min(top, *d - 1);
  double worst = 0.0;
  std::size_t at = 1;
  for (std::size_t n = 1; n <= top; ++n) {
    const auto p = published_nonlinearity(f, n);
    if (!p) continue;
    const double derived = nonlinearity(f, n);
    const double r = std::abs(*p - derived) / derived;
    if (r > worst) {
      worst = r;
      at = n;
    }
  }
  const bool known_discrepant = f.is<family::Hypergeometric>() || f.is<family::TricomiFirst>() || f.is<family::LandauLevel>();
  auto r = make_report("published f", 1.0, 1.0 + worst, tol, true,
                       to_string(f) + " n<=" + std::to_string(top) + "; worst n=" + std::to_string(at));
  if (known_discrepant) {
    r.skipped = true;
    r.notes += r.passed ? "; published form agrees here" : "; discrepancy flagged, derived f is authoritative";
  }
  return r;
}

}  // namespace gcs
