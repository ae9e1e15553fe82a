#pragma once

// Operators on the truncated Fock space span{|0⟩..|N⟩} as dense matrices.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "gcs/error.hpp"
#include "gcs/families.hpp"
#include "gcs/fock.hpp"

namespace gcs {

struct TruncatedOperator {
  Eigen::MatrixXcd entries;
  std::string label;
  std::size_t valid_interior = 0;  // identities hold for indices <= valid_interior

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  cplx operator()(std::size_t i, std::size_t j) const {
    return entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return entries * padded(v, dim()); }
};

struct LadderSet {
  TruncatedOperator a, a_dagger, number;
};

struct OperatorPair {
  TruncatedOperator op, dagger;
};

namespace detail {

inline Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

inline void require_dim(std::size_t N) {
  if (N < 1) throw DomainError("truncation N must be at least 1");
}

inline void require_family_dim(const FamilySpec& f, std::size_t N) {
  if (auto d = dimension(f); d && N + 1 > *d)
    throw DomainError("N + 1 = " + std::to_string(N + 1) + " exceeds family dimension " + std::to_string(*d));
}

inline TruncatedOperator adjoint(const TruncatedOperator& x, const std::string& label) {
  return {x.entries.adjoint(), label, x.valid_interior};
}

inline TruncatedOperator subdiagonal(std::size_t N, const std::string& label,
                                     const std::function<cplx(std::size_t)>& entry) {
  TruncatedOperator op{Eigen::MatrixXcd::Zero(idx(N + 1), idx(N + 1)), label, N - 1};
  for (std::size_t n = 1; n <= N; ++n) op.entries(idx(n - 1), idx(n)) = entry(n);
  return op;
}

inline std::size_t sub_floor(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

}  // namespace detail

inline LadderSet ladder_matrices(std::size_t N) {
  detail::require_dim(N);
  LadderSet out;
  out.a = detail::subdiagonal(N, "a", [](std::size_t n) { return cplx(std::sqrt(static_cast<double>(n)), 0.0); });
  out.a_dagger = detail::adjoint(out.a, "a_dagger");
  out.number = {Eigen::MatrixXcd::Zero(detail::idx(N + 1), detail::idx(N + 1)), "n", N};
  for (std::size_t n = 0; n <= N; ++n) out.number.entries(detail::idx(n), detail::idx(n)) = static_cast<double>(n);
  return out;
}

// A = a f(n̂) with the stabilization phase e^{iα(e_n - e_{n-1})} on each entry.
inline OperatorPair deformed_ladder(const FamilySpec& f, std::size_t N, std::optional<double> alpha = std::nullopt) {
  detail::require_dim(N);
  detail::require_family_dim(f, N);
  const double a = alpha.value_or(0.0);
  OperatorPair out;
  out.op = detail::subdiagonal(N, "A", [&](std::size_t n) {
    const double en = spectrum(f, n);
    return std::polar(std::sqrt(en), a * (en - spectrum(f, n - 1)));
  });
  out.dagger = detail::adjoint(out.op, "A_dagger");
  return out;
}

// B = a / f(n̂) with the same phases as A, so that [A, B†] = [B, A†] = 1.
inline OperatorPair conjugate_ladder(const FamilySpec& f, std::size_t N, std::optional<double> alpha = std::nullopt) {
  detail::require_dim(N);
  detail::require_family_dim(f, N);
  const double a = alpha.value_or(0.0);
  OperatorPair out;
  out.op = detail::subdiagonal(N, "B", [&](std::size_t n) {
    const double en = spectrum(f, n);
    if (!(en > 0.0)) throw SingularityError("f(" + std::to_string(n) + ") vanishes", n);
    return std::polar(static_cast<double>(n) / std::sqrt(en), a * (en - spectrum(f, n - 1)));
  });
  out.dagger = detail::adjoint(out.op, "B_dagger");
  return out;
}

enum class HamiltonianVariant { normal_ordered, manko };

// normal_ordered: A†A = diag(e_n). manko: (AA† + A†A)/2 = diag((e_{n+1} + e_n)/2).
// The top Man'ko entry needs e_{N+1}; past the family dimension it is left at
// e_N/2 and excluded from the valid interior.
inline TruncatedOperator hamiltonian(const FamilySpec& f, std::size_t N, HamiltonianVariant variant) {
  detail::require_dim(N);
  detail::require_family_dim(f, N);
  TruncatedOperator h{Eigen::MatrixXcd::Zero(detail::idx(N + 1), detail::idx(N + 1)),
                      variant == HamiltonianVariant::manko ? "H_manko" : "H", N};
  for (std::size_t n = 0; n <= N; ++n) {
    double v = spectrum(f, n);
    if (variant == HamiltonianVariant::manko) {
      const auto d = dimension(f);
      if (!d || n + 1 < *d) {
        v = 0.5 * (v + spectrum(f, n + 1));
      } else {
        v *= 0.5;
        h.valid_interior = N - 1;
        h.label = "H_manko (top entry invalid)";
      }
    }
    h.entries(detail::idx(n), detail::idx(n)) = v;
  }
  return h;
}

enum class TransformKind { T, T_inverse, S };

// T = diag sqrt(n!/ρ(n)) maps canonical states onto the family; S(α) = e^{-iα Ĥ}.
inline TruncatedOperator diagonal_transform(const FamilySpec& f, std::size_t N, TransformKind kind,
                                            double alpha = 0.0) {
  detail::require_dim(N);
  detail::require_family_dim(f, N);
  static const char* names[] = {"T", "T_inverse", "S"};
  TruncatedOperator op{Eigen::MatrixXcd::Zero(detail::idx(N + 1), detail::idx(N + 1)),
                       names[static_cast<int>(kind)], N};
  for (std::size_t n = 0; n <= N; ++n) {
    cplx v;
    switch (kind) {
      case TransformKind::T: v = std::exp(0.5 * (specfun::log_factorial(n) - log_weight(f, n))); break;
      case TransformKind::T_inverse: v = std::exp(0.5 * (log_weight(f, n) - specfun::log_factorial(n))); break;
      case TransformKind::S: v = std::polar(1.0, -alpha * spectrum(f, n)); break;
    }
    op.entries(detail::idx(n), detail::idx(n)) = v;
  }
  return op;
}

namespace detail {

// Parlett-Reinsch balancing with powers of two: returns d such that
// diag(d)^{-1} M diag(d) has comparable row and column norms.
inline Eigen::VectorXd balance(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool done = false;
  for (int sweep = 0; sweep < 200 && !done; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c >= g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        m.col(i) *= f;
        m.row(i) /= f;
      }
    }
  }
  return d;
}

}  // namespace detail

// exp(M) by balancing, scaling and squaring, and a Taylor series capped at
// max_terms; throws TruncationError when the series has not settled.
inline Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m, int max_terms = 300) {
  Eigen::MatrixXcd b = m;
  const Eigen::VectorXd d = detail::balance(b);
  const double norm1 = b.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  b /= std::ldexp(1.0, squarings);

  const Eigen::Index n = m.rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = sum;
  bool converged = false;
  for (int k = 1; k <= max_terms; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-17 * sum.cwiseAbs().maxCoeff()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw TruncationError("matrix exponential series did not settle", term.cwiseAbs().maxCoeff());
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  // undo the similarity: exp(M) = D exp(D^{-1} M D) D^{-1}
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sum(i, j) *= d(i) / d(j);
  return sum;
}

enum class DisplacementKind { D, D_tilde };

// D(z) = exp(zB† - z̄A) and D̃(z) = exp(zA† - z̄B).
inline TruncatedOperator displacement(const FamilySpec& f, cplx z, std::size_t N, DisplacementKind kind,
                                      std::optional<double> alpha = std::nullopt) {
  const OperatorPair A = deformed_ladder(f, N, alpha);
  const OperatorPair B = conjugate_ladder(f, N, alpha);
  Eigen::MatrixXcd gen = kind == DisplacementKind::D ? Eigen::MatrixXcd(z * B.dagger.entries - std::conj(z) * A.op.entries)
                                                     : Eigen::MatrixXcd(z * A.dagger.entries - std::conj(z) * B.op.entries);
  TruncatedOperator out;
  out.entries = matrix_exp(gen);
  out.label = kind == DisplacementKind::D ? "D" : "D_tilde";
  const auto shrink = static_cast<std::size_t>(std::ceil(8.0 * std::abs(z) * std::sqrt(static_cast<double>(N))));
  out.valid_interior = detail::sub_floor(N, shrink);
  return out;
}

enum class ShiftKind { raise, lower };

// e^{λa†} (raise) or e^{μa} (lower) on the truncated space; the finite
// triangular series is exact.
inline TruncatedOperator exp_shift(std::size_t N, ShiftKind kind, double param) {
  detail::require_dim(N);
  TruncatedOperator op{Eigen::MatrixXcd::Zero(detail::idx(N + 1), detail::idx(N + 1)),
                       kind == ShiftKind::raise ? "exp_raise" : "exp_lower", N - 1};
  for (std::size_t lo = 0; lo <= N; ++lo) {
    for (std::size_t hi = lo; hi <= N; ++hi) {
      const std::size_t k = hi - lo;
      // param^k / k! * sqrt(hi!/lo!)
      double v;
      if (k == 0) {
        v = 1.0;
      } else if (param == 0.0) {
        v = 0.0;
      } else {
        const double lmag = static_cast<double>(k) * std::log(std::abs(param)) - specfun::log_factorial(k) +
                            0.5 * (specfun::log_factorial(hi) - specfun::log_factorial(lo));
        v = std::exp(lmag) * ((param < 0.0 && k % 2 == 1) ? -1.0 : 1.0);
      }
      if (kind == ShiftKind::raise) op.entries(detail::idx(hi), detail::idx(lo)) = v;
      else op.entries(detail::idx(lo), detail::idx(hi)) = v;
    }
  }
  return op;
}

inline TruncatedOperator commutator(const TruncatedOperator& x, const TruncatedOperator& y) {
  if (x.dim() != y.dim())
    throw DomainError("commutator: dimension mismatch " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  return {x.entries * y.entries - y.entries * x.entries, "[" + x.label + "," + y.label + "]",
          detail::sub_floor(std::min(x.valid_interior, y.valid_interior), 1)};
}

// g(A ⊗ |a⟩⟨b| + A† ⊗ |b⟩⟨a|) on 2(N+1) states ordered |a,0..N⟩, |b,0..N⟩.
inline TruncatedOperator jaynes_cummings_h(const FamilySpec& f, double g, std::size_t N) {
  const OperatorPair A = deformed_ladder(f, N);
  const Eigen::Index d = detail::idx(N + 1);
  TruncatedOperator h{Eigen::MatrixXcd::Zero(2 * d, 2 * d), "H_JC", N - 1};
  h.entries.block(0, d, d, d) = g * A.op.entries;
  h.entries.block(d, 0, d, d) = g * A.dagger.entries;
  return h;
}

namespace detail {
inline Eigen::VectorXcd canonical_truncated(cplx z, std::size_t N) {
  TruncationPolicy p;
  p.min_n = N;
  p.max_n = std::max<std::size_t>(512, N);
  return padded(build_state(family::Canonical{}, z, std::nullopt, p).coefficients, N + 1);
}
}  // namespace detail

// e^{λa†}|z⟩: photon-added basis applied to the canonical state.
inline Eigen::VectorXcd photon_added_state(cplx z, double lambda, std::size_t N) {
  return exp_shift(N, ShiftKind::raise, lambda).entries * detail::canonical_truncated(z, N);
}

// e^{μa}|z⟩: binomial basis applied to the canonical state. The dual family is μ → -μ.
inline Eigen::VectorXcd binomial_state(cplx z, double mu, std::size_t N) {
  return exp_shift(N, ShiftKind::lower, mu).entries * detail::canonical_truncated(z, N);
}

}  // namespace gcs
