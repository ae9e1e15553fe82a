#pragma once

// Command-line front end. run() takes the argument list without the program
// name and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a verify check failed, 2 usage error, 3 numeric
// error (a JSON error record goes to the error stream).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcs/gcs.hpp"

namespace gcs::cli {

using io::json;

struct Options {
  std::string family = "canonical";
  std::string z = "0";
  std::optional<double> J, theta, t, alpha;
  double omega = 1.0;
  std::optional<std::size_t> n_max;
  double trunc_tol = 1e-12;
  std::optional<std::size_t> dim;
  std::string format = "json";
  std::string out;
  // subcommand specific
  std::string suite = "all";
  std::optional<double> tol;
  std::string kind = "ladder";
  std::string variant;
  double g = 1.0;
  double param = 0.0;
  std::string family2;
  std::optional<std::string> z2;
  std::optional<double> alpha2;
  std::string parity;
  std::optional<std::string> scan;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline cplx parse_z(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re = text.substr(0, comma);
    const double r = std::stod(re, &used);
    if (used != re.size()) throw UsageError("bad --z value '" + text + "'");
    double i = 0.0;
    if (comma != std::string::npos) {
      const std::string im = text.substr(comma + 1);
      i = std::stod(im, &used);
      if (used != im.size()) throw UsageError("bad --z value '" + text + "'");
    }
    return {r, i};
  } catch (const std::logic_error&) {
    throw UsageError("bad --z value '" + text + "'");
  }
}

inline FamilySpec family_arg(const std::string& text) {
  try {
    return parse_family(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--family: ") + e.what());
  }
}

inline TruncationPolicy policy_of(const Options& o) {
  TruncationPolicy p;
  p.tolerance = o.trunc_tol;
  if (o.n_max) p.max_n = *o.n_max;
  return p;
}

inline std::string num(double v) { return io::fmt17(v); }

// State from either a GK label (--J given) or --z and --alpha.
inline FockExpansion state_from(const Options& o, const FamilySpec& f) {
  if (o.J) {
    GKLabel label{*o.J, o.theta.value_or(0.0), o.t.value_or(0.0), o.omega};
    return generalized_gk_state(f, label, policy_of(o));
  }
  return build_state(f, parse_z(o.z), o.alpha, policy_of(o));
}

inline std::string state_text(const FockExpansion& s, const std::string& format) {
  if (format == "json") return io::state_to_json(s).dump(2) + "\n";
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index n = 0; n < s.coefficients.size(); ++n) {
    const cplx c = s.coefficients[n];
    rows.push_back({std::to_string(n), num(c.real()), num(c.imag()), num(std::norm(c))});
  }
  if (format == "csv") {
    std::string out = "n,re,im,probability\n";
    for (const auto& r : rows) out += r[0] + "," + r[1] + "," + r[2] + "," + r[3] + "\n";
    return out;
  }
  return "family " + to_string(s.family) + "  tail_mass " + io::fmt_short(s.tail_mass) + "\n" +
         io::table({"n", "re", "im", "probability"}, rows);
}

inline int cmd_state(const Options& o, std::ostream& out) {
  const FamilySpec f = family_arg(o.family);
  if (!o.parity.empty()) {
    if (o.J) throw UsageError("--parity takes --z, not --J");
    const Parity p = o.parity == "even" ? Parity::even : Parity::odd;
    out << state_text(cat_superposition(f, parse_z(o.z), o.alpha, p, policy_of(o)), o.format);
    return 0;
  }
  out << state_text(state_from(o, f), o.format);
  return 0;
}

inline int cmd_stats(const Options& o, std::ostream& out) {
  const FamilySpec f = family_arg(o.family);
  if (o.scan) {
    // |z| against Mandel Q for |z| = r_max·k/steps, k = 0..steps
    const auto comma = o.scan->find(',');
    double r_max = 0.0;
    int steps = 0;
    try {
      r_max = std::stod(o.scan->substr(0, comma));
      steps = comma == std::string::npos ? 10 : std::stoi(o.scan->substr(comma + 1));
    } catch (const std::logic_error&) {
      throw UsageError("bad --scan value, expected r_max[,steps]");
    }
    if (steps < 1) throw UsageError("--scan needs steps >= 1");
    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k <= steps; ++k) {
      const double r = r_max * k / steps;
      const auto ps = photon_statistics(build_state(f, r, o.alpha, policy_of(o)));
      rows.push_back({num(r), num(ps.mean_n), num(ps.mandel_q)});
    }
    if (o.format == "csv") {
      out << "abs_z,mean_n,mandel_q\n";
      for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << '\n';
    } else if (o.format == "table") {
      out << io::table({"abs_z", "mean_n", "mandel_q"}, rows);
    } else {
      json j = json::array();
      for (const auto& r : rows) j.push_back({{"abs_z", std::stod(r[0])}, {"mean_n", std::stod(r[1])}, {"mandel_q", std::stod(r[2])}});
      out << j.dump(2) << '\n';
    }
    return 0;
  }
  const FockExpansion s = state_from(o, f);
  const PhotonStatistics ps = photon_statistics(s);
  if (o.format == "csv") {
    out << "n,probability\n";
    for (std::size_t n = 0; n < ps.distribution.size(); ++n) out << n << ',' << num(ps.distribution[n]) << '\n';
  } else if (o.format == "table") {
    out << io::table({"quantity", "value"}, {{"family", to_string(f)},
                                             {"mean_n", num(ps.mean_n)},
                                             {"variance_n", num(ps.variance_n)},
                                             {"mandel_q", num(ps.mandel_q)},
                                             {"tail_mass", num(s.tail_mass)},
                                             {"truncation_N", std::to_string(s.truncation_N)}});
  } else {
    json j;
    j["family"] = to_string(f);
    j["z"] = io::complex_to_json(s.label_z);
    j["alpha"] = s.stabilization_alpha ? json(*s.stabilization_alpha) : json(nullptr);
    j["mean_n"] = ps.mean_n;
    j["variance_n"] = ps.variance_n;
    j["mandel_q"] = ps.mandel_q;
    j["vacuum"] = ps.vacuum;
    j["tail_mass"] = s.tail_mass;
    j["truncation_N"] = s.truncation_N;
    j["distribution"] = ps.distribution;
    out << j.dump(2) << '\n';
  }
  return 0;
}

inline int cmd_overlap(const Options& o, std::ostream& out) {
  const FamilySpec f1 = family_arg(o.family);
  const FamilySpec f2 = o.family2.empty() ? f1 : family_arg(o.family2);
  const FockExpansion s1 = build_state(f1, parse_z(o.z), o.alpha, policy_of(o));
  const FockExpansion s2 = build_state(f2, parse_z(o.z2.value_or(o.z)), o.alpha2 ? o.alpha2 : o.alpha, policy_of(o));
  const cplx v = overlap(s1, s2);
  if (o.format == "csv") {
    out << "re,im,abs\n" << num(v.real()) << ',' << num(v.imag()) << ',' << num(std::abs(v)) << '\n';
  } else if (o.format == "table") {
    out << io::table({"re", "im", "abs"}, {{num(v.real()), num(v.imag()), num(std::abs(v))}});
  } else {
    json j;
    j["family"] = to_string(f1);
    j["family2"] = to_string(f2);
    j["overlap"] = io::complex_to_json(v);
    j["abs"] = std::abs(v);
    out << j.dump(2) << '\n';
  }
  return 0;
}

inline TruncatedOperator build_operator(const Options& o) {
  const std::size_t dim = o.dim.value_or(8);
  if (dim < 2) throw UsageError("--dim must be at least 2");
  const std::size_t N = dim - 1;
  const std::string& k = o.kind;
  const std::string& v = o.variant;
  if (k == "ladder") {
    const LadderSet L = ladder_matrices(N);
    if (v.empty() || v == "a") return L.a;
    if (v == "a_dagger") return L.a_dagger;
    if (v == "n") return L.number;
    throw UsageError("--variant for ladder: a|a_dagger|n");
  }
  if (k == "shift") {
    if (v.empty() || v == "raise") return exp_shift(N, ShiftKind::raise, o.param);
    if (v == "lower") return exp_shift(N, ShiftKind::lower, o.param);
    throw UsageError("--variant for shift: raise|lower");
  }
  const FamilySpec f = family_arg(o.family);
  if (k == "deformed" || k == "b") {
    const OperatorPair p = k == "deformed" ? deformed_ladder(f, N, o.alpha) : conjugate_ladder(f, N, o.alpha);
    if (v.empty() || v == "op") return p.op;
    if (v == "dagger") return p.dagger;
    throw UsageError("--variant for deformed/b: op|dagger");
  }
  if (k == "hamiltonian") {
    if (v.empty() || v == "normal_ordered") return hamiltonian(f, N, HamiltonianVariant::normal_ordered);
    if (v == "manko") return hamiltonian(f, N, HamiltonianVariant::manko);
    throw UsageError("--variant for hamiltonian: normal_ordered|manko");
  }
  if (k == "t") {
    if (v.empty() || v == "T") return diagonal_transform(f, N, TransformKind::T);
    if (v == "T_inverse") return diagonal_transform(f, N, TransformKind::T_inverse);
    throw UsageError("--variant for t: T|T_inverse");
  }
  if (k == "s") return diagonal_transform(f, N, TransformKind::S, o.alpha.value_or(0.0));
  if (k == "displacement") {
    if (v.empty() || v == "D") return displacement(f, parse_z(o.z), N, DisplacementKind::D, o.alpha);
    if (v == "D_tilde") return displacement(f, parse_z(o.z), N, DisplacementKind::D_tilde, o.alpha);
    throw UsageError("--variant for displacement: D|D_tilde");
  }
  if (k == "jc") return jaynes_cummings_h(f, o.g, N);
  throw UsageError("--kind must be one of ladder|deformed|b|hamiltonian|displacement|t|s|jc|shift");
}

inline int cmd_op(const Options& o, std::ostream& out) {
  const TruncatedOperator op = build_operator(o);
  if (o.format == "json") {
    out << io::operator_to_json(op).dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "row,col,re,im\n";
    for (Eigen::Index c = 0; c < op.entries.cols(); ++c)
      for (Eigen::Index r = 0; r < op.entries.rows(); ++r)
        if (op.entries(r, c) != cplx(0.0, 0.0))
          out << r << ',' << c << ',' << num(op.entries(r, c).real()) << ',' << num(op.entries(r, c).imag()) << '\n';
  } else {
    out << io::operator_to_ccs(op);
  }
  return 0;
}

// Default label for the single-state checks: 0.3 inside the radius, never
// more than half of it.
inline cplx default_z(const Options& o, const FamilySpec& f) {
  if (o.z != "0") return parse_z(o.z);
  const double r = convergence_radius(f);
  return std::min(0.3, 0.5 * r);
}

inline std::vector<VerifyReport> run_suite(const Options& o, const FamilySpec& f, const std::string& suite) {
  std::vector<VerifyReport> out;
  auto add = [&](std::vector<VerifyReport> rs) { out.insert(out.end(), rs.begin(), rs.end()); };
  const bool all = suite == "all";
  const auto dim = dimension(f);
  if (all || suite == "spectrum") {
    add(spectrum_diagnostics(f, o.n_max.value_or(50)).reports());
    if (auto p = published_f_crosscheck(f, o.n_max.value_or(50))) out.push_back(*p);
  }
  if (all || suite == "duality") add(verify_duality(f, o.n_max.value_or(50)));
  if (all || suite == "moments") {
    const std::size_t n = o.n_max.value_or(10);
    if (auto w = known_weight(f)) add(verify_moments(w->first, w->second, n));
    else if (auto t = verify_moment_targets(f, n)) add(*t);
    else if (!all) out.push_back(skipped_report("moments", "no weight function registered for " + to_string(f)));
  }
  if (all || suite == "algebra") {
    const std::size_t N = o.dim ? *o.dim - 1 : 64;
    if (!dim || *dim >= 5) add(verify_algebra(f, N, 1e-11, o.alpha));
    else out.push_back(skipped_report("algebra", "family dimension below 5"));
  }
  const double radius = convergence_radius(f);
  if (all || suite == "eigenstate") {
    if (radius == 0.0) out.push_back(skipped_report("eigenstate", "zero convergence radius"));
    else out.push_back(verify_eigenstate(f, default_z(o, f), o.alpha, o.dim ? *o.dim - 1 : 256));
  }
  if (all || suite == "action") {
    double J = o.J.value_or(std::min(4.0, 0.25 * radius * radius));
    if (radius == 0.0) out.push_back(skipped_report("action_identity", "zero convergence radius"));
    else out.push_back(verify_action_identity(f, J));
  }
  if (all || suite == "temporal") {
    if (radius == 0.0) out.push_back(skipped_report("temporal_stability", "zero convergence radius"));
    else out.push_back(verify_temporal_stability(f, default_z(o, f), o.alpha.value_or(0.0), o.t.value_or(0.7)));
  }
  return out;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  static const std::vector<std::string> suites{"moments", "algebra", "eigenstate", "action", "temporal", "duality", "spectrum", "all"};
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end())
    throw UsageError("--suite must be one of moments|algebra|eigenstate|action|temporal|duality|spectrum|all");
  const FamilySpec f = family_arg(o.family);
  auto reports = run_suite(o, f, o.suite);
  if (o.tol) {
    if (!(*o.tol >= 0.0)) throw UsageError("--tol must be >= 0");
    for (auto& r : reports)
      if (!r.skipped) {
        r.tolerance = *o.tol;
        r.passed = r.applicable_residual() <= *o.tol;
      }
  }
  if (o.format == "table") out << io::reports_to_table(reports);
  else if (o.format == "csv") out << io::reports_to_csv(reports);
  else out << io::reports_to_jsonl(reports);
  return all_passed(reports) ? 0 : 1;
}

inline int cmd_dual(const Options& o, std::ostream& out) {
  const FamilySpec f = family_arg(o.family);
  const FamilySpec d = dual_family(f);
  std::size_t top = o.n_max.value_or(10);
  if (auto dm = dimension(f)) top = std::min(top, *dm - 1);
  std::vector<std::vector<std::string>> rows;
  json arr = json::array();
  for (std::size_t n = 0; n <= top; ++n) {
    const double rho = weight(f, n), mu = weight(d, n), e = spectrum(f, n), eps = spectrum(d, n);
    rows.push_back({std::to_string(n), num(rho), num(mu), num(e), num(eps)});
    arr.push_back({{"n", n}, {"rho", rho}, {"mu", mu}, {"e", e}, {"eps", eps}});
  }
  if (o.format == "table") {
    out << "family " << to_string(f) << "  dual " << to_string(d) << '\n';
    out << io::table({"n", "rho", "mu", "e_n", "eps_n"}, rows);
  } else if (o.format == "csv") {
    out << "n,rho,mu,e_n,eps_n\n";
    for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << '\n';
  } else {
    json j;
    j["family"] = to_string(f);
    j["dual"] = to_string(d);
    j["rows"] = std::move(arr);
    out << j.dump(2) << '\n';
  }
  return 0;
}

// |z, α⟩ evolved for time t at frequency ω.
inline int cmd_evolve(const Options& o, std::ostream& out) {
  const FamilySpec f = family_arg(o.family);
  Options base = o;
  base.t.reset();
  const FockExpansion s = evolve(state_from(base, f), o.t.value_or(0.0), o.omega);
  out << state_text(s, o.format);
  return 0;
}

inline int cmd_catalog(const Options& o, std::ostream& out) {
  const auto entries = catalog();
  if (o.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : entries) rows.push_back({e.name, e.parameters, e.example});
    out << io::table({"family", "parameters", "example"}, rows);
  } else if (o.format == "csv") {
    out << "family,parameters,example\n";
    for (const auto& e : entries) out << e.name << ",\"" << e.parameters << "\"," << e.example << '\n';
  } else {
    json j = json::array();
    for (const auto& e : entries) j.push_back({{"family", e.name}, {"parameters", e.parameters}, {"example", e.example}});
    out << j.dump(2) << '\n';
  }
  return 0;
}

inline json error_record(const std::exception& e) {
  json j;
  std::string type = "error";
  if (dynamic_cast<const DomainError*>(&e)) type = "domain_error";
  else if (dynamic_cast<const DivergenceError*>(&e)) type = "divergence_error";
  else if (dynamic_cast<const DegenerateStateError*>(&e)) type = "degenerate_state_error";
  j["error"] = type;
  j["message"] = e.what();
  if (auto* t = dynamic_cast<const TruncationError*>(&e)) {
    j["error"] = "truncation_error";
    j["achieved_tail"] = t->achieved_tail();
  }
  if (auto* s = dynamic_cast<const SingularityError*>(&e)) {
    j["error"] = "singularity_error";
    j["index"] = s->index();
  }
  return j;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized coherent states: construction, operators and verification", "gcs"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "family spec, e.g. poschl_teller(nu=3)");
    sub->add_option("--z", o.z, "label z as re[,im]");
    sub->add_option("--J", o.J, "action variable J >= 0");
    sub->add_option("--theta", o.theta, "angle theta");
    sub->add_option("--t", o.t, "time t");
    sub->add_option("--alpha", o.alpha, "stabilization parameter");
    sub->add_option("--omega", o.omega, "frequency (default 1)");
    sub->add_option("--n-max", o.n_max, "largest n (tables, checks) or truncation cap (states)");
    sub->add_option("--trunc-tol", o.trunc_tol, "tail tolerance for truncation");
    sub->add_option("--dim", o.dim, "truncated space dimension N+1");
    sub->add_option("--format", o.format, "json|csv|table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  auto* state = app.add_subcommand("state", "build a coherent state");
  auto* stats = app.add_subcommand("stats", "photon statistics");
  auto* ovl = app.add_subcommand("overlap", "overlap of two states");
  auto* op = app.add_subcommand("op", "emit an operator matrix");
  auto* verify = app.add_subcommand("verify", "run verification checks");
  auto* dual = app.add_subcommand("dual", "weights and spectrum of a family and its dual");
  auto* evolve_cmd = app.add_subcommand("evolve", "time-evolve a state");
  auto* cat = app.add_subcommand("catalog", "list families and parameter domains");
  for (auto* s : {state, stats, ovl, op, verify, dual, evolve_cmd, cat}) common(s);
  state->add_option("--parity", o.parity, "even|odd: cat superposition of |z> and |-z>")
      ->check(CLI::IsMember({"even", "odd"}));
  stats->add_option("--scan", o.scan, "r_max[,steps]: |z| against Mandel Q");
  ovl->add_option("--family2", o.family2, "second family (default: same)");
  ovl->add_option("--z2", o.z2, "second label");
  ovl->add_option("--alpha2", o.alpha2, "second stabilization parameter");
  op->add_option("--kind", o.kind, "ladder|deformed|b|hamiltonian|displacement|t|s|jc|shift");
  op->add_option("--variant", o.variant, "operator variant for the kind");
  op->add_option("--g", o.g, "Jaynes-Cummings coupling");
  op->add_option("--lambda,--mu", o.param, "shift parameter");
  verify->add_option("--tol", o.tol, "override every check's tolerance");
  verify->add_option("--suite", o.suite, "moments|algebra|eigenstate|action|temporal|duality|spectrum|all");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostringstream buffer;
  int code = 0;
  try {
    if (state->parsed()) code = cmd_state(o, buffer);
    else if (stats->parsed()) code = cmd_stats(o, buffer);
    else if (ovl->parsed()) code = cmd_overlap(o, buffer);
    else if (op->parsed()) code = cmd_op(o, buffer);
    else if (verify->parsed()) code = cmd_verify(o, buffer);
    else if (dual->parsed()) code = cmd_dual(o, buffer);
    else if (evolve_cmd->parsed()) code = cmd_evolve(o, buffer);
    else code = cmd_catalog(o, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const gcs::Error& e) {
    err << error_record(e).dump() << '\n';
    return 3;
  }
  if (o.out.empty()) {
    out << buffer.str();
  } else {
    file.open(o.out);
    if (!file) {
      err << "usage error: cannot open " << o.out << '\n';
      return 2;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace gcs::cli
