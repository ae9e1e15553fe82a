#pragma once

// JSON and text serialization of states, operators and reports.

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "gcs/families.hpp"
#include "gcs/fock.hpp"
#include "gcs/opspace.hpp"
#include "gcs/verify.hpp"
#include "json.hpp"

namespace gcs::io {

using json = nlohmann::ordered_json;

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// { family, z: [re, im], alpha: number|null, coefficients: [[re, im], ...],
//   tail_mass, truncation_N, and J/theta/t/omega for GK labels }
inline json state_to_json(const FockExpansion& s) {
  json j;
  j["family"] = to_string(s.family);
  j["z"] = complex_to_json(s.label_z);
  j["alpha"] = s.stabilization_alpha ? json(*s.stabilization_alpha) : json(nullptr);
  json coeffs = json::array();
  for (Eigen::Index n = 0; n < s.coefficients.size(); ++n) coeffs.push_back(complex_to_json(s.coefficients[n]));
  j["coefficients"] = std::move(coeffs);
  j["tail_mass"] = s.tail_mass;
  j["truncation_N"] = s.truncation_N;
  if (s.gk_label) {
    j["J"] = s.gk_label->J;
    j["theta"] = s.gk_label->theta;
    j["t"] = s.gk_label->t;
    j["omega"] = s.gk_label->omega;
  }
  return j;
}

inline FockExpansion state_from_json(const json& j) {
  FockExpansion s;
  s.family = parse_family(j.at("family").get<std::string>());
  s.label_z = complex_from_json(j.at("z"));
  if (!j.at("alpha").is_null()) s.stabilization_alpha = j.at("alpha").get<double>();
  const auto& coeffs = j.at("coefficients");
  s.coefficients.resize(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t n = 0; n < coeffs.size(); ++n) s.coefficients[static_cast<Eigen::Index>(n)] = complex_from_json(coeffs[n]);
  s.tail_mass = j.at("tail_mass").get<double>();
  s.truncation_N = j.contains("truncation_N") ? j.at("truncation_N").get<std::size_t>() : coeffs.size() - 1;
  if (j.contains("J")) {
    s.gk_label = GKLabel{j.at("J").get<double>(), j.value("theta", 0.0), j.value("t", 0.0), j.value("omega", 1.0)};
  }
  return s;
}

// { label, dim, valid_interior, entries: rows of [re, im] }
inline json operator_to_json(const TruncatedOperator& op) {
  json j;
  j["label"] = op.label;
  j["dim"] = op.dim();
  j["valid_interior"] = op.valid_interior;
  json rows = json::array();
  for (Eigen::Index i = 0; i < op.entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < op.entries.cols(); ++k) row.push_back(complex_to_json(op.entries(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Column-compressed text:
//   label <label>
//   dim <d>  valid_interior <k>  nnz <m>
//   colptr <d+1 offsets>
//   then one "row re im" line per stored entry, column by column.
inline std::string operator_to_ccs(const TruncatedOperator& op) {
  std::ostringstream out;
  std::vector<std::size_t> colptr{0};
  std::ostringstream body;
  std::size_t nnz = 0;
  for (Eigen::Index c = 0; c < op.entries.cols(); ++c) {
    for (Eigen::Index r = 0; r < op.entries.rows(); ++r) {
      const cplx v = op.entries(r, c);
      if (v == cplx(0.0, 0.0)) continue;
      body << r << ' ' << fmt17(v.real()) << ' ' << fmt17(v.imag()) << '\n';
      ++nnz;
    }
    colptr.push_back(nnz);
  }
  out << "label " << op.label << '\n';
  out << "dim " << op.dim() << " valid_interior " << op.valid_interior << " nnz " << nnz << '\n';
  out << "colptr";
  for (auto p : colptr) out << ' ' << p;
  out << '\n' << body.str();
  return out.str();
}

inline json report_to_json(const VerifyReport& r) {
  json j;
  j["check_name"] = r.check_name;
  if (r.target.imag() == 0.0 && r.computed.imag() == 0.0) {
    j["target"] = r.target.real();
    j["computed"] = r.computed.real();
  } else {
    j["target"] = complex_to_json(r.target);
    j["computed"] = complex_to_json(r.computed);
  }
  j["abs_residual"] = r.abs_residual;
  j["rel_residual"] = r.rel_residual;
  j["tolerance"] = r.tolerance;
  j["residual"] = r.relative ? "relative" : "absolute";
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["notes"] = r.notes;
  return j;
}

inline std::string reports_to_jsonl(const std::vector<VerifyReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_to_json(r).dump() + "\n";
  return out;
}

inline std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Plain-text table with left-aligned columns.
inline std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) s += "  ";
      s += cells[c];
      if (c + 1 < cells.size()) s.append(width[c] - cells[c].size(), ' ');
    }
    out << s << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : rows) line(row);
  return out.str();
}

inline std::string reports_to_table(const std::vector<VerifyReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.check_name, r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL"), fmt_short(r.abs_residual),
                    fmt_short(r.rel_residual), fmt_short(r.tolerance), r.notes});
  }
  return table({"check", "status", "abs_residual", "rel_residual", "tolerance", "notes"}, rows);
}

inline std::string reports_to_csv(const std::vector<VerifyReport>& reports) {
  std::string out = "check_name,status,abs_residual,rel_residual,tolerance,notes\n";
  for (const auto& r : reports) {
    std::string notes = r.notes;
    std::replace(notes.begin(), notes.end(), '"', '\'');
    out += "\"" + r.check_name + "\"," + (r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL")) + "," + fmt17(r.abs_residual) +
           "," + fmt17(r.rel_residual) + "," + fmt17(r.tolerance) + ",\"" + notes + "\"\n";
  }
  return out;
}

}  // namespace gcs::io
