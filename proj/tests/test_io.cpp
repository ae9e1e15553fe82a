#include <catch_amalgamated.hpp>

#include <sstream>

#include "gcs/io.hpp"

using namespace gcs;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("state JSON shape") {
  const auto s = build_state(family::PoschlTeller{3.0}, cplx(0.4, -0.1), 1.0);
  const auto j = io::state_to_json(s);
  CHECK(j["family"] == "poschl_teller(nu=3)");
  CHECK(j["z"][0] == 0.4);
  CHECK(j["z"][1] == -0.1);
  CHECK(j["alpha"] == 1.0);
  CHECK(j["coefficients"].size() == s.size());
  CHECK(j["tail_mass"].get<double>() == s.tail_mass);
  CHECK(io::state_to_json(build_state(family::Canonical{}, 0.5))["alpha"].is_null());
}

TEST_CASE("state JSON round trip is exact") {
  for (const FamilySpec& f : {FamilySpec(family::Canonical{}), FamilySpec(family::BarutGirardello{1.5}),
                              dual_family(family::HydrogenLike{}), FamilySpec(family::Morse{4})}) {
    const auto s = build_state(f, cplx(0.31, 0.17), 0.9);
    const auto text = io::state_to_json(s).dump();
    const auto back = io::state_from_json(io::json::parse(text));
    CHECK(to_string(back.family) == to_string(s.family));
    CHECK(back.label_z == s.label_z);
    CHECK(back.stabilization_alpha == s.stabilization_alpha);
    CHECK(back.tail_mass == s.tail_mass);
    CHECK(back.truncation_N == s.truncation_N);
    REQUIRE(back.size() == s.size());
    for (Eigen::Index n = 0; n < s.coefficients.size(); ++n) CHECK(back.coefficients[n] == s.coefficients[n]);
    CHECK(io::state_to_json(back).dump() == text);
  }
}

TEST_CASE("GK labels survive the round trip") {
  const auto s = generalized_gk_state(family::InfiniteWell{}, GKLabel{0.5, 0.3, 0.2, 2.0});
  const auto back = io::state_from_json(io::state_to_json(s));
  REQUIRE(back.gk_label);
  CHECK(back.gk_label->J == 0.5);
  CHECK(back.gk_label->theta == 0.3);
  CHECK(back.gk_label->t == 0.2);
  CHECK(back.gk_label->omega == 2.0);
}

TEST_CASE("malformed state JSON") {
  auto j = io::state_to_json(build_state(family::Canonical{}, 0.5));
  j["z"] = io::json::array({1.0});
  CHECK_THROWS_AS(io::state_from_json(j), DomainError);
  j = io::state_to_json(build_state(family::Canonical{}, 0.5));
  j["family"] = "nosuch()";
  CHECK_THROWS_AS(io::state_from_json(j), DomainError);
}

TEST_CASE("operator formats") {
  const auto a = ladder_matrices(3).a;
  const auto j = io::operator_to_json(a);
  CHECK(j["dim"] == 4);
  CHECK(j["entries"][0][1][0] == 1.0);
  CHECK(j["entries"][1][0][0] == 0.0);

  const std::string ccs = io::operator_to_ccs(a);
  std::istringstream in(ccs);
  std::string line;
  std::getline(in, line);
  CHECK(line == "label a");
  std::getline(in, line);
  CHECK(line == "dim 4 valid_interior 2 nnz 3");
  std::getline(in, line);
  CHECK(line == "colptr 0 0 1 2 3");
  std::getline(in, line);
  CHECK(line == "0 1 0");
  std::getline(in, line);
  CHECK(line == "1 1.4142135623730951 0");
}

TEST_CASE("report formats") {
  const std::vector<VerifyReport> rs{make_report("alpha", 1.0, 1.0, 1e-12, true), skipped_report("beta", "not \"run\""),
                                     make_report("gamma", 1.0, 2.0, 1e-12, true)};
  const std::string lines = io::reports_to_jsonl(rs);
  std::istringstream in(lines);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto j = io::json::parse(line);
    CHECK(j.contains("check_name"));
    CHECK(j.contains("passed"));
    ++count;
  }
  CHECK(count == 3);
  const std::string table = io::reports_to_table(rs);
  CHECK_THAT(table, ContainsSubstring("PASS"));
  CHECK_THAT(table, ContainsSubstring("SKIP"));
  CHECK_THAT(table, ContainsSubstring("FAIL"));
  const std::string csv = io::reports_to_csv(rs);
  CHECK_THAT(csv, ContainsSubstring("\"beta\",SKIP"));
  CHECK_THAT(csv, ContainsSubstring("not 'run'"));
}

TEST_CASE("complex report values stay complex") {
  const auto r = make_report("c", cplx(0.0, 1.0), cplx(0.0, 1.0), 1e-12, false);
  const auto j = io::report_to_json(r);
  CHECK(j["target"].is_array());
  CHECK(io::report_to_json(make_report("r", 2.0, 2.0, 0.0, false))["target"].is_number());
}

TEST_CASE("aligned table") {
  const std::string t = io::table({"a", "long"}, {{"xyz", "1"}});
  CHECK(t == "a    long\n---  ----\nxyz  1\n");
}
