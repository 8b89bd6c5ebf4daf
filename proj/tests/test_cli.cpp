#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "varkit/problem.hpp"

using namespace varkit;
using namespace varkit::testing;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("s1 certify fixture: all queries answered, exit 0") {
  RunResult rr = run_problem_text(slurp("s1_certify.json"), {});
  CHECK(rr.exit_code == 0);
  CHECK(rr.report.at("status") == "ok");
  const Json& results = rr.report.at("results");
  REQUIRE(results.size() == 6);
  CHECK(results[0].at("count") == 6);
  CHECK(results[1].at("count") == 5);
  CHECK(results[4].at("via_normals") == "1");
  CHECK(results[5].at("certificate").at("verdict") == "holds");
}

TEST_CASE("s1 failing fixture: exit 1 with a witness in the report") {
  RunResult rr = run_problem_text(slurp("s1_certify_fail.json"), {});
  CHECK(rr.exit_code == 1);
  CHECK(rr.report.at("status") == "certification-failed");
  const Json& cert = rr.report.at("results")[0].at("certificate");
  CHECK(cert.at("verdict") == "fails");
  CHECK(cert.contains("witness_direction"));
}

TEST_CASE("example 1.7 fixture holds on every requested route") {
  RunResult rr = run_problem_text(slurp("example17.json"), {});
  CHECK(rr.exit_code == 0);
  const Json& results = rr.report.at("results");
  CHECK(results[0].at("via_normals") == "1");
  for (std::size_t i = 1; i < results.size(); ++i)
    CHECK(results[i].at("certificate").at("verdict") == "holds");
  CHECK(results[1].at("certificate").at("route") == "clarke-fastpath");
}

TEST_CASE("s3 oracle fixture reports the violation but exits 0") {
  RunResult rr = run_problem_text(slurp("s3_oracle.json"), {});
  CHECK(rr.exit_code == 0);
  const Json& results = rr.report.at("results");
  CHECK(results[0].at("found_violation") == true);
  CHECK(results[1].at("found_violation") == false);
  // lower bound for S1 at the default budget reaches at least 3/4
  Rat lb = rat_parse(results[2].at("lower_bound").get<std::string>());
  CHECK(rat(3, 4) <= lb);
}

TEST_CASE("constraint fixture: cq holds and the modulus is exactly 1/2") {
  RunResult rr = run_problem_text(slurp("constraint_basic.json"), {});
  CHECK(rr.exit_code == 0);
  const Json& results = rr.report.at("results");
  CHECK(results[0].at("holds") == true);
  CHECK(results[1].at("holds") == true);
  CHECK(results[2].at("modulus") == "1/2");
  CHECK(results[4].at("certificate").at("verdict") == "holds");
}

TEST_CASE("malformed rational is a parse error") {
  CHECK_THROWS_AS(run_problem_text(slurp("malformed_rational.json"), {}), Error);
}

TEST_CASE("unknown names and bad versions are parse errors") {
  CHECK_THROWS_AS(run_problem_text(R"({"version":"2"})", {}), ParseError);
  CHECK_THROWS_AS(
      run_problem_text(R"({"version":"1","queries":[{"kind":"lip","map":"nope","point":["0","0"]}]})",
                       {}),
      ParseError);
  CHECK_THROWS_AS(run_problem_text("{not json", {}), ParseError);
}

TEST_CASE("report cone data round-trips through the parser") {
  RunResult rr = run_problem_text(slurp("s1_certify.json"), {});
  const Json& results = rr.report.at("results");

  // tangent cone of S1 at the origin, reparsed, equals the library's value
  PolyUnion reparsed = polyunion_from_json(results[2].at("cone"));
  CHECK(relate(reparsed, fixtures::g_graph(6)).rel == Relation::Equal);

  // limiting normal cone round trip
  PolyUnion n = polyunion_from_json(results[3].at("cone"));
  std::vector<Polyhedron> rays;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}})
    rays.push_back(Polyhedron::cone_from_rays(2, {vec({a, b})}));
  CHECK(relate(n, PolyUnion(2, rays)).rel == Relation::Equal);

  // every reported limit cone reparses to an equal set
  for (const auto& cj : results[0].at("cones")) {
    PolyUnion c = polyunion_from_json(cj);
    PolyUnion back = polyunion_from_json(polyunion_to_json(c));
    CHECK(relate(c, back).rel == Relation::Equal);
  }
}

TEST_CASE("inconsistent dual representations are rejected") {
  Json bad = Json::parse(R"({
    "dim": 1,
    "ineqs": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}],
    "generators": {"vertices": [["0"], ["2"]]}
  })");
  CHECK_THROWS_AS(polyhedron_from_json(bad), InconsistentRepresentations);
  Json good = Json::parse(R"({
    "dim": 1,
    "ineqs": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}],
    "generators": {"vertices": [["-1"], ["1"]]}
  })");
  CHECK(polyhedron_from_json(good).equals(poly(1, {iq({1}, 1), iq({-1}, 1)})));
}
