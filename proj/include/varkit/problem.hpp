#pragma once

#include <json.hpp>
#include <string>

#include "varkit/constraints.hpp"
#include "varkit/oracle.hpp"

// CLI problem files: named maps plus a query list, every scalar an exact
// rational string. Reports serialize cones with both representations and are
// re-parseable by the same functions.

namespace varkit {

using Json = nlohmann::json;

Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);
Json vec_to_json(const RatVec& v);
RatVec vec_from_json(const Json& j);

Json polyhedron_to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j);
Json polyunion_to_json(const PolyUnion& u);
PolyUnion polyunion_from_json(const Json& j);
Json prefan_to_json(const Prefan& h);
Prefan prefan_from_json(const Json& j);
Json certificate_to_json(const Certificate& c);

struct RunOptions {
  NormPair norms;
  Route route = Route::Auto;
  std::optional<int> oracle_samples;
  std::optional<unsigned long> seed;
};

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 answered+holds, 1 some certification fails, 2 input error
};

// Executes all queries of a parsed problem document. Throws ParseError (and
// the geometry errors) on malformed input; the CLI maps those to exit 2.
RunResult run_problem(const Json& problem, const RunOptions& opts);

RunResult run_problem_text(const std::string& text, const RunOptions& opts);

}  // namespace varkit
