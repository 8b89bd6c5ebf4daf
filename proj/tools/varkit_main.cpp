#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "varkit/problem.hpp"

namespace {

int run_file(const std::string& path, const varkit::RunOptions& opts, bool pretty) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "varkit: cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  varkit::RunResult rr = varkit::run_problem_text(buf.str(), opts);
  std::cout << rr.report.dump(pretty ? 2 : -1) << "\n";
  return rr.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"varkit: exact first-order analysis of piecewise polyhedral set-valued maps"};
  app.set_version_flag("--version", "varkit 0.1.0");

  std::string file;
  std::string norm = "inf";
  std::string route = "auto";
  int oracle_budget = -1;
  long long seed = -1;
  bool json_out = false, pretty_out = false;

  CLI::App* run = app.add_subcommand("run", "run the queries of a problem file");
  run->add_option("file", file, "problem file (JSON)")->required();
  run->add_option("--norm", norm, "domain/codomain norm: inf or one (default inf)");
  run->add_option("--route", route, "certification route: primal|convexified|dual|fastpath|auto");
  run->add_option("--oracle-budget", oracle_budget, "random samples per oracle pass");
  run->add_option("--seed", seed, "oracle RNG seed");
  run->add_flag("--json", json_out, "compact JSON report (default)");
  run->add_flag("--pretty", pretty_out, "indented JSON report");
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  bool pretty = pretty_out;
  if (!json_out && !pretty_out) {
    if (const char* env = std::getenv("VARKIT_OUTPUT")) pretty = std::string(env) == "pretty";
  }

  varkit::RunOptions opts;
  try {
    if (norm == "inf")
      opts.norms = varkit::NormPair{varkit::NormKind::Inf, varkit::NormKind::Inf};
    else if (norm == "one")
      opts.norms = varkit::NormPair{varkit::NormKind::One, varkit::NormKind::One};
    else
      throw varkit::ParseError("unknown --norm value: " + norm);

    if (route == "primal")
      opts.route = varkit::Route::PrimalTangent;
    else if (route == "convexified")
      opts.route = varkit::Route::PrimalConvexified;
    else if (route == "dual")
      opts.route = varkit::Route::DualNormal;
    else if (route == "fastpath")
      opts.route = varkit::Route::ClarkeFastpath;
    else if (route == "auto")
      opts.route = varkit::Route::Auto;
    else
      throw varkit::ParseError("unknown --route value: " + route);

    if (oracle_budget >= 0) opts.oracle_samples = oracle_budget;
    if (seed >= 0) opts.seed = static_cast<unsigned long>(seed);

    return run_file(file, opts, pretty);
  } catch (const varkit::Error& e) {
    std::cerr << "varkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "varkit: unexpected error: " << e.what() << "\n";
    return 2;
  }
}
