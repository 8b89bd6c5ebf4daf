#include "varkit/problem.hpp"

#include <chrono>
#include <map>

namespace varkit {
namespace {

constexpr const char* kToolVersion = "0.1.0";

NormKind norm_kind_from(const std::string& s) {
  if (s == "inf") return NormKind::Inf;
  if (s == "one") return NormKind::One;
  if (s == "two-approx") return NormKind::TwoApprox;
  throw ParseError("unknown norm kind: " + s);
}

Route route_from(const std::string& s) {
  if (s == "primal") return Route::PrimalTangent;
  if (s == "convexified") return Route::PrimalConvexified;
  if (s == "dual") return Route::DualNormal;
  if (s == "fastpath") return Route::ClarkeFastpath;
  if (s == "auto") return Route::Auto;
  throw ParseError("unknown route: " + s);
}

}  // namespace

Json rat_to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw ParseError("rational must be an integer or a \"p/q\" string");
}

Json vec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(rat_to_json(c));
  return a;
}

RatVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array of rationals");
  RatVec v;
  for (const auto& c : j) v.push_back(rat_from_json(c));
  return v;
}

Json polyhedron_to_json(const Polyhedron& p) {
  Json j;
  j["dim"] = p.dim();
  Json iq = Json::array();
  for (const auto& i : p.ineqs()) iq.push_back(Json{{"a", vec_to_json(i.a)}, {"b", rat_to_json(i.b)}});
  j["ineqs"] = iq;
  Json g;
  Json vs = Json::array(), rs = Json::array(), ls = Json::array();
  for (const auto& v : p.gens().vertices) vs.push_back(vec_to_json(v));
  for (const auto& r : p.gens().rays) rs.push_back(vec_to_json(r));
  for (const auto& l : p.gens().lines) ls.push_back(vec_to_json(l));
  g["vertices"] = vs;
  g["rays"] = rs;
  g["lines"] = ls;
  j["generators"] = g;
  return j;
}

Polyhedron polyhedron_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("polyhedron must be an object");
  if (!j.contains("dim")) throw ParseError("polyhedron needs a dim field");
  std::size_t dim = j.at("dim").get<std::size_t>();
  bool have_h = j.contains("ineqs") || j.contains("eqs");
  bool have_v = j.contains("generators");
  if (!have_h && !have_v) throw ParseError("polyhedron needs ineqs/eqs or generators");
  if (have_h) {
    std::vector<Ineq> iq;
    if (j.contains("ineqs")) {
      for (const auto& e : j.at("ineqs")) {
        RatVec a = vec_from_json(e.at("a"));
        if (a.size() != dim) throw ParseError("inequality arity mismatch");
        iq.push_back(Ineq{a, rat_from_json(e.at("b"))});
      }
    }
    if (j.contains("eqs")) {
      for (const auto& e : j.at("eqs")) {
        RatVec a = vec_from_json(e.at("a"));
        if (a.size() != dim) throw ParseError("equality arity mismatch");
        Rat b = rat_from_json(e.at("b"));
        iq.push_back(Ineq{a, b});
        RatVec na = a;
        for (auto& c : na) c = -c;
        iq.push_back(Ineq{na, Rat(-b)});
      }
    }
    Polyhedron p = Polyhedron::from_ineqs(dim, std::move(iq));
    if (have_v) {
      Polyhedron q = polyhedron_from_json(Json{{"dim", dim}, {"generators", j.at("generators")}});
      if (!p.equals(q))
        throw InconsistentRepresentations("hrep and vrep describe different sets");
    }
    return p;
  }
  const Json& g = j.at("generators");
  Generators gen;
  if (g.contains("vertices"))
    for (const auto& v : g.at("vertices")) gen.vertices.push_back(vec_from_json(v));
  if (g.contains("rays"))
    for (const auto& v : g.at("rays")) gen.rays.push_back(vec_from_json(v));
  if (g.contains("lines"))
    for (const auto& v : g.at("lines")) gen.lines.push_back(vec_from_json(v));
  return Polyhedron::from_generators(dim, std::move(gen));
}

Json polyunion_to_json(const PolyUnion& u) {
  Json j;
  j["dim"] = u.dim();
  Json ps = Json::array();
  for (const auto& p : u.pieces()) ps.push_back(polyhedron_to_json(p));
  j["pieces"] = ps;
  return j;
}

PolyUnion polyunion_from_json(const Json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<Polyhedron> ps;
  for (const auto& p : j.at("pieces")) ps.push_back(polyhedron_from_json(p));
  return PolyUnion(dim, std::move(ps));
}

Json prefan_to_json(const Prefan& h) {
  Json j;
  j["kind"] = "prefan";
  j["n"] = h.n;
  j["m"] = h.m;
  Json cells = Json::array();
  for (const auto& c : h.cells)
    cells.push_back(Json{{"domain_cone", polyhedron_to_json(c.domain)},
                         {"graph_cone", polyhedron_to_json(c.graph)}});
  j["cells"] = cells;
  j["norm"] = Json{{"domain", norm_name(h.norms.domain)}, {"codomain", norm_name(h.norms.codomain)}};
  return j;
}

Prefan prefan_from_json(const Json& j) {
  std::size_t n = j.at("n").get<std::size_t>();
  std::size_t m = j.at("m").get<std::size_t>();
  std::vector<PrefanCell> cells;
  for (const auto& c : j.at("cells"))
    cells.push_back(PrefanCell{polyhedron_from_json(c.at("domain_cone")),
                               polyhedron_from_json(c.at("graph_cone"))});
  NormPair norms;
  if (j.contains("norm")) {
    norms.domain = norm_kind_from(j.at("norm").at("domain").get<std::string>());
    norms.codomain = norm_kind_from(j.at("norm").at("codomain").get<std::string>());
  }
  return Prefan(n, m, std::move(cells), norms);
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["query"] = c.query == QueryKind::Lip ? "lip" : "certify";
  j["verdict"] = verdict_name(c.verdict);
  j["route"] = route_name(c.route);
  if (c.witness_direction.has_value()) j["witness_direction"] = vec_to_json(*c.witness_direction);
  if (c.witness_normal.has_value())
    j["witness_normal"] =
        Json{{"u", vec_to_json(c.witness_normal->first)}, {"v", vec_to_json(c.witness_normal->second)}};
  if (c.modulus.has_value())
    j["modulus"] = c.modulus->is_inf() ? Json("inf") : Json(rat_str(c.modulus->value));
  j["norms"] = Json{{"domain", norm_name(c.norms.domain)},
                    {"codomain", norm_name(c.norms.codomain)},
                    {"normal_space_domain", norm_name(dual_kind(c.norms.domain))},
                    {"normal_space_codomain", norm_name(dual_kind(c.norms.codomain))}};
  j["notes"] = c.notes;
  return j;
}

namespace {

struct NamedMaps {
  std::map<std::string, PwpMap> maps;
  std::map<std::string, Prefan> prefans;
  std::map<std::string, PHMap> phmaps;

  const PwpMap& map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw ParseError("unknown map: " + name);
    return it->second;
  }
  const Prefan& prefan(const std::string& name) const {
    auto it = prefans.find(name);
    if (it == prefans.end()) throw ParseError("unknown prefan: " + name);
    return it->second;
  }
  PHMap phmap_or_prefan(const std::string& name) const {
    auto it = phmaps.find(name);
    if (it != phmaps.end()) return it->second;
    auto jt = prefans.find(name);
    if (jt != prefans.end()) return jt->second.as_phmap();
    throw ParseError("unknown positively homogeneous map: " + name);
  }
};

ConstraintSystem constraint_from_json(const Json& j) {
  std::size_t n = j.at("n").get<std::size_t>();
  std::size_t m = j.at("m").get<std::size_t>();
  RatMat jac;
  for (const auto& row : j.at("jacobian")) jac.push_back(vec_from_json(row));
  return ConstraintSystem(n, m, std::move(jac), polyhedron_from_json(j.at("D")),
                          vec_from_json(j.at("residual")));
}

OracleBudget budget_from(const Json& q, const RunOptions& opts) {
  OracleBudget b = default_budget();
  if (q.contains("budget")) {
    const Json& bj = q.at("budget");
    if (bj.contains("delta_grid")) {
      b.delta_grid.clear();
      for (const auto& d : bj.at("delta_grid")) b.delta_grid.push_back(rat_from_json(d));
    }
    if (bj.contains("radius_grid")) {
      b.radius_grid.clear();
      for (const auto& d : bj.at("radius_grid")) b.radius_grid.push_back(rat_from_json(d));
    }
    if (bj.contains("samples_per_pair")) b.samples_per_pair = bj.at("samples_per_pair").get<int>();
    if (bj.contains("seed")) b.seed = bj.at("seed").get<unsigned long>();
  }
  if (opts.oracle_samples.has_value()) b.samples_per_pair = *opts.oracle_samples;
  if (opts.seed.has_value()) b.seed = *opts.seed;
  return b;
}

Json run_query(const Json& q, const NamedMaps& named, const RunOptions& opts, bool* any_fail) {
  Json out;
  std::string kind = q.at("kind").get<std::string>();
  out["kind"] = kind;

  NormPair norms = opts.norms;
  if (q.contains("norm")) {
    norms.domain = norm_kind_from(q.at("norm").at("domain").get<std::string>());
    norms.codomain = norm_kind_from(q.at("norm").at("codomain").get<std::string>());
  }

  if (kind == "tangent") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    out["cone"] = polyunion_to_json(tangent_cone(s.graph, pt));
  } else if (kind == "normal") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    std::string which = q.value("which", std::string("limiting"));
    if (which == "regular")
      out["cone"] = polyunion_to_json(PolyUnion::single(regular_normal_cone(s, x, y)));
    else if (which == "limiting")
      out["cone"] = polyunion_to_json(limiting_normal_cone(s, x, y));
    else
      throw ParseError("normal query: which must be regular or limiting");
    out["which"] = which;
  } else if (kind == "derivative") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    std::string variant = q.value("variant", std::string("graphical"));
    PHMap d;
    if (variant == "graphical")
      d = graphical_derivative(s, x, y);
    else if (variant == "convexified")
      d = convexified_derivative(s, x, y);
    else if (variant == "coderivative")
      d = coderivative(s, x, y);
    else if (variant == "convexified-coderivative")
      d = convexified_coderivative(s, x, y);
    else
      throw ParseError("derivative query: unknown variant " + variant);
    out["variant"] = variant;
    out["graph"] = polyunion_to_json(d.graph);
  } else if (kind == "limit-cones") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    bool conv = q.value("convexified", false);
    LimitConeSet lc = limit_cones(s, x, y, conv);
    out["convexified"] = conv;
    Json cones = Json::array();
    for (const auto& c : lc.cones) cones.push_back(polyunion_to_json(c));
    out["cones"] = cones;
    out["count"] = lc.cones.size();
  } else if (kind == "lip") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    ExtRat tn = lip_via_tangents(s, x, y, norms, false);
    ExtRat tc = lip_via_tangents(s, x, y, norms, true);
    Certificate cert = lip_certificate(s, x, y, norms);
    out["via_tangents"] = ext_str(tn);
    out["via_convexified_tangents"] = ext_str(tc);
    out["via_normals"] = ext_str(*cert.modulus);
    out["certificate"] = certificate_to_json(cert);
    if (!(tn == tc && tn == *cert.modulus)) throw Error("internal: lip routes disagree");
  } else if (kind == "certify") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    const Prefan& h = named.prefan(q.at("prefan").get<std::string>());
    Route route = opts.route;
    if (q.contains("route")) route = route_from(q.at("route").get<std::string>());
    Certificate cert = certify_prefan(s, x, y, h, route);
    out["certificate"] = certificate_to_json(cert);
    if (!cert.holds()) *any_fail = true;
  } else if (kind == "constraint") {
    ConstraintSystem sys = constraint_from_json(q.at("system"));
    std::string op = q.at("op").get<std::string>();
    out["op"] = op;
    if (op == "cq") {
      CqResult r = check_cq(sys);
      out["holds"] = r.holds;
      if (r.witness_y.has_value()) out["witness_y"] = vec_to_json(*r.witness_y);
    } else if (op == "mfcq") {
      MfcqResult r = check_mfcq(sys);
      out["holds"] = r.holds;
      if (r.witness_w.has_value()) out["witness_w"] = vec_to_json(*r.witness_w);
    } else if (op == "lip") {
      out["modulus"] = ext_str(constraint_lip(sys, norms));
    } else if (op == "tangent") {
      out["graph"] = polyunion_to_json(inverse_tangent(sys).graph);
    } else if (op == "certify") {
      const Prefan& h = named.prefan(q.at("prefan").get<std::string>());
      Certificate cert = certify_constraint_prefan(sys, h);
      out["certificate"] = certificate_to_json(cert);
      if (!cert.holds()) *any_fail = true;
    } else {
      throw ParseError("constraint query: unknown op " + op);
    }
  } else if (kind == "oracle") {
    const PwpMap& s = named.map(q.at("map").get<std::string>());
    RatVec pt = vec_from_json(q.at("point"));
    RatVec x(pt.begin(), pt.begin() + s.n), y(pt.begin() + s.n, pt.end());
    std::string op = q.value("op", std::string("falsify"));
    OracleBudget budget = budget_from(q, opts);
    out["op"] = op;
    if (op == "falsify") {
      PHMap h = named.phmap_or_prefan(q.at("h").get<std::string>());
      std::vector<RatVec> hints;
      if (q.contains("hints"))
        for (const auto& hv : q.at("hints")) hints.push_back(vec_from_json(hv));
      OracleOutcome oc = falsify_definition(s, x, y, h, norms, budget, hints);
      out["found_violation"] = oc.found();
      if (oc.found()) {
        const Violation& v = *oc.violation;
        out["violation"] = Json{{"x", vec_to_json(v.x)},
                                {"x_prime", vec_to_json(v.x_prime)},
                                {"delta", rat_to_json(v.delta)},
                                {"radius", rat_to_json(v.radius)},
                                {"witness_y", vec_to_json(v.witness_y)}};
      }
    } else if (op == "lip-lower") {
      out["lower_bound"] = ext_str(sample_lip_lower_bound(s, x, y, budget, norms));
    } else {
      throw ParseError("oracle query: unknown op " + op);
    }
  } else {
    throw ParseError("unknown query kind: " + kind);
  }
  return out;
}

}  // namespace

RunResult run_problem(const Json& problem, const RunOptions& opts) {
  if (!problem.is_object()) throw ParseError("problem file must be a JSON object");
  std::string version = problem.value("version", std::string("1"));
  if (version != "1") throw ParseError("unsupported problem version: " + version);

  NamedMaps named;
  if (problem.contains("maps")) {
    for (const auto& [name, def] : problem.at("maps").items()) {
      std::string kind = def.value("kind", std::string("pwp"));
      if (kind == "pwp") {
        named.maps.emplace(name, PwpMap(def.at("n").get<std::size_t>(),
                                        def.at("m").get<std::size_t>(),
                                        polyunion_from_json(def.at("graph"))));
      } else if (kind == "prefan") {
        named.prefans.emplace(name, prefan_from_json(def));
      } else if (kind == "phmap") {
        named.phmaps.emplace(name, PHMap(def.at("n").get<std::size_t>(),
                                         def.at("m").get<std::size_t>(),
                                         polyunion_from_json(def.at("graph"))));
      } else {
        throw ParseError("unknown map kind: " + kind);
      }
    }
  }

  RunResult rr;
  rr.report["schema_version"] = "1";
  rr.report["tool"] = "varkit";
  rr.report["tool_version"] = kToolVersion;
  Json results = Json::array();
  bool any_fail = false;
  if (problem.contains("queries")) {
    for (const auto& q : problem.at("queries")) {
      auto t0 = std::chrono::steady_clock::now();
      Json r = run_query(q, named, opts, &any_fail);
      auto t1 = std::chrono::steady_clock::now();
      r["time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
      results.push_back(std::move(r));
    }
  }
  rr.report["results"] = results;
  rr.report["status"] = any_fail ? "certification-failed" : "ok";
  rr.exit_code = any_fail ? 1 : 0;
  return rr;
}

RunResult run_problem_text(const std::string& text, const RunOptions& opts) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return run_problem(doc, opts);
}

}  // namespace varkit
