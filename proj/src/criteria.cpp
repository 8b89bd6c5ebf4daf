#include "varkit/criteria.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace varkit {
namespace {

std::string vec_str(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rat_str(v[i]);
  os << ")";
  return os.str();
}

RatVec stack(const RatVec& x, const RatVec& y) {
  RatVec xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  return xy;
}

void require_exact(NormPair norms, const char* who) {
  if (!norm_exact(norms.domain) || !norm_exact(norms.codomain)) throw NonPolyhedralNorm(who);
}

// Epigraph cone of the per-piece selection cost: the (w, t) projection of
// {(w, z, t) : (w, z) in piece, ||z|| <= t}. Upward closed in t; its hrep rows
// with negative t coefficient are the linear pieces of inf_z ||z||.
struct PieceCost {
  Polyhedron dom;              // projection of the piece to w-space
  std::vector<RatVec> linear;  // lower-envelope functionals on w
  std::vector<Ineq> dom_rows;  // domain facets (t coefficient zero)
};

PieceCost piece_cost(const Polyhedron& piece, std::size_t n, std::size_t m, NormKind cod) {
  std::vector<Ineq> iq;
  for (const auto& i : piece.ineqs()) {
    RatVec a = i.a;
    a.resize(n + m + 1, Rat(0));
    iq.push_back(Ineq{a, i.b});
  }
  Polyhedron cod_ball = unit_ball(cod, m);
  for (const auto& f : cod_ball.ineqs()) {
    RatVec a = zero_vec(n + m + 1);
    for (std::size_t k = 0; k < m; ++k) a[n + k] = f.a[k];
    a[n + m] = -f.b;
    iq.push_back(Ineq{a, Rat(0)});
  }
  Polyhedron lifted = Polyhedron::from_ineqs(n + m + 1, std::move(iq));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) keep.push_back(i);
  keep.push_back(n + m);
  Polyhedron epi = lifted.project(keep);

  PieceCost pc;
  std::vector<std::size_t> wkeep;
  for (std::size_t i = 0; i < n; ++i) wkeep.push_back(i);
  pc.dom = piece.project(wkeep);
  for (const auto& row : epi.ineqs()) {
    RatVec beta(row.a.begin(), row.a.end() - 1);
    Rat gamma = row.a.back();
    assert(sgn(gamma) <= 0);
    if (sgn(gamma) < 0) {
      pc.linear.push_back(vscale(-1 / gamma, beta));
    } else if (!is_zero(beta)) {
      pc.dom_rows.push_back(Ineq{beta, row.b});
    }
  }
  return pc;
}

Rat eval_cost(const PieceCost& pc, const RatVec& w) {
  Rat best;
  bool first = true;
  for (const auto& l : pc.linear) {
    Rat v = dot(l, w);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  assert(!first);
  if (sgn(best) < 0) best = 0;  // the epigraph lies in t >= 0
  return best;
}

}  // namespace

ExtRat inner_norm(const PHMap& g, NormPair norms) {
  require_exact(norms, "inner_norm");
  const std::size_t n = g.n, m = g.m;

  std::vector<std::size_t> wkeep;
  for (std::size_t i = 0; i < n; ++i) wkeep.push_back(i);
  std::vector<Polyhedron> domains;
  for (const auto& p : g.graph.pieces()) domains.push_back(p.project(wkeep));
  if (covers(domains, Polyhedron::whole_space(n)).has_value()) return ExtRat::inf();

  std::vector<PieceCost> costs;
  for (const auto& p : g.graph.pieces()) costs.push_back(piece_cost(p, n, m, norms.codomain));

  // Refine sphere facets so the active piece and its active linear functional
  // are constant on each cell; the sup of the resulting linear value over a
  // cell is attained at a cell vertex.
  std::vector<Ineq> hyperplanes;
  for (const auto& pc : costs) {
    for (const auto& row : pc.dom_rows) hyperplanes.push_back(Ineq{row.a, Rat(0)});
    for (const auto& iq : pc.dom.ineqs()) hyperplanes.push_back(iq);
  }
  std::vector<RatVec> all_linear;
  for (const auto& pc : costs)
    for (const auto& l : pc.linear) all_linear.push_back(l);
  for (std::size_t i = 0; i < all_linear.size(); ++i) {
    for (std::size_t j = i + 1; j < all_linear.size(); ++j) {
      RatVec diff = vsub(all_linear[i], all_linear[j]);
      if (!is_zero(diff)) hyperplanes.push_back(Ineq{diff, Rat(0)});
    }
    if (!is_zero(all_linear[i])) hyperplanes.push_back(Ineq{all_linear[i], Rat(0)});
  }

  Rat best = 0;
  for (const auto& facet : sphere_facets(norms.domain, n)) {
    for (const auto& cell : arrangement_cells(facet, hyperplanes, false)) {
      RatVec s = cell.relint_point();
      Rat cell_min;
      const PieceCost* argmin = nullptr;
      for (const auto& pc : costs) {
        if (!pc.dom.contains(s)) continue;
        Rat v = eval_cost(pc, s);
        if (!argmin || v < cell_min) {
          cell_min = v;
          argmin = &pc;
        }
      }
      if (!argmin) return ExtRat::inf();  // empty fiber on a unit direction
      // The argmin piece's active functional at the sample is the cell's value.
      RatVec lin;
      Rat at_s;
      bool first = true;
      for (const auto& l : argmin->linear) {
        Rat v = dot(l, s);
        if (first || v > at_s) {
          at_s = v;
          lin = l;
          first = false;
        }
      }
      bool clipped = sgn(at_s) < 0;  // cell value is identically zero there
      for (const auto& v : cell.gens().vertices) {
        Rat val = clipped ? Rat(0) : dot(lin, v);
        if (val > best) best = val;
      }
    }
  }
  return ExtRat(best);
}

ExtRat outer_norm(const PHMap& g, NormPair norms) {
  require_exact(norms, "outer_norm");
  const std::size_t n = g.n, m = g.m;
  for (const auto& p : g.graph.pieces())
    if (has_vertical_direction(p, n)) return ExtRat::inf();
  Polyhedron band = unit_ball(norms.domain, n).product(Polyhedron::whole_space(m));
  Rat best = 0;
  for (const auto& p : g.graph.pieces()) {
    Polyhedron q = p.intersect(band);
    assert(q.is_bounded());
    for (const auto& v : q.gens().vertices) {
      Rat val = norm_value(norms.codomain, RatVec(v.begin() + n, v.end()));
      if (val > best) best = val;
    }
  }
  return ExtRat(best);
}

PointAnalysis analyze_point(const PwpMap& s, const RatVec& x, const RatVec& y) {
  PointAnalysis pa;
  pa.n = s.n;
  pa.m = s.m;
  pa.x = x;
  pa.y = y;
  pa.raw = limit_cones(s, x, y, false);
  pa.convexified = convexify(pa.raw);
  pa.tangent = tangent_cone(s.graph, stack(x, y));
  Polyhedron reg = Polyhedron::whole_space(s.n + s.m);
  for (const auto& piece : pa.tangent.pieces()) reg = reg.intersect(piece.polar());
  pa.regular_normal = std::move(reg);
  std::vector<Polyhedron> polars;
  for (const auto& c : pa.convexified.cones) polars.push_back(c.pieces().front().polar());
  pa.limiting_normal = PolyUnion(s.n + s.m, std::move(polars));
  pa.regular = union_contains(PolyUnion::single(pa.regular_normal), pa.limiting_normal) &&
               union_contains(pa.limiting_normal, PolyUnion::single(pa.regular_normal));
  return pa;
}

ExtRat lip_via_tangents(const PointAnalysis& pa, NormPair norms, bool convexified) {
  require_exact(norms, "lip_via_tangents");
  const LimitConeSet& lc = convexified ? pa.convexified : pa.raw;
  ExtRat best(Rat(0));
  for (const auto& cone : lc.cones) {
    best = ext_max(best, inner_norm(PHMap(pa.n, pa.m, cone), norms));
    if (best.is_inf()) break;
  }
  return best;
}

ExtRat lip_via_tangents(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms,
                        bool convexified) {
  require_exact(norms, "lip_via_tangents");
  LimitConeSet lc = limit_cones(s, x, y, convexified);
  ExtRat best(Rat(0));
  for (const auto& cone : lc.cones) {
    best = ext_max(best, inner_norm(PHMap(s.n, s.m, cone), norms));
    if (best.is_inf()) break;
  }
  return best;
}

namespace {

// sup over the cone piece of ||u||_du / ||v||_dv; infinite when the piece has
// a direction with v = 0, u != 0 (which need not be extreme).
ExtRat piece_normal_ratio(const Polyhedron& piece, std::size_t n, std::size_t m, NormKind du,
                          NormKind dv, RatVec* witness) {
  std::vector<Ineq> vzero;
  for (std::size_t k = 0; k < m; ++k) {
    RatVec a = zero_vec(n + m);
    a[n + k] = 1;
    vzero.push_back(Ineq{a, Rat(0)});
    a[n + k] = -1;
    vzero.push_back(Ineq{a, Rat(0)});
  }
  Polyhedron bad = piece.intersect(Polyhedron::from_ineqs(n + m, vzero));
  for (const auto& r : bad.gens().rays) {
    if (!is_zero(RatVec(r.begin(), r.begin() + n))) {
      if (witness) *witness = r;
      return ExtRat::inf();
    }
  }
  for (const auto& l : bad.gens().lines) {
    if (!is_zero(RatVec(l.begin(), l.begin() + n))) {
      if (witness) *witness = l;
      return ExtRat::inf();
    }
  }

  // No v = 0 escape directions: slicing at ||v|| <= 1 gives a polytope.
  std::vector<Ineq> iq;
  Polyhedron dv_dual_ball = unit_ball(dual_kind(dv), m);
  for (const auto& vtx : dv_dual_ball.gens().vertices) {
    RatVec a = zero_vec(n + m);
    for (std::size_t k = 0; k < m; ++k) a[n + k] = vtx[k];
    iq.push_back(Ineq{a, Rat(1)});
  }
  Polyhedron slab = piece.intersect(Polyhedron::from_ineqs(n + m, std::move(iq)));
  assert(slab.is_bounded());
  Rat best = 0;
  RatVec arg;
  for (const auto& v : slab.gens().vertices) {
    Rat val = norm_value(du, RatVec(v.begin(), v.begin() + n));
    if (val > best) {
      best = val;
      arg = v;
    }
  }
  if (witness && !arg.empty()) *witness = arg;
  return ExtRat(best);
}

}  // namespace

ExtRat lip_via_normals(const PointAnalysis& pa, NormPair norms) {
  require_exact(norms, "lip_via_normals");
  NormKind du = dual_kind(norms.domain), dv = dual_kind(norms.codomain);
  ExtRat best(Rat(0));
  for (const auto& piece : pa.limiting_normal.pieces()) {
    best = ext_max(best, piece_normal_ratio(piece, pa.n, pa.m, du, dv, nullptr));
    if (best.is_inf()) break;
  }
  return best;
}

ExtRat lip_via_normals(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms) {
  require_exact(norms, "lip_via_normals");
  PolyUnion n = limiting_normal_cone(s, x, y);
  NormKind du = dual_kind(norms.domain), dv = dual_kind(norms.codomain);
  ExtRat best(Rat(0));
  for (const auto& piece : n.pieces()) {
    best = ext_max(best, piece_normal_ratio(piece, s.n, s.m, du, dv, nullptr));
    if (best.is_inf()) break;
  }
  return best;
}

bool is_graphically_regular(const PwpMap& s, const RatVec& x, const RatVec& y) {
  Polyhedron reg = regular_normal_cone(s, x, y);
  PolyUnion lim = limiting_normal_cone(s, x, y);
  return union_contains(PolyUnion::single(reg), lim) &&
         union_contains(lim, PolyUnion::single(reg));
}

std::string route_name(Route r) {
  switch (r) {
    case Route::PrimalTangent:
      return "primal-tangent";
    case Route::PrimalConvexified:
      return "primal-convexified";
    case Route::DualNormal:
      return "dual-normal";
    case Route::ClarkeFastpath:
      return "clarke-fastpath";
    default:
      return "auto";
  }
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    default:
      return "not-applicable";
  }
}

namespace {

// G(p) n [-H(-p)] nonempty for all p != 0, decided as coverage of p-space by
// the projections of the pieces of gph(G) n sigma(gph(H)).
struct PrimalCheck {
  bool covered = true;
  RatVec witness;
};

PrimalCheck primal_member_check(const PolyUnion& gph_g, const PolyUnion& sigma_h, std::size_t n) {
  std::vector<Polyhedron> pieces;
  for (const auto& a : gph_g.pieces())
    for (const auto& b : sigma_h.pieces()) {
      Polyhedron c = a.intersect(b);
      if (!c.is_empty()) pieces.push_back(std::move(c));
    }
  CoverageResult cr = coverage(pieces, Polyhedron::whole_space(n));
  if (cr.covered) return {true, {}};
  return {false, *cr.witness};
}

// A normal pair in the given piece violating Theorem-style condition (a) at p:
// max_{y in H(p)} <u,p> + <v,y> < 0.
std::optional<std::pair<RatVec, RatVec>> violating_normal(const Polyhedron& piece,
                                                          const Prefan& h, const RatVec& p) {
  PolyUnion fib = h.fiber(p);
  std::vector<Ineq> iq;
  for (const auto& fp : fib.pieces()) {
    for (const auto& yv : fp.gens().vertices) {
      RatVec a = p;
      a.insert(a.end(), yv.begin(), yv.end());
      iq.push_back(Ineq{a, Rat(0)});
    }
  }
  Polyhedron w = piece.intersect(Polyhedron::from_ineqs(h.n + h.m, std::move(iq)));
  if (w.is_empty()) return std::nullopt;
  RatVec r = w.relint_point();
  if (is_zero(r)) return std::nullopt;
  return std::make_pair(RatVec(r.begin(), r.begin() + h.n), RatVec(r.begin() + h.n, r.end()));
}

}  // namespace

Certificate certify_prefan(const PointAnalysis& pa, const Prefan& h, Route route) {
  Certificate cert;
  cert.query = QueryKind::Certify;
  cert.norms = h.norms;
  cert.route = route;
  if (h.n != pa.n || h.m != pa.m) throw DimensionMismatch("prefan vs map dimensions");

  PrefanReport rep = validate_prefan(h);
  if (!rep.ok) {
    cert.verdict = Verdict::NotApplicable;
    cert.witness_direction = rep.witness_p;
    cert.notes.push_back("prefan validation failed: " + rep.describe());
    return cert;
  }

  PolyUnion sigma_h = h.graph_union().negate();

  auto run_primal = [&](const LimitConeSet& lc, Route tag) {
    cert.notes.push_back(route_name(tag) + ": " + std::to_string(lc.cones.size()) +
                         " limit cones");
    for (std::size_t i = 0; i < lc.cones.size(); ++i) {
      PrimalCheck pc = primal_member_check(lc.cones[i], sigma_h, pa.n);
      if (!pc.covered) {
        cert.verdict = Verdict::Fails;
        cert.route = tag;
        cert.witness_direction = pc.witness;
        cert.notes.push_back("uncovered direction p = " + vec_str(pc.witness) +
                             " in limit cone #" + std::to_string(i));
        return false;
      }
    }
    cert.route = tag;
    return true;
  };

  auto run_fastpath = [&]() {
    cert.notes.push_back("clarke-fastpath: graph regular, single tangent cone check");
    PrimalCheck pc = primal_member_check(pa.tangent, sigma_h, pa.n);
    cert.route = Route::ClarkeFastpath;
    if (!pc.covered) {
      cert.verdict = Verdict::Fails;
      cert.witness_direction = pc.witness;
      cert.notes.push_back("uncovered direction p = " + vec_str(pc.witness));
      return false;
    }
    return true;
  };

  auto run_dual = [&]() {
    cert.notes.push_back("dual-normal: " + std::to_string(pa.limiting_normal.pieces().size()) +
                         " normal cone pieces");
    for (std::size_t i = 0; i < pa.limiting_normal.pieces().size(); ++i) {
      const Polyhedron& piece = pa.limiting_normal.pieces()[i];
      // For all (u,v) in the piece and p != 0 there must exist y in H(p) with
      // <u,p> + <v,y> >= 0, i.e. gph(H) n -piece^0 must cover every direction.
      PolyUnion half = PolyUnion::single(piece.polar().negate());
      PrimalCheck pc = primal_member_check(h.graph_union(), half, pa.n);
      if (!pc.covered) {
        cert.verdict = Verdict::Fails;
        cert.route = Route::DualNormal;
        cert.witness_direction = pc.witness;
        cert.witness_normal = violating_normal(piece, h, pc.witness);
        cert.notes.push_back("normal piece #" + std::to_string(i) +
                             " rejects direction p = " + vec_str(pc.witness));
        return false;
      }
    }
    cert.route = Route::DualNormal;
    return true;
  };

  switch (route) {
    case Route::PrimalTangent:
      run_primal(pa.raw, Route::PrimalTangent);
      break;
    case Route::PrimalConvexified:
      run_primal(pa.convexified, Route::PrimalConvexified);
      break;
    case Route::DualNormal:
      run_dual();
      break;
    case Route::ClarkeFastpath:
      run_fastpath();
      break;
    case Route::Auto: {
      if (pa.regular) {
        run_fastpath();
      } else {
        Certificate primal = certify_prefan(pa, h, Route::PrimalTangent);
        Certificate dual = certify_prefan(pa, h, Route::DualNormal);
        if (primal.holds() != dual.holds())
          throw Error("internal: primal and dual certification disagree");
        cert = primal;
        cert.notes.insert(cert.notes.end(), dual.notes.begin(), dual.notes.end());
        if (!cert.witness_normal.has_value()) cert.witness_normal = dual.witness_normal;
        cert.notes.push_back("auto: primal and dual routes agree");
        return cert;
      }
      break;
    }
  }
  if (cert.verdict == Verdict::Holds)
    cert.notes.push_back("all coverage checks passed; verdict holds");
  return cert;
}

Certificate certify_prefan(const PwpMap& s, const RatVec& x, const RatVec& y, const Prefan& h,
                           Route route) {
  if (x.size() != s.n || y.size() != s.m) throw DimensionMismatch("base point arity");
  if (!s.on_graph(x, y)) throw PointNotInSet("certify_prefan base point");
  return certify_prefan(analyze_point(s, x, y), h, route);
}

Certificate lip_certificate(const PointAnalysis& pa, NormPair norms) {
  Certificate cert;
  cert.query = QueryKind::Lip;
  cert.norms = norms;
  cert.route = Route::DualNormal;
  NormKind du = dual_kind(norms.domain), dv = dual_kind(norms.codomain);
  cert.notes.push_back("normal-space norms: u in " + norm_name(du) + ", v in " + norm_name(dv));
  ExtRat best(Rat(0));
  for (const auto& piece : pa.limiting_normal.pieces()) {
    RatVec witness;
    ExtRat val = piece_normal_ratio(piece, pa.n, pa.m, du, dv, &witness);
    if (best < val) {
      best = val;
      if (!witness.empty())
        cert.witness_normal = std::make_pair(RatVec(witness.begin(), witness.begin() + pa.n),
                                             RatVec(witness.begin() + pa.n, witness.end()));
    }
    if (best.is_inf()) break;
  }
  cert.modulus = best;
  cert.verdict = best.is_inf() ? Verdict::Fails : Verdict::Holds;
  if (best.is_inf()) cert.notes.push_back("graphical modulus infinite: Aubin property fails");
  return cert;
}

Certificate lip_certificate(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms) {
  return lip_certificate(analyze_point(s, x, y), norms);
}

}  // namespace varkit
