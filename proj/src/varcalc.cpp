#include "varkit/varcalc.hpp"

#include <cassert>

namespace varkit {
namespace {

RatVec stack(const RatVec& x, const RatVec& y) {
  RatVec xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  return xy;
}

void require_on_graph(const PwpMap& s, const RatVec& x, const RatVec& y) {
  if (x.size() != s.n || y.size() != s.m) throw DimensionMismatch("graph point arity");
  if (!s.on_graph(x, y)) throw PointNotInSet("point not on graph");
}

bool same_set(const PolyUnion& a, const PolyUnion& b) {
  return union_contains(a, b) && union_contains(b, a);
}

}  // namespace

PolyUnion tangent_cone(const PolyUnion& u, const RatVec& x) {
  if (!u.contains(x)) throw PointNotInSet("tangent_cone");
  std::vector<Polyhedron> cones;
  for (const auto& p : u.pieces()) {
    if (!p.contains(x)) continue;
    std::vector<Ineq> iq;
    for (auto i : p.active_indices(x)) iq.push_back(Ineq{p.ineqs()[i].a, Rat(0)});
    cones.push_back(Polyhedron::from_ineqs(u.dim(), std::move(iq)));
  }
  return PolyUnion(u.dim(), std::move(cones));
}

Polyhedron conic_hull_of_union(const PolyUnion& u) {
  std::vector<RatVec> rays;
  std::vector<RatVec> lines;
  for (const auto& p : u.pieces()) {
    const auto& g = p.gens();
    for (const auto& v : g.vertices)
      if (!is_zero(v)) rays.push_back(v);
    rays.insert(rays.end(), g.rays.begin(), g.rays.end());
    lines.insert(lines.end(), g.lines.begin(), g.lines.end());
  }
  return Polyhedron::cone_from_rays(u.dim(), std::move(rays), std::move(lines));
}

PHMap graphical_derivative(const PwpMap& s, const RatVec& x, const RatVec& y) {
  require_on_graph(s, x, y);
  return PHMap(s.n, s.m, tangent_cone(s.graph, stack(x, y)));
}

PHMap convexified_derivative(const PwpMap& s, const RatVec& x, const RatVec& y) {
  require_on_graph(s, x, y);
  PolyUnion t = tangent_cone(s.graph, stack(x, y));
  return PHMap(s.n, s.m, PolyUnion::single(conic_hull_of_union(t)));
}

LimitConeSet convexify(const LimitConeSet& raw) {
  LimitConeSet out;
  out.base = raw.base;
  out.convexified = true;
  for (const auto& c : raw.cones) {
    Polyhedron hull = conic_hull_of_union(c);
    bool dup = false;
    for (const auto& k : out.cones) {
      if (k.pieces().front().equals(hull)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.cones.push_back(PolyUnion::single(std::move(hull)));
  }
  return out;
}

LimitConeSet limit_cones(const PwpMap& s, const RatVec& x, const RatVec& y, bool convexified) {
  require_on_graph(s, x, y);
  LimitConeSet out;
  out.base = stack(x, y);
  out.convexified = false;
  std::vector<std::string> keys;
  for (const auto& z : local_tangent_samples(s.graph, out.base)) {
    PolyUnion t = tangent_cone(s.graph, z);
    std::string key = t.key();
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    bool dup = false;
    for (const auto& c : out.cones) {
      // Canonical keys differ; equality can still hold across decompositions.
      if (same_set(c, t)) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      keys.push_back(std::move(key));
      out.cones.push_back(std::move(t));
    }
  }
  return convexified ? convexify(out) : out;
}

Polyhedron regular_normal_cone(const PwpMap& s, const RatVec& x, const RatVec& y) {
  require_on_graph(s, x, y);
  PolyUnion t = tangent_cone(s.graph, stack(x, y));
  Polyhedron n = Polyhedron::whole_space(s.n + s.m);
  for (const auto& p : t.pieces()) n = n.intersect(p.polar());
  return n;
}

PolyUnion limiting_normal_cone(const PwpMap& s, const RatVec& x, const RatVec& y) {
  LimitConeSet lc = limit_cones(s, x, y, true);
  std::vector<Polyhedron> polars;
  for (const auto& c : lc.cones) {
    assert(c.pieces().size() == 1);
    polars.push_back(c.pieces().front().polar());
  }
  return PolyUnion(s.n + s.m, std::move(polars));
}

PHMap coderivative(const PwpMap& s, const RatVec& x, const RatVec& y) {
  PolyUnion n = limiting_normal_cone(s, x, y);
  // (a, b) in N  ->  (u, v) = (-b, a)
  RatMat map(s.m + s.n, zero_vec(s.n + s.m));
  for (std::size_t i = 0; i < s.m; ++i) map[i][s.n + i] = -1;
  for (std::size_t i = 0; i < s.n; ++i) map[s.m + i][i] = 1;
  return PHMap(s.m, s.n, n.linear_image(map));
}

PHMap convexified_coderivative(const PwpMap& s, const RatVec& x, const RatVec& y) {
  PHMap d = coderivative(s, x, y);
  const std::size_t un = d.n, vn = d.m;
  std::vector<std::size_t> keep(un);
  for (std::size_t i = 0; i < un; ++i) keep[i] = i;

  std::vector<Polyhedron> proj;
  std::vector<Ineq> hyperplanes;
  for (const auto& p : d.graph.pieces()) {
    Polyhedron q = p.project(keep);
    for (const auto& iq : q.ineqs()) hyperplanes.push_back(iq);
    proj.push_back(std::move(q));
  }
  auto cells = arrangement_cells(Polyhedron::whole_space(un), hyperplanes, false);

  std::vector<Polyhedron> hull_pieces;
  for (const auto& cell : cells) {
    Polyhedron strip = cell.product(Polyhedron::whole_space(vn));
    std::vector<Polyhedron> restricted;
    for (const auto& p : d.graph.pieces()) {
      Polyhedron r = p.intersect(strip);
      if (!r.is_empty()) restricted.push_back(std::move(r));
    }
    if (restricted.empty()) continue;
    hull_pieces.push_back(conic_hull_of_union(PolyUnion(un + vn, std::move(restricted))));
  }
  return PHMap(un, vn, PolyUnion(un + vn, std::move(hull_pieces)));
}

}  // namespace varkit
