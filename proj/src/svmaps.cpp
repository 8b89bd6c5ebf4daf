#include "varkit/svmaps.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace varkit {
namespace {

std::vector<std::size_t> iota_indices(std::size_t from, std::size_t count) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = from + i;
  return idx;
}

std::size_t affine_dim(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  RatMat span;
  const auto& g = p.gens();
  const RatVec& v0 = g.vertices.front();
  for (const auto& v : g.vertices) span.push_back(vsub(v, v0));
  for (const auto& r : g.rays) span.push_back(r);
  for (const auto& l : g.lines) span.push_back(l);
  return rank(std::move(span));
}

// Fiberwise sum over a shared domain cell: {(w, q + z) : (w,q) in c, (w,z) in m}.
Polyhedron fiberwise_sum(const Polyhedron& c, const Polyhedron& m, std::size_t n,
                         std::size_t fib_dim) {
  std::vector<Ineq> iq;
  for (const auto& i : c.ineqs()) {
    RatVec a = i.a;
    a.resize(n + 2 * fib_dim, Rat(0));
    iq.push_back(Ineq{a, i.b});
  }
  for (const auto& i : m.ineqs()) {
    RatVec a(n + 2 * fib_dim, Rat(0));
    for (std::size_t k = 0; k < n; ++k) a[k] = i.a[k];
    for (std::size_t k = 0; k < fib_dim; ++k) a[n + fib_dim + k] = i.a[n + k];
    iq.push_back(Ineq{a, i.b});
  }
  Polyhedron lifted = Polyhedron::from_ineqs(n + 2 * fib_dim, std::move(iq));
  RatMat map(n + fib_dim, zero_vec(n + 2 * fib_dim));
  for (std::size_t k = 0; k < n; ++k) map[k][k] = 1;
  for (std::size_t k = 0; k < fib_dim; ++k) {
    map[n + k][n + k] = 1;
    map[n + k][n + fib_dim + k] = 1;
  }
  return lifted.linear_image(map);
}

}  // namespace

bool norm_exact(NormKind k) { return k != NormKind::TwoApprox; }

NormKind dual_kind(NormKind k) {
  switch (k) {
    case NormKind::Inf:
      return NormKind::One;
    case NormKind::One:
      return NormKind::Inf;
    default:
      return NormKind::TwoApprox;
  }
}

Rat norm_value(NormKind k, const RatVec& v) {
  if (!norm_exact(k)) throw NonPolyhedralNorm("norm_value");
  Rat r = 0;
  if (k == NormKind::Inf) {
    for (const auto& c : v) r = std::max(r, rat_abs(c));
  } else {
    for (const auto& c : v) r += rat_abs(c);
  }
  return r;
}

Polyhedron unit_ball(NormKind k, std::size_t dim) {
  if (!norm_exact(k)) throw NonPolyhedralNorm("unit_ball");
  std::vector<Ineq> iq;
  if (k == NormKind::Inf) {
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec a = zero_vec(dim);
      a[i] = 1;
      iq.push_back(Ineq{a, Rat(1)});
      a[i] = -1;
      iq.push_back(Ineq{a, Rat(1)});
    }
  } else {
    for (std::size_t mask = 0; mask < (1u << dim); ++mask) {
      RatVec a(dim);
      for (std::size_t i = 0; i < dim; ++i) a[i] = (mask >> i) & 1 ? Rat(-1) : Rat(1);
      iq.push_back(Ineq{a, Rat(1)});
    }
  }
  return Polyhedron::from_ineqs(dim, std::move(iq));
}

std::vector<Polyhedron> sphere_facets(NormKind k, std::size_t dim) {
  Polyhedron ball = unit_ball(k, dim);
  std::vector<Polyhedron> facets;
  if (k == NormKind::Inf) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (int s : {1, -1}) {
        RatVec a = zero_vec(dim);
        a[i] = s;
        facets.push_back(ball.intersect_hyperplane(Ineq{a, Rat(1)}));
      }
    }
  } else {
    for (std::size_t mask = 0; mask < (1u << dim); ++mask) {
      RatVec a(dim);
      for (std::size_t i = 0; i < dim; ++i) a[i] = (mask >> i) & 1 ? Rat(-1) : Rat(1);
      facets.push_back(ball.intersect_hyperplane(Ineq{a, Rat(1)}));
    }
  }
  return facets;
}

std::vector<std::pair<Polyhedron, RatVec>> norm_linearity_cells(NormKind k, std::size_t dim) {
  if (!norm_exact(k)) throw NonPolyhedralNorm("norm_linearity_cells");
  std::vector<std::pair<Polyhedron, RatVec>> cells;
  if (k == NormKind::Inf) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (int s : {1, -1}) {
        std::vector<Ineq> iq;
        for (std::size_t j = 0; j < dim; ++j) {
          RatVec a = zero_vec(dim);
          a[j] = 1;
          a[i] += Rat(-s);
          if (!is_zero(a)) iq.push_back(Ineq{a, Rat(0)});
          a = zero_vec(dim);
          a[j] = -1;
          a[i] += Rat(-s);
          if (!is_zero(a)) iq.push_back(Ineq{a, Rat(0)});
        }
        RatVec lambda = zero_vec(dim);
        lambda[i] = s;
        cells.emplace_back(Polyhedron::from_ineqs(dim, std::move(iq)), lambda);
      }
    }
  } else {
    for (std::size_t mask = 0; mask < (1u << dim); ++mask) {
      RatVec sign(dim);
      std::vector<Ineq> iq;
      for (std::size_t i = 0; i < dim; ++i) {
        sign[i] = (mask >> i) & 1 ? Rat(-1) : Rat(1);
        RatVec a = zero_vec(dim);
        a[i] = -sign[i];
        iq.push_back(Ineq{a, Rat(0)});
      }
      cells.emplace_back(Polyhedron::from_ineqs(dim, std::move(iq)), sign);
    }
  }
  return cells;
}

std::string norm_name(NormKind k) {
  switch (k) {
    case NormKind::Inf:
      return "inf";
    case NormKind::One:
      return "one";
    default:
      return "two-approx";
  }
}

PwpMap::PwpMap(std::size_t n_, std::size_t m_, PolyUnion g) : n(n_), m(m_), graph(std::move(g)) {
  if (graph.dim() != n + m) throw DimensionMismatch("PwpMap graph dimension");
}

bool PwpMap::on_graph(const RatVec& x, const RatVec& y) const {
  RatVec xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  return graph.contains(xy);
}

PolyUnion PwpMap::fiber(const RatVec& x) const {
  if (x.size() != n) throw DimensionMismatch("fiber argument");
  std::vector<Polyhedron> slices;
  for (const auto& p : graph.pieces()) slices.push_back(p.slice_prefix(x));
  return PolyUnion(m, std::move(slices));
}

PwpMap PwpMap::invert() const {
  RatMat swap(n + m, zero_vec(n + m));
  for (std::size_t i = 0; i < m; ++i) swap[i][n + i] = 1;
  for (std::size_t i = 0; i < n; ++i) swap[m + i][i] = 1;
  return PwpMap(m, n, graph.linear_image(swap));
}

PHMap::PHMap(std::size_t n_, std::size_t m_, PolyUnion g) : n(n_), m(m_), graph(std::move(g)) {
  if (graph.dim() != n + m) throw DimensionMismatch("PHMap graph dimension");
  for (const auto& p : graph.pieces())
    if (!p.is_cone()) throw NotACone("PHMap graph piece");
}

PolyUnion PHMap::fiber(const RatVec& w) const {
  if (w.size() != n) throw DimensionMismatch("fiber argument");
  std::vector<Polyhedron> slices;
  for (const auto& p : graph.pieces()) slices.push_back(p.slice_prefix(w));
  return PolyUnion(m, std::move(slices));
}

Prefan::Prefan(std::size_t n_, std::size_t m_, std::vector<PrefanCell> cells_, NormPair norms_)
    : n(n_), m(m_), cells(std::move(cells_)), norms(norms_) {
  for (const auto& c : cells) {
    if (c.domain.dim() != n || c.graph.dim() != n + m)
      throw DimensionMismatch("prefan cell dimensions");
  }
}

PolyUnion Prefan::graph_union() const {
  std::vector<Polyhedron> ps;
  for (const auto& c : cells) ps.push_back(c.graph);
  return PolyUnion(n + m, std::move(ps));
}

PHMap Prefan::as_phmap() const { return PHMap(n, m, graph_union()); }

PolyUnion Prefan::fiber(const RatVec& p) const {
  std::vector<Polyhedron> slices;
  for (const auto& c : cells)
    if (c.domain.contains(p)) slices.push_back(c.graph.slice_prefix(p));
  return PolyUnion(m, std::move(slices));
}

std::string PrefanReport::describe() const {
  if (ok) return "prefan axioms hold";
  std::ostringstream os;
  os << axiom;
  if (witness_p.has_value()) {
    os << " at p = (";
    for (std::size_t i = 0; i < witness_p->size(); ++i)
      os << (i ? "," : "") << rat_str((*witness_p)[i]);
    os << ")";
  }
  return os.str();
}

PrefanReport validate_prefan(const Prefan& h) {
  PrefanReport rep;
  if (h.cells.empty()) {
    rep.ok = false;
    rep.axiom = "fan-not-covering: no cells";
    return rep;
  }
  for (const auto& c : h.cells) {
    if (c.domain.is_empty() || !c.domain.is_cone() || c.graph.is_empty() || !c.graph.is_cone()) {
      rep.ok = false;
      rep.axiom = "cell-structure: domains and graphs must be nonempty cones";
      return rep;
    }
  }

  // Unbounded fiber <=> a recession direction with zero domain component.
  for (const auto& c : h.cells) {
    if (has_vertical_direction(c.graph, h.n)) {
      rep.ok = false;
      rep.axiom = "unbounded-fiber (outer norm infinite)";
      rep.witness_p = c.domain.relint_point();
      return rep;
    }
  }

  // Each cell's graph must project exactly onto its domain cone.
  std::vector<std::size_t> keep = iota_indices(0, h.n);
  for (const auto& c : h.cells) {
    Polyhedron proj = c.graph.project(keep);
    if (!proj.equals(c.domain)) {
      rep.ok = false;
      rep.axiom = "cell-fiber-domain-mismatch (graph projection differs from cell)";
      rep.witness_p = c.domain.relint_point();
      return rep;
    }
  }

  // Full-dimensional cells must cover the domain space.
  std::vector<Polyhedron> full;
  for (const auto& c : h.cells)
    if (affine_dim(c.domain) == h.n) full.push_back(c.domain);
  auto w = covers(full, Polyhedron::whole_space(h.n));
  if (w.has_value()) {
    rep.ok = false;
    rep.axiom = "fan-not-covering";
    rep.witness_p = w;
    return rep;
  }

  // Fibers on overlapping cells must agree (nonconvex unions reported as such).
  for (std::size_t i = 0; i < h.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < h.cells.size(); ++j) {
      Polyhedron overlap = h.cells[i].domain.intersect(h.cells[j].domain);
      if (overlap.is_empty()) continue;
      RatVec p = overlap.relint_point();
      if (is_zero(p)) continue;  // the criteria quantify over p != 0
      Polyhedron gi = h.cells[i].graph.intersect(overlap.product(Polyhedron::whole_space(h.m)));
      Polyhedron gj = h.cells[j].graph.intersect(overlap.product(Polyhedron::whole_space(h.m)));
      if (gi.equals(gj)) continue;
      Polyhedron fi = h.cells[i].graph.slice_prefix(p);
      Polyhedron fj = h.cells[j].graph.slice_prefix(p);
      Generators hull_gens;
      for (const auto& f : {fi, fj}) {
        const auto& g = f.gens();
        hull_gens.vertices.insert(hull_gens.vertices.end(), g.vertices.begin(), g.vertices.end());
        hull_gens.rays.insert(hull_gens.rays.end(), g.rays.begin(), g.rays.end());
        hull_gens.lines.insert(hull_gens.lines.end(), g.lines.begin(), g.lines.end());
      }
      Polyhedron hull = Polyhedron::from_generators(h.m, std::move(hull_gens));
      PolyUnion fiber_union(h.m, {fi, fj});
      if (!union_contains(fiber_union, PolyUnion::single(hull))) {
        rep.ok = false;
        rep.axiom = "fiber-not-convex";
        rep.witness_p = p;
        return rep;
      }
      rep.ok = false;
      rep.axiom = "cell-overlap-mismatch (fibers differ across cells)";
      rep.witness_p = p;
      return rep;
    }
  }
  return rep;
}

namespace {

// {(w, z) : w in cell, ||z||_ball <= scale * lambda.w} for a linearity cone of
// the domain norm.
Polyhedron cone_ball_graph(const Polyhedron& cell, const RatVec& lambda, const Rat& scale,
                           NormKind ball_kind, std::size_t n, std::size_t m) {
  std::vector<Ineq> iq;
  for (const auto& i : cell.ineqs()) {
    RatVec a = i.a;
    a.resize(n + m, Rat(0));
    iq.push_back(Ineq{a, i.b});
  }
  Polyhedron ball = unit_ball(ball_kind, m);
  for (const auto& f : ball.ineqs()) {
    RatVec a(n + m);
    for (std::size_t k = 0; k < n; ++k) a[k] = -scale * lambda[k] * f.b;
    for (std::size_t k = 0; k < m; ++k) a[n + k] = f.a[k];
    iq.push_back(Ineq{a, Rat(0)});
  }
  return Polyhedron::from_ineqs(n + m, std::move(iq));
}

}  // namespace

Prefan inflate(const Prefan& h, const Rat& delta) {
  if (!norm_exact(h.norms.domain) || !norm_exact(h.norms.codomain))
    throw NonPolyhedralNorm("inflate requires polyhedral norms");
  if (sgn(delta) < 0) throw Error("inflate: delta must be nonnegative");
  std::vector<PrefanCell> cells;
  for (const auto& cell : h.cells) {
    for (const auto& [ncone, lambda] : norm_linearity_cells(h.norms.domain, h.n)) {
      Polyhedron dom = cell.domain.intersect(ncone);
      if (dom.is_empty()) continue;
      Polyhedron graph = cell.graph.intersect(dom.product(Polyhedron::whole_space(h.m)));
      if (graph.is_empty()) continue;
      Polyhedron ball_part = cone_ball_graph(dom, lambda, delta, h.norms.codomain, h.n, h.m);
      cells.push_back(PrefanCell{dom, fiberwise_sum(graph, ball_part, h.n, h.m)});
    }
  }
  return Prefan(h.n, h.m, std::move(cells), h.norms);
}

Prefan ball_prefan(const Rat& kappa, std::size_t n, std::size_t m, NormPair norms) {
  if (!norm_exact(norms.domain) || !norm_exact(norms.codomain))
    throw NonPolyhedralNorm("ball_prefan requires polyhedral norms");
  if (sgn(kappa) < 0) throw Error("ball_prefan: kappa must be nonnegative");
  std::vector<PrefanCell> cells;
  for (const auto& [ncone, lambda] : norm_linearity_cells(norms.domain, n)) {
    cells.push_back(PrefanCell{ncone, cone_ball_graph(ncone, lambda, kappa, norms.codomain, n, m)});
  }
  return Prefan(n, m, std::move(cells), norms);
}

namespace fixtures {
namespace {

Ineq iq2(long ax, long ay, long b) { return Ineq{{rat(ax), rat(ay)}, rat(b)}; }

Polyhedron halfplanes(std::vector<Ineq> iq) { return Polyhedron::from_ineqs(2, std::move(iq)); }

}  // namespace

PwpMap s1() {
  // y >= |x| and y <= -|x| as four sector pieces.
  std::vector<Polyhedron> ps = {
      halfplanes({iq2(-1, 0, 0), iq2(1, -1, 0)}),   // x >= 0, y >= x
      halfplanes({iq2(1, 0, 0), iq2(-1, -1, 0)}),   // x <= 0, y >= -x
      halfplanes({iq2(-1, 0, 0), iq2(1, 1, 0)}),    // x >= 0, y <= -x
      halfplanes({iq2(1, 0, 0), iq2(-1, 1, 0)}),    // x <= 0, y <= x
  };
  return PwpMap(1, 1, PolyUnion(2, std::move(ps)));
}

PwpMap s2() {
  std::vector<Polyhedron> ps = {
      halfplanes({iq2(1, -1, 0), iq2(-1, 1, 0)}),   // y = x
      halfplanes({iq2(1, 1, 0), iq2(-1, -1, 0)}),   // y = -x
  };
  return PwpMap(1, 1, PolyUnion(2, std::move(ps)));
}

PwpMap s3() {
  std::vector<Polyhedron> ps = {
      halfplanes({iq2(1, 0, 0), iq2(1, -1, 0), iq2(-1, 1, 0)}),    // x <= 0, y = x
      halfplanes({iq2(1, 0, 0), iq2(1, 1, 0), iq2(-1, -1, 0)}),    // x <= 0, y = -x
      halfplanes({iq2(-1, 0, 0), iq2(-1, 1, 0), iq2(-1, -1, 0)}),  // x >= 0, -x <= y <= x
  };
  return PwpMap(1, 1, PolyUnion(2, std::move(ps)));
}

PwpMap halfline_map() {
  return PwpMap(1, 1, PolyUnion(2, {halfplanes({iq2(-1, 1, 0)})}));  // y <= x
}

PwpMap constant_interval() {
  return PwpMap(1, 1, PolyUnion(2, {halfplanes({iq2(0, -1, 0), iq2(0, 1, 1)})}));  // 0 <= y <= 1
}

PolyUnion g_graph(int i) {
  switch (i) {
    case 1:
      return PolyUnion(2, {halfplanes({iq2(1, -1, 0)})});  // q >= p
    case 2:
      return PolyUnion(2, {halfplanes({iq2(-1, 1, 0)})});  // q <= p
    case 3:
      return PolyUnion(2, {halfplanes({iq2(-1, -1, 0)})});  // q >= -p
    case 4:
      return PolyUnion(2, {halfplanes({iq2(1, 1, 0)})});  // q <= -p
    case 5:
      return PolyUnion(2, {Polyhedron::whole_space(2)});
    case 6:
      return s1().graph;
    default:
      throw Error("g_graph index out of range");
  }
}

Prefan prefan_abs() {
  PrefanCell right{Polyhedron::from_ineqs(1, {Ineq{{rat(-1)}, rat(0)}}),
                   halfplanes({iq2(-1, 0, 0), iq2(-1, 1, 0), iq2(-1, -1, 0)})};
  PrefanCell left{Polyhedron::from_ineqs(1, {Ineq{{rat(1)}, rat(0)}}),
                  halfplanes({iq2(1, 0, 0), iq2(1, 1, 0), iq2(1, -1, 0)})};
  return Prefan(1, 1, {right, left});
}

Prefan prefan_half_abs() {
  // H(p) = [-|p|/2, |p|]: right cell -p/2 <= q <= p, left cell p/2 <= ... mirrored.
  PrefanCell right{Polyhedron::from_ineqs(1, {Ineq{{rat(-1)}, rat(0)}}),
                   halfplanes({iq2(-1, 0, 0), iq2(-1, 1, 0), iq2(-1, -2, 0)})};
  PrefanCell left{Polyhedron::from_ineqs(1, {Ineq{{rat(1)}, rat(0)}}),
                  halfplanes({iq2(1, 0, 0), iq2(1, 1, 0), iq2(1, -2, 0)})};
  return Prefan(1, 1, {right, left});
}

Prefan prefan_identity() {
  PrefanCell all{Polyhedron::whole_space(1), halfplanes({iq2(1, -1, 0), iq2(-1, 1, 0)})};
  return Prefan(1, 1, {all});
}

Prefan prefan_max0() {
  PrefanCell right{Polyhedron::from_ineqs(1, {Ineq{{rat(-1)}, rat(0)}}),
                   halfplanes({iq2(-1, 0, 0), iq2(1, -1, 0), iq2(-1, 1, 0)})};
  PrefanCell left{Polyhedron::from_ineqs(1, {Ineq{{rat(1)}, rat(0)}}),
                  halfplanes({iq2(1, 0, 0), iq2(0, 1, 0), iq2(0, -1, 0)})};
  return Prefan(1, 1, {right, left});
}

Prefan prefan_zero() {
  PrefanCell all{Polyhedron::whole_space(1), halfplanes({iq2(0, 1, 0), iq2(0, -1, 0)})};
  return Prefan(1, 1, {all});
}

PHMap phmap_s2() { return PHMap(1, 1, s2().graph); }

}  // namespace fixtures
}  // namespace varkit
