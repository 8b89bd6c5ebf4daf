#include "varkit/polyunion.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace varkit {
namespace {

// Hyperplanes a.x = b are deduplicated up to scaling by sign-normalizing the
// stacked vector (a, b).
RatVec hyperplane_key(const Ineq& h) {
  RatVec full = h.a;
  full.push_back(h.b);
  full = normalize_ray(full);
  for (const auto& c : full) {
    int s = sgn(c);
    if (s > 0) break;
    if (s < 0) {
      for (auto& x : full) x = -x;
      break;
    }
  }
  return full;
}

std::vector<Ineq> dedup_hyperplanes(const std::vector<Ineq>& hs) {
  std::vector<RatVec> keys;
  std::vector<Ineq> out;
  for (const auto& h : hs) {
    if (is_zero(h.a)) continue;
    RatVec k = hyperplane_key(h);
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
    keys.push_back(k);
    out.push_back(Ineq{RatVec(k.begin(), k.end() - 1), k.back()});
  }
  return out;
}

std::vector<Ineq> facet_hyperplanes(const std::vector<Polyhedron>& pieces) {
  std::vector<Ineq> hs;
  for (const auto& p : pieces)
    for (const auto& iq : p.ineqs()) hs.push_back(iq);
  return dedup_hyperplanes(hs);
}

Ineq flipped(const Ineq& h) {
  RatVec na = h.a;
  for (auto& c : na) c = -c;
  return Ineq{na, Rat(-h.b)};
}

}  // namespace

PolyUnion::PolyUnion(std::size_t dim, std::vector<Polyhedron> pieces) : dim_(dim) {
  for (auto& p : pieces) {
    if (p.dim() != dim) throw DimensionMismatch("union piece vs ambient dimension");
    if (p.is_empty()) continue;
    pieces_.push_back(std::move(p));
  }
  // Absorb pieces contained in other pieces; sort for a canonical order.
  std::vector<Polyhedron> kept;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < pieces_.size() && !absorbed; ++j) {
      if (i == j) continue;
      if (pieces_[j].contains(pieces_[i])) {
        // On mutual containment keep the lexicographically smaller index.
        absorbed = !(pieces_[i].contains(pieces_[j]) && i < j);
      }
    }
    if (!absorbed) kept.push_back(pieces_[i]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Polyhedron& a, const Polyhedron& b) { return a.key() < b.key(); });
  pieces_ = std::move(kept);
}

PolyUnion PolyUnion::single(Polyhedron p) {
  std::size_t d = p.dim();
  return PolyUnion(d, {std::move(p)});
}

bool PolyUnion::is_cone_union() const {
  for (const auto& p : pieces_)
    if (!p.is_cone()) return false;
  return true;
}

bool PolyUnion::contains(const RatVec& x) const {
  for (const auto& p : pieces_)
    if (p.contains(x)) return true;
  return false;
}

PolyUnion PolyUnion::negate() const {
  std::vector<Polyhedron> ps;
  for (const auto& p : pieces_) ps.push_back(p.negate());
  return PolyUnion(dim_, std::move(ps));
}

PolyUnion PolyUnion::linear_image(const RatMat& m) const {
  std::vector<Polyhedron> ps;
  for (const auto& p : pieces_) ps.push_back(p.linear_image(m));
  return PolyUnion(m.size(), std::move(ps));
}

std::string PolyUnion::key() const {
  std::ostringstream os;
  os << dim_ << "#";
  for (const auto& p : pieces_) os << p.key() << "§";
  return os.str();
}

namespace {

// Subdivision regions carried as homogenized double-description states, so a
// split costs one incremental constraint instead of a full reconversion.
// Generators are only materialized for surviving cells.
struct Region {
  std::vector<Ineq> rows;
  dd::State st;  // over (x0, x)
};

RatVec homogenized(const Ineq& h) {
  RatVec n;
  n.push_back(-h.b);
  for (const auto& c : h.a) n.push_back(c);
  return n;
}

bool region_empty(const Region& r) {
  for (const auto& ray : r.st.rays)
    if (sgn(ray[0]) > 0) return false;
  return true;
}

Generators region_gens(const Region& r) {
  Generators g;
  for (const auto& ray : r.st.rays) {
    if (sgn(ray[0]) > 0) {
      RatVec v(ray.begin() + 1, ray.end());
      g.vertices.push_back(vscale(1 / ray[0], v));
    } else {
      g.rays.push_back(RatVec(ray.begin() + 1, ray.end()));
    }
  }
  for (const auto& l : r.st.lines) g.lines.push_back(RatVec(l.begin() + 1, l.end()));
  return g;
}

Region root_region(const Polyhedron& target) {
  Region r;
  r.rows = target.ineqs();
  r.st = dd::init(target.dim() + 1);
  RatVec nonneg = zero_vec(target.dim() + 1);
  nonneg[0] = -1;
  dd::add_constraint(r.st, nonneg);
  for (const auto& row : r.rows) dd::add_constraint(r.st, homogenized(row));
  return r;
}

Region child_region(const Region& parent, const Ineq& h) {
  Region r;
  r.rows = parent.rows;
  r.rows.push_back(h);
  r.st = parent.st;
  dd::add_constraint(r.st, homogenized(h));
  return r;
}

// Side classification straight off the homogeneous generators: for x0 > 0
// rays the sign of hn.g matches the sign of a.x - b at the witnessed point.
std::optional<int> region_side(const Region& r, const Ineq& h) {
  RatVec hn = homogenized(h);
  bool below = false, above = false;
  for (const auto& ray : r.st.rays) {
    int s = sgn(dot(hn, ray));
    below |= s < 0;
    above |= s > 0;
  }
  for (const auto& l : r.st.lines) {
    if (sgn(dot(hn, l)) != 0) below = above = true;
  }
  if (below && above) return std::nullopt;
  if (below) return -1;
  if (above) return 1;
  return 0;
}

}  // namespace

std::vector<Polyhedron> arrangement_cells(const Polyhedron& target,
                                          const std::vector<Ineq>& hyperplanes,
                                          bool with_boundaries) {
  if (target.is_empty()) return {};
  std::vector<Region> cells = {root_region(target)};
  for (const auto& h : dedup_hyperplanes(hyperplanes)) {
    std::vector<Region> next;
    for (const auto& w : cells) {
      auto side = region_side(w, h);
      if (side.has_value()) {
        next.push_back(w);
        if (with_boundaries && *side != 0) {
          Region on = child_region(w, h);
          dd::add_constraint(on.st, homogenized(flipped(h)));
          on.rows.push_back(flipped(h));
          if (!region_empty(on)) next.push_back(std::move(on));
        }
        continue;
      }
      next.push_back(child_region(w, h));
      next.push_back(child_region(w, flipped(h)));
      if (with_boundaries) {
        Region on = child_region(next[next.size() - 2], flipped(h));
        if (!region_empty(on)) next.push_back(std::move(on));
      }
    }
    cells.clear();
    for (auto& c : next)
      if (!region_empty(c)) cells.push_back(std::move(c));
  }

  std::vector<Polyhedron> out;
  std::vector<RatVec> seen;
  for (auto& c : cells) {
    Polyhedron p = Polyhedron::from_raw(target.dim(), std::move(c.rows), region_gens(c));
    if (with_boundaries) {
      // Distinct faces have distinct relative interiors; dedup by sample.
      RatVec s = p.relint_point();
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<RatVec> covers(const std::vector<Polyhedron>& pieces, const Polyhedron& target) {
  if (target.is_empty()) return std::nullopt;
  std::vector<Polyhedron> live;
  for (const auto& p : pieces) {
    if (p.is_empty()) continue;
    if (p.dim() != target.dim()) throw DimensionMismatch("covers");
    if (p.contains(target)) return std::nullopt;
    live.push_back(p);
  }
  auto cells = arrangement_cells(target, facet_hyperplanes(live), false);
  for (const auto& cell : cells) {
    RatVec s = cell.relint_point();
    bool in = false;
    for (const auto& p : live) {
      if (p.contains(s)) {
        in = true;
        break;
      }
    }
    if (!in) return s;
  }
  return std::nullopt;
}

bool union_contains(const PolyUnion& big, const PolyUnion& small, std::optional<RatVec>* witness) {
  for (const auto& piece : small.pieces()) {
    auto w = covers(big.pieces(), piece);
    if (w.has_value()) {
      if (witness) *witness = w;
      return false;
    }
  }
  return true;
}

RelateResult relate(const PolyUnion& a, const PolyUnion& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("relate");
  RelateResult r;
  bool ab = union_contains(b, a, &r.witness_a_not_in_b);
  bool ba = union_contains(a, b, &r.witness_b_not_in_a);
  if (ab && ba) {
    r.rel = Relation::Equal;
    return r;
  }
  if (ab) {
    r.rel = Relation::SubsetAB;
    return r;
  }
  if (ba) {
    r.rel = Relation::SupersetAB;
    return r;
  }
  bool disjoint = true;
  for (const auto& pa : a.pieces()) {
    for (const auto& pb : b.pieces()) {
      if (!pa.intersect(pb).is_empty()) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) break;
  }
  r.rel = disjoint ? Relation::Disjoint : Relation::Overlap;
  return r;
}

CoverageResult coverage(const std::vector<Polyhedron>& cones, const Polyhedron& target) {
  std::size_t pdim = target.dim();
  std::vector<std::size_t> keep(pdim);
  for (std::size_t i = 0; i < pdim; ++i) keep[i] = i;
  std::vector<Polyhedron> proj;
  for (const auto& c : cones) {
    if (c.is_empty()) continue;
    if (c.dim() < pdim) throw DimensionMismatch("coverage cone vs target");
    proj.push_back(c.project(keep));
  }
  if (target.is_empty()) return {true, std::nullopt};

  auto cells = arrangement_cells(target, facet_hyperplanes(proj), false);
  for (const auto& cell : cells) {
    RatVec s = cell.relint_point();
    if (is_zero(s)) continue;  // direction quantifier excludes the origin
    bool in = false;
    for (const auto& p : proj) {
      if (p.contains(s)) {
        in = true;
        break;
      }
    }
    if (!in) return {false, s};
  }
  return {true, std::nullopt};
}

std::vector<RatVec> local_tangent_samples(const PolyUnion& u, const RatVec& x) {
  if (!u.contains(x)) throw PointNotInSet("local_tangent_samples");
  const std::size_t d = u.dim();

  std::vector<Ineq> local;  // hyperplanes through the origin, direction space
  for (const auto& p : u.pieces()) {
    if (!p.contains(x)) continue;
    for (auto i : p.active_indices(x)) local.push_back(Ineq{p.ineqs()[i].a, Rat(0)});
  }

  auto cells = arrangement_cells(Polyhedron::whole_space(d), local, true);

  // A direction scale small enough to preserve the sign of every non-tight
  // inequality over all pieces.
  auto safe_scale = [&](const RatVec& dir) {
    Rat eps = 1;
    bool bounded = false;
    for (const auto& p : u.pieces()) {
      for (const auto& iq : p.ineqs()) {
        Rat slack = iq.b - dot(iq.a, x);
        if (sgn(slack) == 0) continue;
        Rat move = dot(iq.a, dir);
        if (sgn(slack) > 0 && sgn(move) > 0) {
          Rat bound = slack / move;
          if (!bounded || bound < eps) eps = bound;
          bounded = true;
        } else if (sgn(slack) < 0 && sgn(move) < 0) {
          Rat bound = slack / move;
          if (!bounded || bound < eps) eps = bound;
          bounded = true;
        }
      }
    }
    return eps / 2;
  };

  // The tangent cone at a sample is determined by which pieces contain it and
  // which of their inequalities are tight; enumerate one sample per realized
  // signature.
  auto signature_of = [&](const RatVec& z) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig;
    for (std::size_t pi = 0; pi < u.pieces().size(); ++pi) {
      const auto& p = u.pieces()[pi];
      if (!p.contains(z)) continue;
      sig.emplace_back(pi, p.active_indices(z));
    }
    return sig;
  };

  std::vector<RatVec> samples;
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> signatures;
  auto consider = [&](const RatVec& z) {
    if (!u.contains(z)) return;
    auto sig = signature_of(z);
    if (std::find(signatures.begin(), signatures.end(), sig) != signatures.end()) return;
    signatures.push_back(std::move(sig));
    samples.push_back(z);
  };
  for (const auto& cell : cells) {
    RatVec dir = cell.relint_point();
    RatVec z = x;
    if (!is_zero(dir)) {
      dir = normalize_ray(dir);
      z = vadd(x, vscale(safe_scale(dir), dir));
    }
    consider(z);
  }
  consider(x);
  return samples;
}

bool has_vertical_direction(const Polyhedron& cone, std::size_t lead_coords) {
  std::vector<Ineq> iq = cone.ineqs();
  for (std::size_t k = 0; k < lead_coords; ++k) {
    RatVec a = zero_vec(cone.dim());
    a[k] = 1;
    iq.push_back(Ineq{a, Rat(0)});
    RatVec na = a;
    na[k] = -1;
    iq.push_back(Ineq{na, Rat(0)});
  }
  Polyhedron slice = Polyhedron::from_ineqs(cone.dim(), std::move(iq));
  return !slice.is_empty() && (!slice.gens().rays.empty() || !slice.gens().lines.empty());
}

std::vector<Face> incident_faces(const PolyUnion& u, const RatVec& x) {
  auto samples = local_tangent_samples(u, x);
  std::vector<Face> faces;
  for (const auto& z : samples) {
    for (std::size_t pi = 0; pi < u.pieces().size(); ++pi) {
      const auto& p = u.pieces()[pi];
      if (!p.contains(z)) continue;
      faces.push_back(Face{pi, p.active_indices(z), z});
    }
  }
  // One face per (piece, active set); the first sample found represents it.
  std::vector<Face> dedup;
  for (auto& f : faces) {
    bool dup = false;
    for (const auto& g : dedup)
      if (g.piece == f.piece && g.active == f.active) {
        dup = true;
        break;
      }
    if (!dup) dedup.push_back(std::move(f));
  }
  return dedup;
}

}  // namespace varkit
