#include "varkit/polyhedron.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace varkit {

bool lex_less(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

namespace {

RatVec concat(const RatVec& a, const Rat& b) {
  RatVec r = a;
  r.push_back(b);
  return r;
}

// Active sets of processed constraints, for the combinatorial adjacency test.
std::vector<bool> zero_set(const RatVec& ray, const dd::ProcessedNode* processed,
                           std::size_t count) {
  std::vector<bool> z(count);
  std::size_t j = 0;
  for (const auto* node = processed; node != nullptr; node = node->next.get(), ++j)
    z[j] = sgn(dot(node->normal, ray)) == 0;
  return z;
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

namespace dd {

State init(std::size_t dim) {
  State st;
  st.dim = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    RatVec e = zero_vec(dim);
    e[i] = 1;
    st.lines.push_back(e);
  }
  return st;
}

void add_constraint(State& st, const RatVec& normal) {
  RatVec a = normalize_ray(normal);
  if (is_zero(a)) return;

  std::size_t piv = st.lines.size();
  for (std::size_t i = 0; i < st.lines.size(); ++i) {
    if (sgn(dot(a, st.lines[i])) != 0) {
      piv = i;
      break;
    }
  }
  if (piv < st.lines.size()) {
    RatVec l = st.lines[piv];
    Rat al = dot(a, l);
    if (sgn(al) > 0) {
      for (auto& x : l) x = -x;
      al = -al;
    }
    std::vector<RatVec> new_lines;
    for (std::size_t i = 0; i < st.lines.size(); ++i) {
      if (i == piv) continue;
      Rat f = dot(a, st.lines[i]) / al;
      new_lines.push_back(normalize_ray(vsub(st.lines[i], vscale(f, l))));
    }
    for (auto& r : st.rays) {
      Rat f = dot(a, r) / al;
      r = normalize_ray(vsub(r, vscale(f, l)));
    }
    st.lines = std::move(new_lines);
    st.rays.push_back(normalize_ray(l));
    st.processed = std::make_shared<const ProcessedNode>(ProcessedNode{a, st.processed});
    ++st.processed_count;
    return;
  }

  std::vector<std::size_t> neg, zero, pos;
  std::vector<Rat> vals(st.rays.size());
  for (std::size_t i = 0; i < st.rays.size(); ++i) {
    vals[i] = dot(a, st.rays[i]);
    int s = sgn(vals[i]);
    if (s < 0)
      neg.push_back(i);
    else if (s == 0)
      zero.push_back(i);
    else
      pos.push_back(i);
  }
  if (pos.empty()) {
    st.processed = std::make_shared<const ProcessedNode>(ProcessedNode{a, st.processed});
    ++st.processed_count;
    return;
  }

  std::vector<std::vector<bool>> zsets(st.rays.size());
  for (std::size_t i = 0; i < st.rays.size(); ++i)
    zsets[i] = zero_set(st.rays[i], st.processed.get(), st.processed_count);

  std::vector<RatVec> next;
  for (std::size_t i : neg) next.push_back(st.rays[i]);
  for (std::size_t i : zero) next.push_back(st.rays[i]);
  for (std::size_t i : neg) {
    for (std::size_t j : pos) {
      std::vector<bool> common(st.processed_count);
      for (std::size_t k = 0; k < st.processed_count; ++k)
        common[k] = zsets[i][k] && zsets[j][k];
      bool adjacent = true;
      for (std::size_t k = 0; k < st.rays.size(); ++k) {
        if (k == i || k == j) continue;
        if (subset(common, zsets[k])) {
          adjacent = false;
          break;
        }
      }
      if (!adjacent) continue;
      // vals[j] * ray_i - vals[i] * ray_j satisfies a.w = 0 with positive weights
      RatVec w = vsub(vscale(vals[j], st.rays[i]), vscale(vals[i], st.rays[j]));
      next.push_back(normalize_ray(w));
    }
  }
  st.rays = std::move(next);
  st.processed = std::make_shared<const ProcessedNode>(ProcessedNode{a, st.processed});
  ++st.processed_count;
}

}  // namespace dd

std::pair<std::vector<RatVec>, std::vector<RatVec>> dd_cone(std::size_t dim,
                                                            const std::vector<RatVec>& normals) {
  dd::State st = dd::init(dim);
  for (const RatVec& a : normals) dd::add_constraint(st, a);

  std::vector<RatVec> rays = std::move(st.rays);
  std::sort(rays.begin(), rays.end(), lex_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  RatMat lm = st.lines;
  rref(lm);
  std::vector<RatVec> out_lines;
  for (auto& row : lm)
    if (!is_zero(row)) out_lines.push_back(normalize_ray(row));
  std::sort(out_lines.begin(), out_lines.end(), lex_less);
  return {rays, out_lines};
}

Generators Polyhedron::gens_from_ineqs(std::size_t dim, const std::vector<Ineq>& ineqs) {
  bool homogeneous = true;
  for (const auto& iq : ineqs)
    if (sgn(iq.b) != 0) homogeneous = false;
  if (homogeneous) {
    // A cone: no homogenization needed, the origin is the only vertex.
    std::vector<RatVec> normals;
    for (const auto& iq : ineqs) normals.push_back(iq.a);
    auto [rays, lines] = dd_cone(dim, normals);
    Generators g;
    g.vertices.push_back(zero_vec(dim));
    g.rays = std::move(rays);
    g.lines = std::move(lines);
    return g;
  }

  // Homogenize with a leading coordinate x0: {(x0, x) : a.x <= b*x0, x0 >= 0}.
  std::vector<RatVec> normals;
  for (const auto& iq : ineqs) {
    RatVec n;
    n.push_back(-iq.b);
    for (const auto& c : iq.a) n.push_back(c);
    normals.push_back(n);
  }
  RatVec nonneg = zero_vec(dim + 1);
  nonneg[0] = -1;
  normals.push_back(nonneg);

  auto [rays, lines] = dd_cone(dim + 1, normals);
  Generators g;
  for (const auto& r : rays) {
    if (sgn(r[0]) > 0) {
      RatVec v(r.begin() + 1, r.end());
      g.vertices.push_back(vscale(1 / r[0], v));
    } else {
      g.rays.push_back(RatVec(r.begin() + 1, r.end()));
    }
  }
  for (const auto& l : lines) {
    assert(sgn(l[0]) == 0);
    g.lines.push_back(RatVec(l.begin() + 1, l.end()));
  }
  if (g.vertices.empty()) return Generators{};  // infeasible
  return g;
}

std::vector<Ineq> Polyhedron::ineqs_from_gens(std::size_t dim, const Generators& g) {
  if (g.vertices.size() == 1 && is_zero(g.vertices.front())) {
    // A cone: its facet normals generate the polar cone.
    std::vector<RatVec> normals = g.rays;
    for (const auto& l : g.lines) {
      normals.push_back(l);
      RatVec nl = l;
      for (auto& c : nl) c = -c;
      normals.push_back(nl);
    }
    auto [prays, plines] = dd_cone(dim, normals);
    std::vector<Ineq> out;
    for (const auto& r : prays) out.push_back(Ineq{r, Rat(0)});
    for (const auto& l : plines) {
      out.push_back(Ineq{l, Rat(0)});
      RatVec nl = l;
      for (auto& c : nl) c = -c;
      out.push_back(Ineq{nl, Rat(0)});
    }
    return out;
  }

  // Facets of the homogenization cone are generators of its polar cone,
  // computed over coordinates (beta, a) with beta + a.v <= 0, a.r <= 0, a.l = 0.
  std::vector<RatVec> normals;
  for (const auto& v : g.vertices) {
    RatVec n;
    n.push_back(1);
    for (const auto& c : v) n.push_back(c);
    normals.push_back(n);  // beta + a.v <= 0
  }
  for (const auto& r : g.rays) {
    RatVec n;
    n.push_back(0);
    for (const auto& c : r) n.push_back(c);
    normals.push_back(n);
  }
  for (const auto& l : g.lines) {
    RatVec n;
    n.push_back(0);
    for (const auto& c : l) n.push_back(c);
    normals.push_back(n);
    RatVec m = n;
    for (auto& c : m) c = -c;
    normals.push_back(m);
  }
  auto [rays, lines] = dd_cone(dim + 1, normals);
  std::vector<Ineq> out;
  for (const auto& r : rays) {
    RatVec a(r.begin() + 1, r.end());
    if (is_zero(a)) continue;  // the trivial facet x0 >= 0 of the homogenization
    out.push_back(Ineq{a, Rat(-r[0])});
  }
  for (const auto& l : lines) {
    RatVec a(l.begin() + 1, l.end());
    if (is_zero(a)) continue;
    out.push_back(Ineq{a, Rat(-l[0])});
    RatVec na = a;
    for (auto& c : na) c = -c;
    out.push_back(Ineq{na, Rat(l[0])});
  }
  return out;
}

void Polyhedron::canonicalize_hrep() {
  for (auto& iq : ineqs_) {
    RatVec full = concat(iq.a, iq.b);
    full = normalize_ray(full);
    iq.a = RatVec(full.begin(), full.end() - 1);
    iq.b = full.back();
  }
  std::sort(ineqs_.begin(), ineqs_.end(), [](const Ineq& x, const Ineq& y) {
    if (lex_less(x.a, y.a)) return true;
    if (lex_less(y.a, x.a)) return false;
    return x.b < y.b;
  });
  ineqs_.erase(std::unique(ineqs_.begin(), ineqs_.end(),
                           [](const Ineq& x, const Ineq& y) { return x.a == y.a && x.b == y.b; }),
               ineqs_.end());
}

void Polyhedron::canonicalize_vrep() {
  auto& g = gens_;
  std::sort(g.vertices.begin(), g.vertices.end(), lex_less);
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  for (auto& r : g.rays) r = normalize_ray(r);
  std::sort(g.rays.begin(), g.rays.end(), lex_less);
  g.rays.erase(std::unique(g.rays.begin(), g.rays.end()), g.rays.end());
  RatMat lm = g.lines;
  rref(lm);
  g.lines.clear();
  for (auto& row : lm)
    if (!is_zero(row)) g.lines.push_back(normalize_ray(row));
  std::sort(g.lines.begin(), g.lines.end(), lex_less);
}

Polyhedron Polyhedron::from_ineqs(std::size_t dim, std::vector<Ineq> ineqs) {
  for (const auto& iq : ineqs)
    if (iq.a.size() != dim) throw DimensionMismatch("inequality arity vs ambient dimension");
  Polyhedron p;
  p.dim_ = dim;
  p.gens_ = gens_from_ineqs(dim, ineqs);
  if (p.gens_.none()) {
    p.empty_ = true;
    p.ineqs_ = {Ineq{zero_vec(dim), Rat(-1)}};
    return p;
  }
  p.empty_ = false;
  p.ineqs_ = ineqs_from_gens(dim, p.gens_);
  p.canonicalize_hrep();
  p.canonicalize_vrep();
  return p;
}

Polyhedron Polyhedron::from_generators(std::size_t dim, Generators g) {
  for (const auto& v : g.vertices)
    if (v.size() != dim) throw DimensionMismatch("generator arity vs ambient dimension");
  for (const auto& v : g.rays)
    if (v.size() != dim) throw DimensionMismatch("generator arity vs ambient dimension");
  for (const auto& v : g.lines)
    if (v.size() != dim) throw DimensionMismatch("generator arity vs ambient dimension");
  Polyhedron p;
  p.dim_ = dim;
  if (g.vertices.empty()) {
    p.empty_ = true;
    p.ineqs_ = {Ineq{zero_vec(dim), Rat(-1)}};
    return p;
  }
  p.empty_ = false;
  p.ineqs_ = ineqs_from_gens(dim, g);
  p.canonicalize_hrep();
  p.gens_ = gens_from_ineqs(dim, p.ineqs_);
  assert(!p.gens_.none());
  p.canonicalize_vrep();
  return p;
}

Polyhedron Polyhedron::from_ineqs_raw(std::size_t dim, std::vector<Ineq> ineqs) {
  for (const auto& iq : ineqs)
    if (iq.a.size() != dim) throw DimensionMismatch("inequality arity vs ambient dimension");
  Polyhedron p;
  p.dim_ = dim;
  p.gens_ = gens_from_ineqs(dim, ineqs);
  if (p.gens_.none()) {
    p.empty_ = true;
    p.ineqs_ = {Ineq{zero_vec(dim), Rat(-1)}};
    return p;
  }
  p.empty_ = false;
  p.ineqs_ = std::move(ineqs);
  p.canonicalize_hrep();
  p.canonicalize_vrep();
  return p;
}

Polyhedron Polyhedron::from_raw(std::size_t dim, std::vector<Ineq> ineqs, Generators g) {
  Polyhedron p;
  p.dim_ = dim;
  if (g.vertices.empty()) {
    p.empty_ = true;
    p.ineqs_ = {Ineq{zero_vec(dim), Rat(-1)}};
    return p;
  }
  p.empty_ = false;
  p.ineqs_ = std::move(ineqs);
  p.gens_ = std::move(g);
  p.canonicalize_hrep();
  p.canonicalize_vrep();
  return p;
}

Polyhedron Polyhedron::whole_space(std::size_t dim) { return from_ineqs(dim, {}); }

Polyhedron Polyhedron::empty_set(std::size_t dim) {
  return from_ineqs(dim, {Ineq{zero_vec(dim), Rat(-1)}});
}

Polyhedron Polyhedron::point(RatVec x) {
  Generators g;
  g.vertices.push_back(std::move(x));
  std::size_t d = g.vertices[0].size();
  return from_generators(d, std::move(g));
}

Polyhedron Polyhedron::cone_from_rays(std::size_t dim, std::vector<RatVec> rays,
                                      std::vector<RatVec> lines) {
  Generators g;
  g.vertices.push_back(zero_vec(dim));
  for (auto& r : rays)
    if (!is_zero(r)) g.rays.push_back(normalize_ray(r));
  g.lines = std::move(lines);
  return from_generators(dim, std::move(g));
}

bool Polyhedron::is_cone() const {
  if (empty_) return false;
  for (const auto& iq : ineqs_)
    if (sgn(iq.b) != 0) return false;
  return true;
}

bool Polyhedron::contains(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("point arity vs ambient dimension");
  if (empty_) return false;
  for (const auto& iq : ineqs_)
    if (dot(iq.a, x) > iq.b) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("containment of mismatched dimensions");
  if (other.empty_) return true;
  if (empty_) return false;
  for (const auto& iq : ineqs_) {
    for (const auto& v : other.gens_.vertices)
      if (dot(iq.a, v) > iq.b) return false;
    for (const auto& r : other.gens_.rays)
      if (sgn(dot(iq.a, r)) > 0) return false;
    for (const auto& l : other.gens_.lines)
      if (sgn(dot(iq.a, l)) != 0) return false;
  }
  return true;
}

bool Polyhedron::equals(const Polyhedron& other) const {
  return contains(other) && other.contains(*this);
}

std::vector<std::size_t> Polyhedron::active_indices(const RatVec& x) const {
  if (!contains(x)) throw PointNotInSet("active_indices");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ineqs_.size(); ++i)
    if (dot(ineqs_[i].a, x) == ineqs_[i].b) idx.push_back(i);
  return idx;
}

RatVec Polyhedron::relint_point() const {
  if (empty_) throw Error("relint_point of empty set");
  RatVec s = zero_vec(dim_);
  for (const auto& v : gens_.vertices) s = vadd(s, v);
  s = vscale(Rat(1, static_cast<long>(gens_.vertices.size())), s);
  for (const auto& r : gens_.rays) s = vadd(s, r);
  if (is_zero(s) && !gens_.lines.empty()) {
    for (const auto& l : gens_.lines) s = vadd(s, l);
  }
  return s;
}

std::optional<int> Polyhedron::side_of_hyperplane(const Ineq& h) const {
  bool below = false, above = false;
  for (const auto& v : gens_.vertices) {
    int s = sgn(dot(h.a, v) - h.b);
    below |= s < 0;
    above |= s > 0;
  }
  for (const auto& r : gens_.rays) {
    int s = sgn(dot(h.a, r));
    below |= s < 0;
    above |= s > 0;
  }
  for (const auto& l : gens_.lines) {
    if (sgn(dot(h.a, l)) != 0) {
      below = above = true;
    }
  }
  if (below && above) return std::nullopt;
  if (below) return -1;
  if (above) return 1;
  return 0;
}

Polyhedron Polyhedron::polar() const {
  if (!is_cone()) throw NotACone("polar");
  std::vector<Ineq> iq;
  for (const auto& r : gens_.rays) iq.push_back(Ineq{r, Rat(0)});
  for (const auto& l : gens_.lines) {
    iq.push_back(Ineq{l, Rat(0)});
    RatVec nl = l;
    for (auto& c : nl) c = -c;
    iq.push_back(Ineq{nl, Rat(0)});
  }
  return from_ineqs(dim_, std::move(iq));
}

Polyhedron Polyhedron::project(const std::vector<std::size_t>& keep) const {
  for (auto k : keep)
    if (k >= dim_) throw DimensionMismatch("projection index out of range");
  if (empty_) return empty_set(keep.size());
  Generators g;
  auto pick = [&](const RatVec& v) {
    RatVec r(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) r[i] = v[keep[i]];
    return r;
  };
  for (const auto& v : gens_.vertices) g.vertices.push_back(pick(v));
  for (const auto& r : gens_.rays) {
    RatVec p = pick(r);
    if (!is_zero(p)) g.rays.push_back(p);
  }
  for (const auto& l : gens_.lines) {
    RatVec p = pick(l);
    if (!is_zero(p)) g.lines.push_back(p);
  }
  return from_generators(keep.size(), std::move(g));
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("intersection of mismatched dimensions");
  std::vector<Ineq> iq = ineqs_;
  iq.insert(iq.end(), other.ineqs_.begin(), other.ineqs_.end());
  return from_ineqs(dim_, std::move(iq));
}

Polyhedron Polyhedron::intersect_halfspace(const Ineq& h) const {
  std::vector<Ineq> iq = ineqs_;
  iq.push_back(h);
  return from_ineqs_raw(dim_, std::move(iq));
}

Polyhedron Polyhedron::intersect_hyperplane(const Ineq& h) const {
  std::vector<Ineq> iq = ineqs_;
  iq.push_back(h);
  RatVec na = h.a;
  for (auto& c : na) c = -c;
  iq.push_back(Ineq{na, Rat(-h.b)});
  return from_ineqs_raw(dim_, std::move(iq));
}

Polyhedron Polyhedron::minkowski(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("minkowski sum of mismatched dimensions");
  if (empty_ || other.empty_) return empty_set(dim_);
  Generators g;
  for (const auto& v : gens_.vertices)
    for (const auto& w : other.gens_.vertices) g.vertices.push_back(vadd(v, w));
  g.rays = gens_.rays;
  g.rays.insert(g.rays.end(), other.gens_.rays.begin(), other.gens_.rays.end());
  g.lines = gens_.lines;
  g.lines.insert(g.lines.end(), other.gens_.lines.begin(), other.gens_.lines.end());
  return from_generators(dim_, std::move(g));
}

Polyhedron Polyhedron::translate(const RatVec& t) const {
  if (t.size() != dim_) throw DimensionMismatch("translate");
  if (empty_) return *this;
  Generators g = gens_;
  for (auto& v : g.vertices) v = vadd(v, t);
  return from_generators(dim_, std::move(g));
}

Polyhedron Polyhedron::linear_image(const RatMat& m) const {
  std::size_t out = m.size();
  if (empty_) return empty_set(out);
  Generators g;
  for (const auto& v : gens_.vertices) g.vertices.push_back(mat_vec(m, v));
  for (const auto& r : gens_.rays) {
    RatVec p = mat_vec(m, r);
    if (!is_zero(p)) g.rays.push_back(p);
  }
  for (const auto& l : gens_.lines) {
    RatVec p = mat_vec(m, l);
    if (!is_zero(p)) g.lines.push_back(p);
  }
  return from_generators(out, std::move(g));
}

Polyhedron Polyhedron::negate() const {
  if (empty_) return *this;
  Generators g = gens_;
  for (auto& v : g.vertices)
    for (auto& c : v) c = -c;
  for (auto& r : g.rays)
    for (auto& c : r) c = -c;
  return from_generators(dim_, std::move(g));
}

Polyhedron Polyhedron::conic_hull() const {
  if (empty_) return empty_set(dim_);
  std::vector<RatVec> rays = gens_.rays;
  for (const auto& v : gens_.vertices)
    if (!is_zero(v)) rays.push_back(v);
  return cone_from_rays(dim_, std::move(rays), gens_.lines);
}

Polyhedron Polyhedron::product(const Polyhedron& other) const {
  if (empty_ || other.empty_) return empty_set(dim_ + other.dim_);
  std::vector<Ineq> iq;
  for (const auto& i : ineqs_) {
    RatVec a = i.a;
    a.resize(dim_ + other.dim_, Rat(0));
    iq.push_back(Ineq{a, i.b});
  }
  for (const auto& i : other.ineqs_) {
    RatVec a = zero_vec(dim_);
    a.insert(a.end(), i.a.begin(), i.a.end());
    iq.push_back(Ineq{a, i.b});
  }
  return from_ineqs(dim_ + other.dim_, std::move(iq));
}

Polyhedron Polyhedron::slice_prefix(const RatVec& x) const {
  if (x.size() > dim_) throw DimensionMismatch("slice prefix longer than ambient dimension");
  std::size_t rest = dim_ - x.size();
  if (empty_) return empty_set(rest);
  std::vector<Ineq> iq;
  for (const auto& i : ineqs_) {
    Rat shift = 0;
    for (std::size_t k = 0; k < x.size(); ++k) shift += i.a[k] * x[k];
    iq.push_back(Ineq{RatVec(i.a.begin() + x.size(), i.a.end()), i.b - shift});
  }
  return from_ineqs(rest, std::move(iq));
}

std::string Polyhedron::key() const {
  std::ostringstream os;
  os << dim_ << (empty_ ? "E" : "|");
  for (const auto& i : ineqs_) {
    for (const auto& c : i.a) os << rat_str(c) << ",";
    os << "<=" << rat_str(i.b) << ";";
  }
  return os.str();
}

}  // namespace varkit
