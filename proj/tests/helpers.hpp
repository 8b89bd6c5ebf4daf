#pragma once

#include <random>
#include <vector>

#include "varkit/svmaps.hpp"

namespace varkit::testing {

inline Ineq iq(std::vector<long> a, long b) {
  RatVec av;
  for (long c : a) av.push_back(rat(c));
  return Ineq{av, rat(b)};
}

inline RatVec vec(std::vector<long> v) {
  RatVec r;
  for (long c : v) r.push_back(rat(c));
  return r;
}

inline RatVec qvec(std::vector<std::pair<long, long>> v) {
  RatVec r;
  for (auto [n, d] : v) r.push_back(rat(n, d));
  return r;
}

inline Polyhedron poly(std::size_t dim, std::vector<Ineq> ineqs) {
  return Polyhedron::from_ineqs(dim, std::move(ineqs));
}

// Null-space basis of the rows, via reduced row echelon form.
inline std::vector<RatVec> null_space(RatMat rows, std::size_t dim) {
  if (rows.empty()) {
    std::vector<RatVec> basis;
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec e = zero_vec(dim);
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    RatVec v = zero_vec(dim);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
    basis.push_back(v);
  }
  return basis;
}

// Independent oracle for cone generators: enumerates candidate directions from
// active subsets of the constraint normals; no double-description machinery.
inline Polyhedron brute_force_cone(std::size_t dim, const std::vector<RatVec>& normals) {
  RatMat all = normals;
  std::vector<RatVec> lines = null_space(all, dim);
  std::size_t lin_dim = lines.size();

  auto feasible = [&](const RatVec& v) {
    for (const auto& a : normals)
      if (sgn(dot(a, v)) > 0) return false;
    return true;
  };

  std::vector<RatVec> rays;
  const std::size_t k = normals.size();
  for (std::size_t mask = 0; mask < (1u << k); ++mask) {
    RatMat sub;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) sub.push_back(normals[i]);
    auto space = null_space(sub, dim);
    if (space.size() != lin_dim + 1) continue;
    for (const auto& cand : space) {
      for (int s : {1, -1}) {
        RatVec v = normalize_ray(vscale(rat(s), cand));
        if (is_zero(v) || !feasible(v)) continue;
        rays.push_back(v);
      }
    }
  }
  return Polyhedron::cone_from_rays(dim, rays, lines);
}

struct RandomGeom {
  std::mt19937_64 gen;
  explicit RandomGeom(unsigned long seed) : gen(seed) {}

  long small_int(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(gen);
  }

  RatVec vec(std::size_t dim, long lo = -2, long hi = 2) {
    RatVec v(dim);
    for (auto& c : v) c = rat(small_int(lo, hi));
    return v;
  }

  Polyhedron random_cone(std::size_t dim, std::size_t max_rays = 4) {
    std::vector<RatVec> rays;
    std::size_t k = 1 + static_cast<std::size_t>(small_int(0, static_cast<long>(max_rays) - 1));
    for (std::size_t i = 0; i < k; ++i) rays.push_back(vec(dim));
    return Polyhedron::cone_from_rays(dim, rays);
  }

  Polyhedron random_polytope(std::size_t dim, std::size_t max_pts = 5) {
    Generators g;
    std::size_t k = 1 + static_cast<std::size_t>(small_int(0, static_cast<long>(max_pts) - 1));
    for (std::size_t i = 0; i < k; ++i) g.vertices.push_back(vec(dim));
    return Polyhedron::from_generators(dim, std::move(g));
  }

  Polyhedron random_polyhedron(std::size_t dim) {
    Generators g;
    std::size_t kv = 1 + static_cast<std::size_t>(small_int(0, 2));
    for (std::size_t i = 0; i < kv; ++i) g.vertices.push_back(vec(dim));
    std::size_t kr = static_cast<std::size_t>(small_int(0, 2));
    for (std::size_t i = 0; i < kr; ++i) g.rays.push_back(vec(dim));
    return Polyhedron::from_generators(dim, std::move(g));
  }

  // Piecewise polyhedral map with a conic graph through the origin: the base
  // point (0, 0) always lies on the graph.
  PwpMap random_conic_map(std::size_t n, std::size_t m, long entry_range = 2) {
    std::size_t pieces = 1 + static_cast<std::size_t>(small_int(0, 2));
    std::vector<Polyhedron> ps;
    for (std::size_t i = 0; i < pieces; ++i) {
      std::vector<RatVec> rays;
      std::size_t k = 1 + static_cast<std::size_t>(small_int(0, 2));
      for (std::size_t j = 0; j < k; ++j) rays.push_back(vec(n + m, -entry_range, entry_range));
      ps.push_back(Polyhedron::cone_from_rays(n + m, rays));
    }
    return PwpMap(n, m, PolyUnion(n + m, std::move(ps)));
  }
};

}  // namespace varkit::testing
