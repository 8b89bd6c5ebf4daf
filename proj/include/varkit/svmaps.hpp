#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varkit/polyunion.hpp"

namespace varkit {

// Polyhedral norms keep every computation exact; the Euclidean norm is
// admitted only as a flagged approximation inside the sampling oracle.
enum class NormKind { Inf, One, TwoApprox };

enum class NormSpace { Domain, Codomain };

struct NormSpec {
  NormKind kind = NormKind::Inf;
  NormSpace space = NormSpace::Codomain;
};

struct NormPair {
  NormKind domain = NormKind::Inf;
  NormKind codomain = NormKind::Inf;
};

bool norm_exact(NormKind k);
NormKind dual_kind(NormKind k);
Rat norm_value(NormKind k, const RatVec& v);  // exact kinds only
Polyhedron unit_ball(NormKind k, std::size_t dim);
std::vector<Polyhedron> sphere_facets(NormKind k, std::size_t dim);
// Cones on which the norm is the linear functional paired with them.
std::vector<std::pair<Polyhedron, RatVec>> norm_linearity_cells(NormKind k, std::size_t dim);
std::string norm_name(NormKind k);

// Piecewise polyhedral set-valued map S : R^n => R^m given by its graph.
struct PwpMap {
  std::size_t n = 0, m = 0;
  PolyUnion graph;  // in R^{n+m}

  PwpMap() = default;
  PwpMap(std::size_t n_, std::size_t m_, PolyUnion g);

  bool on_graph(const RatVec& x, const RatVec& y) const;
  PolyUnion fiber(const RatVec& x) const;
  PwpMap invert() const;
};

// Positively homogeneous map: a finite union of polyhedral cones through the
// origin in the product space.
struct PHMap {
  std::size_t n = 0, m = 0;
  PolyUnion graph;

  PHMap() = default;
  PHMap(std::size_t n_, std::size_t m_, PolyUnion g);
  PolyUnion fiber(const RatVec& w) const;
};

struct PrefanCell {
  Polyhedron domain;  // cone K in R^n
  Polyhedron graph;   // cone C in R^{n+m} with proj_p C = K
};

// Candidate prefan: domain fan plus per-cell conic graph. validate_prefan
// decides whether it satisfies the prefan axioms.
struct Prefan {
  std::size_t n = 0, m = 0;
  std::vector<PrefanCell> cells;
  NormPair norms;  // ball/norm pair used by the delta-inflation

  Prefan() = default;
  Prefan(std::size_t n_, std::size_t m_, std::vector<PrefanCell> cells_, NormPair norms_ = {});

  PolyUnion graph_union() const;
  PHMap as_phmap() const;
  PolyUnion fiber(const RatVec& p) const;
};

struct PrefanReport {
  bool ok = true;
  std::string axiom;  // violated axiom when !ok
  std::optional<RatVec> witness_p;
  std::string describe() const;
};

PrefanReport validate_prefan(const Prefan& h);

// (H + delta)(w) = H(w) + delta * ||w|| * B, computed cell by cell after
// refining the fan by the linearity cones of the domain norm.
Prefan inflate(const Prefan& h, const Rat& delta);

// H(w) = kappa * ||w|| * B as a prefan over the domain-norm fan.
Prefan ball_prefan(const Rat& kappa, std::size_t n, std::size_t m, NormPair norms = {});

namespace fixtures {

PwpMap s1();                  // S1(x) = (-inf, -|x|] U [|x|, inf)
PwpMap s2();                  // S2(x) = {x} U {-x}
PwpMap s3();                  // {x} U {-x} for x <= 0, [-x, x] for x >= 0
PwpMap halfline_map();        // S(x) = (-inf, x]
PwpMap constant_interval();   // S(x) = [0, 1]
PolyUnion g_graph(int i);     // graphs of G1..G6 over R
Prefan prefan_abs();          // H(p) = [-|p|, |p|]
Prefan prefan_half_abs();     // H(p) = [-|p|/2, |p|]
Prefan prefan_identity();     // H(p) = {p}
Prefan prefan_max0();         // H(p) = {max(0, p)}
Prefan prefan_zero();         // H(p) = {0}
PHMap phmap_s2();             // H' == S2, not convex-valued

}  // namespace fixtures

}  // namespace varkit
