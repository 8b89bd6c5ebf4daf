#pragma once

#include <optional>
#include <vector>

#include "varkit/polyhedron.hpp"

namespace varkit {

// Finite union of closed convex polyhedra in a common ambient space. The
// empty union (no pieces) is the empty set.
class PolyUnion {
 public:
  PolyUnion() = default;
  PolyUnion(std::size_t dim, std::vector<Polyhedron> pieces);

  std::size_t dim() const { return dim_; }
  const std::vector<Polyhedron>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }
  bool is_cone_union() const;

  bool contains(const RatVec& x) const;
  PolyUnion negate() const;
  PolyUnion linear_image(const RatMat& m) const;
  std::string key() const;

  static PolyUnion single(Polyhedron p);

 private:
  std::size_t dim_ = 0;
  std::vector<Polyhedron> pieces_;  // nonempty, none contained in another
};

// target \ union(pieces) decision: nullopt when covered, else a rational
// witness point of the difference.
std::optional<RatVec> covers(const std::vector<Polyhedron>& pieces, const Polyhedron& target);

bool union_contains(const PolyUnion& big, const PolyUnion& small,
                    std::optional<RatVec>* witness = nullptr);

enum class Relation { Disjoint, SubsetAB, SupersetAB, Equal, Overlap };

struct RelateResult {
  Relation rel = Relation::Disjoint;
  // Witnesses for the failed inclusions: a point of A \ B and/or B \ A.
  std::optional<RatVec> witness_a_not_in_b;
  std::optional<RatVec> witness_b_not_in_a;
};

RelateResult relate(const PolyUnion& a, const PolyUnion& b);

// Closed cells of the subdivision of target induced by the hyperplanes. With
// with_boundaries the lower-dimensional faces are enumerated as cells too.
// The relative interior of every returned cell lies strictly on one side of
// each hyperplane not containing the cell.
std::vector<Polyhedron> arrangement_cells(const Polyhedron& target,
                                          const std::vector<Ineq>& hyperplanes,
                                          bool with_boundaries);

struct CoverageResult {
  bool covered = false;
  std::optional<RatVec> witness;  // uncovered direction, nonzero
};

// Decides whether the p-space projections of the given cones cover the target
// cone, where p-space is the first target.dim() coordinates. The origin is
// exempt: coverage quantifies over directions.
CoverageResult coverage(const std::vector<Polyhedron>& cones, const Polyhedron& target);

// Sample points z (including x itself) realizing every tangent cone of u
// attainable arbitrarily near x: one per face of the local hyperplane
// arrangement at x whose direction stays inside u.
std::vector<RatVec> local_tangent_samples(const PolyUnion& u, const RatVec& x);

struct Face {
  std::size_t piece;                // index into u.pieces()
  std::vector<std::size_t> active;  // tight canonical inequalities of that piece
  RatVec sample;                    // relative-interior point of the face region
};

std::vector<Face> incident_faces(const PolyUnion& u, const RatVec& x);

// Whether the cone contains a nonzero direction whose first lead_coords
// coordinates vanish (an unbounded-fiber certificate for conic graphs).
bool has_vertical_direction(const Polyhedron& cone, std::size_t lead_coords);

}  // namespace varkit
