#pragma once

#include "varkit/svmaps.hpp"

namespace varkit {

// Tangent cone of a piecewise polyhedral set at one of its points: the union
// over incident pieces of their active-constraint cones.
PolyUnion tangent_cone(const PolyUnion& u, const RatVec& x);

PHMap graphical_derivative(const PwpMap& s, const RatVec& x, const RatVec& y);
PHMap convexified_derivative(const PwpMap& s, const RatVec& x, const RatVec& y);

// Every set limit of (convexified) tangent cones along graph sequences into
// the base point; finite for piecewise polyhedral maps. The cone at the base
// point itself is a member (constant sequences).
struct LimitConeSet {
  RatVec base;  // (x, y) stacked
  bool convexified = false;
  std::vector<PolyUnion> cones;
};

LimitConeSet limit_cones(const PwpMap& s, const RatVec& x, const RatVec& y, bool convexified);
// Memberwise closed conic hulls, deduplicated; equals limit_cones(..., true).
LimitConeSet convexify(const LimitConeSet& raw);

Polyhedron regular_normal_cone(const PwpMap& s, const RatVec& x, const RatVec& y);
PolyUnion limiting_normal_cone(const PwpMap& s, const RatVec& x, const RatVec& y);

// Limiting coderivative: v in D*S(x|y)(u) iff (v, -u) in the limiting normal
// cone of the graph.
PHMap coderivative(const PwpMap& s, const RatVec& x, const RatVec& y);
// Fiberwise closed convex hull, realized per cell of the common refinement of
// the coderivative's domain cones.
PHMap convexified_coderivative(const PwpMap& s, const RatVec& x, const RatVec& y);

Polyhedron conic_hull_of_union(const PolyUnion& u);

}  // namespace varkit
