#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varkit/varcalc.hpp"

namespace varkit {

// ||G||- = sup_{||w||<=1} inf_{z in G(w)} ||z||; +inf when some unit direction
// has an empty fiber. ||G||+ = sup sup; +inf when some fiber is unbounded.
ExtRat inner_norm(const PHMap& g, NormPair norms);
ExtRat outer_norm(const PHMap& g, NormPair norms);

// All first-order objects of a map at one graph point, computed in a single
// enumeration pass. The criteria accept this directly, so a caller probing
// many prefans against one point pays for the enumeration once.
struct PointAnalysis {
  std::size_t n = 0, m = 0;
  RatVec x, y;
  PolyUnion tangent;         // tangent cone of the graph at (x, y)
  LimitConeSet raw;          // limits of tangent cones
  LimitConeSet convexified;  // limits of convexified tangent cones
  Polyhedron regular_normal;
  PolyUnion limiting_normal;
  bool regular = false;      // regular_normal equals limiting_normal
};

PointAnalysis analyze_point(const PwpMap& s, const RatVec& x, const RatVec& y);

// lip S(x|y) as the attained maximum of inner norms over the finitely many
// limit cones (the Aubin criterion), or as the sup of ||u||*/||v||* over the
// limiting normal cone (the Mordukhovich criterion). Normal-space values use
// the norms dual to the given pair.
ExtRat lip_via_tangents(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms,
                        bool convexified);
ExtRat lip_via_tangents(const PointAnalysis& pa, NormPair norms, bool convexified);
ExtRat lip_via_normals(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms);
ExtRat lip_via_normals(const PointAnalysis& pa, NormPair norms);

bool is_graphically_regular(const PwpMap& s, const RatVec& x, const RatVec& y);

enum class QueryKind { Lip, Certify };
enum class Verdict { Holds, Fails, NotApplicable };
enum class Route { PrimalTangent, PrimalConvexified, DualNormal, ClarkeFastpath, Auto };

std::string route_name(Route r);
std::string verdict_name(Verdict v);

struct Certificate {
  QueryKind query = QueryKind::Certify;
  Verdict verdict = Verdict::Holds;
  Route route = Route::Auto;  // route actually decided on
  std::optional<RatVec> witness_direction;
  std::optional<std::pair<RatVec, RatVec>> witness_normal;  // (u, v) parts
  std::optional<ExtRat> modulus;
  NormPair norms;
  std::vector<std::string> notes;

  bool holds() const { return verdict == Verdict::Holds; }
};

// Decides pseudo strict H-differentiability of S at (x, y) for a prefan H.
// Primal routes check G(p) n [-H(-p)] nonempty over every limit cone G; the
// dual route checks the same condition through the limiting normal cone. An
// invalid prefan yields a not-applicable certificate naming the axiom.
Certificate certify_prefan(const PwpMap& s, const RatVec& x, const RatVec& y, const Prefan& h,
                           Route route);
Certificate certify_prefan(const PointAnalysis& pa, const Prefan& h, Route route);

// lip computation packaged with witnesses (infinite modulus carries a normal
// direction that forces it).
Certificate lip_certificate(const PwpMap& s, const RatVec& x, const RatVec& y, NormPair norms);
Certificate lip_certificate(const PointAnalysis& pa, NormPair norms);

}  // namespace varkit
