#include <doctest.h>

#include "helpers.hpp"
#include "varkit/varcalc.hpp"

using namespace varkit;
using namespace varkit::testing;

namespace {

bool same_set(const PolyUnion& a, const PolyUnion& b) {
  return relate(a, b).rel == Relation::Equal;
}

bool contains_cone(const std::vector<PolyUnion>& cones, const PolyUnion& c) {
  for (const auto& k : cones)
    if (same_set(k, c)) return true;
  return false;
}

// Grid oracle for polars of plane cones: keep directions with <v, g> <= 0
// against all generators.
Polyhedron polar_by_grid(const Polyhedron& cone, long grid = 4) {
  std::vector<RatVec> rays;
  for (long a = -grid; a <= grid; ++a) {
    for (long b = -grid; b <= grid; ++b) {
      RatVec v = vec({a, b});
      if (is_zero(v)) continue;
      bool ok = true;
      for (const auto& r : cone.gens().rays)
        if (sgn(dot(v, r)) > 0) ok = false;
      for (const auto& l : cone.gens().lines)
        if (sgn(dot(v, l)) != 0) ok = false;
      if (ok) rays.push_back(v);
    }
  }
  return Polyhedron::cone_from_rays(2, rays);
}

}  // namespace

TEST_CASE("tangent cones of the S1 graph") {
  PolyUnion u = fixtures::s1().graph;
  CHECK(same_set(tangent_cone(u, vec({0, 0})), fixtures::g_graph(6)));
  CHECK(same_set(tangent_cone(u, vec({1, 1})), fixtures::g_graph(1)));
  CHECK(same_set(tangent_cone(PolyUnion(2, {Polyhedron::whole_space(2)}), vec({3, -7})),
                 PolyUnion(2, {Polyhedron::whole_space(2)})));
}

TEST_CASE("graphical derivative examples") {
  PwpMap half = fixtures::halfline_map();
  PHMap d = graphical_derivative(half, vec({0}), vec({0}));
  CHECK(same_set(d.graph, half.graph));  // graph is already a convex cone

  PHMap dstar2 = convexified_derivative(fixtures::s1(), vec({0}), vec({0}));
  CHECK(same_set(dstar2.graph, fixtures::g_graph(5)));  // cl co of the X-cone is the plane

  PwpMap s2 = fixtures::s2();
  PHMap d2 = graphical_derivative(s2, vec({0}), vec({0}));
  CHECK(same_set(d2.graph, s2.graph));

  CHECK_THROWS_AS(graphical_derivative(half, vec({0}), vec({1})), PointNotInSet);
}

TEST_CASE("limit cones of S1: six raw, five convexified") {
  PwpMap s1 = fixtures::s1();
  LimitConeSet raw = limit_cones(s1, vec({0}), vec({0}), false);
  REQUIRE(raw.cones.size() == 6);
  for (int i = 1; i <= 6; ++i) CHECK(contains_cone(raw.cones, fixtures::g_graph(i)));

  LimitConeSet conv = limit_cones(s1, vec({0}), vec({0}), true);
  REQUIRE(conv.cones.size() == 5);
  for (int i = 1; i <= 5; ++i) CHECK(contains_cone(conv.cones, fixtures::g_graph(i)));

  // The tangent cone at the point itself is a member (constant sequence).
  CHECK(contains_cone(raw.cones, tangent_cone(s1.graph, vec({0, 0}))));
}

TEST_CASE("limit cones of S2: three members") {
  PwpMap s2 = fixtures::s2();
  LimitConeSet raw = limit_cones(s2, vec({0}), vec({0}), false);
  REQUIRE(raw.cones.size() == 3);
  PolyUnion diag(2, {poly(2, {iq({1, -1}, 0), iq({-1, 1}, 0)})});
  PolyUnion anti(2, {poly(2, {iq({1, 1}, 0), iq({-1, -1}, 0)})});
  CHECK(contains_cone(raw.cones, diag));
  CHECK(contains_cone(raw.cones, anti));
  CHECK(contains_cone(raw.cones, s2.graph));
}

TEST_CASE("limit cones away from the kink") {
  LimitConeSet lc = limit_cones(fixtures::s1(), vec({1}), vec({1}), false);
  REQUIRE(lc.cones.size() == 2);  // boundary line sample and sector interior
  CHECK(contains_cone(lc.cones, fixtures::g_graph(1)));
  CHECK(contains_cone(lc.cones, fixtures::g_graph(5)));
}

TEST_CASE("regular normal cone examples") {
  // Polar of the X-shaped cone is the origin.
  Polyhedron n0 = regular_normal_cone(fixtures::s1(), vec({0}), vec({0}));
  CHECK(n0.equals(Polyhedron::point(vec({0, 0}))));
  // Grid oracle sanity for the polar of one sector piece.
  {
    Polyhedron piece = fixtures::s1().graph.pieces()[0];
    CHECK(piece.polar().equals(polar_by_grid(piece)));
  }

  Polyhedron n11 = regular_normal_cone(fixtures::s1(), vec({1}), vec({1}));
  CHECK(n11.equals(Polyhedron::cone_from_rays(2, {vec({1, -1})})));

  PwpMap plane(1, 1, PolyUnion(2, {Polyhedron::whole_space(2)}));
  CHECK(regular_normal_cone(plane, vec({0}), vec({0})).equals(Polyhedron::point(vec({0, 0}))));
}

TEST_CASE("limiting normal cone of S1 is the four diagonal rays") {
  PolyUnion n = limiting_normal_cone(fixtures::s1(), vec({0}), vec({0}));
  std::vector<Polyhedron> rays;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}})
    rays.push_back(Polyhedron::cone_from_rays(2, {vec({a, b})}));
  CHECK(same_set(n, PolyUnion(2, rays)));

  // Oracle: the polars of gph G1..G5 computed by ray enumeration.
  std::vector<Polyhedron> oracle;
  for (int i = 1; i <= 5; ++i) {
    PolyUnion g = fixtures::g_graph(i);
    REQUIRE(g.pieces().size() == 1);
    oracle.push_back(polar_by_grid(g.pieces()[0]));
  }
  CHECK(same_set(n, PolyUnion(2, oracle)));
}

TEST_CASE("limiting normal cone: Clarke regular and free cases") {
  PwpMap half = fixtures::halfline_map();
  PolyUnion n = limiting_normal_cone(half, vec({0}), vec({0}));
  // gph = {y <= x}; the outward normal direction is (-1, 1).
  CHECK(same_set(n, PolyUnion(2, {Polyhedron::cone_from_rays(2, {vec({-1, 1})})})));
  CHECK(regular_normal_cone(half, vec({0}), vec({0}))
            .equals(Polyhedron::cone_from_rays(2, {vec({-1, 1})})));

  PwpMap plane(1, 1, PolyUnion(2, {Polyhedron::whole_space(2)}));
  CHECK(same_set(limiting_normal_cone(plane, vec({0}), vec({0})),
                 PolyUnion(2, {Polyhedron::point(vec({0, 0}))})));
}

TEST_CASE("limiting contains regular normal cone on fixtures") {
  for (const PwpMap& s : {fixtures::s1(), fixtures::s2(), fixtures::s3(),
                          fixtures::halfline_map(), fixtures::constant_interval()}) {
    Polyhedron reg = regular_normal_cone(s, vec({0}), vec({0}));
    PolyUnion lim = limiting_normal_cone(s, vec({0}), vec({0}));
    CHECK(union_contains(lim, PolyUnion::single(reg)));
  }
}

TEST_CASE("coderivative of the halfline map lives on u <= 0") {
  // N = R+(-1,1), so v in D*S(0|0)(u) iff (v,-u) = t(-1,1): v = u, u <= 0.
  PHMap d = coderivative(fixtures::halfline_map(), vec({0}), vec({0}));
  PolyUnion expected(2, {poly(2, {iq({1, -1}, 0), iq({-1, 1}, 0), iq({1, 0}, 0)})});
  CHECK(same_set(d.graph, expected));
}

TEST_CASE("coderivative of S1 at u = 1 is {-1, 1}") {
  PHMap d = coderivative(fixtures::s1(), vec({0}), vec({0}));
  PolyUnion f = d.fiber(vec({1}));
  PolyUnion expected(1, {Polyhedron::point(vec({-1})), Polyhedron::point(vec({1}))});
  CHECK(same_set(f, expected));
}

TEST_CASE("coderivative of a smooth line graph is the adjoint") {
  PwpMap line(1, 1, PolyUnion(2, {poly(2, {iq({2, -1}, 0), iq({-2, 1}, 0)})}));  // y = 2x
  PHMap d = coderivative(line, vec({0}), vec({0}));
  PolyUnion expected(2, {poly(2, {iq({2, -1}, 0), iq({-2, 1}, 0)})});  // v = 2u
  CHECK(same_set(d.graph, expected));
}

TEST_CASE("convexified coderivative hulls the S1 fibers") {
  PHMap d = convexified_coderivative(fixtures::s1(), vec({0}), vec({0}));
  PolyUnion f = d.fiber(vec({1}));
  PolyUnion expected(1, {poly(1, {iq({1}, 1), iq({-1}, 1)})});  // [-1, 1]
  CHECK(same_set(f, expected));
  PHMap raw = coderivative(fixtures::s1(), vec({0}), vec({0}));
  CHECK(union_contains(d.graph, raw.graph));
}

TEST_CASE("tangent-polar duality on fixtures") {
  for (const PwpMap& s : {fixtures::s1(), fixtures::s2(), fixtures::s3(),
                          fixtures::halfline_map()}) {
    Polyhedron reg = regular_normal_cone(s, vec({0}), vec({0}));
    PolyUnion t = tangent_cone(s.graph, vec({0, 0}));
    Polyhedron hull = conic_hull_of_union(t);
    CHECK(reg.equals(hull.polar()));
  }
}
