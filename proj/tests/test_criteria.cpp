#include <doctest.h>

#include "helpers.hpp"
#include "varkit/criteria.hpp"
#include "varkit/oracle.hpp"

using namespace varkit;
using namespace varkit::testing;

namespace {

// Independent grid oracle for ||G||- of maps R => R: sup over sampled unit
// |w| of the LP distance from 0 to the fiber.
Rat inner_norm_grid(const PHMap& g, long steps = 16) {
  Rat best = 0;
  for (long k = -steps; k <= steps; ++k) {
    RatVec w = {rat(k, steps)};
    ExtRat d = dist_to_union(zero_vec(1), g.fiber(w), NormKind::Inf);
    REQUIRE(!d.is_inf());
    if (best < d.value) best = d.value;
  }
  return best;
}

// Re-runs the pointwise emptiness test behind a failed certificate: some
// limit cone's fiber must miss -H(-p) at the witness.
bool witness_reproduces_failure(const PwpMap& s, const RatVec& x, const RatVec& y,
                                const Prefan& h, const RatVec& p) {
  LimitConeSet lc = limit_cones(s, x, y, false);
  RatVec neg_p = vscale(rat(-1), p);
  PolyUnion mirrored = h.fiber(neg_p).negate();  // -H(-p)
  for (const auto& g : lc.cones) {
    std::vector<Polyhedron> ps;
    for (const auto& piece : g.pieces()) ps.push_back(piece.slice_prefix(p));
    PolyUnion fib(s.m, ps);
    bool meets = false;
    for (const auto& a : fib.pieces())
      for (const auto& b : mirrored.pieces())
        if (!a.intersect(b).is_empty()) meets = true;
    if (!meets) return true;
  }
  return false;
}

PwpMap scale_codomain(const PwpMap& s, const Rat& k) {
  RatMat m(s.n + s.m, zero_vec(s.n + s.m));
  for (std::size_t i = 0; i < s.n; ++i) m[i][i] = 1;
  for (std::size_t i = 0; i < s.m; ++i) m[s.n + i][s.n + i] = k;
  return PwpMap(s.n, s.m, s.graph.linear_image(m));
}

Prefan scale_prefan_codomain(const Prefan& h, const Rat& k) {
  RatMat m(h.n + h.m, zero_vec(h.n + h.m));
  for (std::size_t i = 0; i < h.n; ++i) m[i][i] = 1;
  for (std::size_t i = 0; i < h.m; ++i) m[h.n + i][h.n + i] = k;
  std::vector<PrefanCell> cells;
  for (const auto& c : h.cells) cells.push_back(PrefanCell{c.domain, c.graph.linear_image(m)});
  return Prefan(h.n, h.m, cells, h.norms);
}

}  // namespace

TEST_CASE("inner norms of the G cones") {
  NormPair inf_pair;
  CHECK(inner_norm(PHMap(1, 1, fixtures::g_graph(5)), inf_pair) == ExtRat(rat(0)));

  PHMap g1(1, 1, fixtures::g_graph(1));
  ExtRat n1 = inner_norm(g1, inf_pair);
  REQUIRE(!n1.is_inf());
  CHECK(n1.value == rat(1));
  CHECK(n1.value == inner_norm_grid(g1));

  PHMap g6(1, 1, fixtures::g_graph(6));
  CHECK(inner_norm(g6, inf_pair) == ExtRat(rat(1)));
  CHECK(inner_norm_grid(g6) == rat(1));

  // Empty fibers on a halfline make the inner norm infinite.
  PHMap partial(1, 1, PolyUnion(2, {poly(2, {iq({-1, 0}, 0), iq({1, -1}, 0), iq({-1, 1}, 0)})}));
  CHECK(inner_norm(partial, inf_pair).is_inf());
}

TEST_CASE("outer norms") {
  NormPair inf_pair;
  CHECK(outer_norm(fixtures::prefan_abs().as_phmap(), inf_pair) == ExtRat(rat(1)));
  CHECK(outer_norm(fixtures::prefan_half_abs().as_phmap(), inf_pair) == ExtRat(rat(1)));
  CHECK(outer_norm(PHMap(1, 1, fixtures::g_graph(1)), inf_pair).is_inf());
  CHECK(outer_norm(fixtures::prefan_zero().as_phmap(), inf_pair) == ExtRat(rat(0)));
}

TEST_CASE("norm machinery rejects the Euclidean approximation") {
  NormPair bad{NormKind::TwoApprox, NormKind::Inf};
  CHECK_THROWS_AS(inner_norm(fixtures::prefan_abs().as_phmap(), bad), NonPolyhedralNorm);
  CHECK_THROWS_AS(lip_via_normals(fixtures::s1(), vec({0}), vec({0}), bad), NonPolyhedralNorm);
}

TEST_CASE("lip of the fixture maps is 1 by every route") {
  NormPair norms;
  for (const PwpMap& s : {fixtures::s1(), fixtures::s2(), fixtures::halfline_map()}) {
    ExtRat a = lip_via_tangents(s, vec({0}), vec({0}), norms, false);
    ExtRat b = lip_via_tangents(s, vec({0}), vec({0}), norms, true);
    ExtRat c = lip_via_normals(s, vec({0}), vec({0}), norms);
    CHECK(a == ExtRat(rat(1)));
    CHECK(b == ExtRat(rat(1)));
    CHECK(c == ExtRat(rat(1)));
  }
}

TEST_CASE("lip of the constant-interval map is 0") {
  NormPair norms;
  PwpMap s = fixtures::constant_interval();
  CHECK(lip_via_tangents(s, vec({0}), vec({0}), norms, false) == ExtRat(rat(0)));
  CHECK(lip_via_normals(s, vec({0}), vec({0}), norms) == ExtRat(rat(0)));
}

TEST_CASE("vertical line graph has infinite modulus") {
  PwpMap s(1, 1, PolyUnion(2, {poly(2, {iq({1, 0}, 0), iq({-1, 0}, 0)})}));  // x = 0
  NormPair norms;
  CHECK(lip_via_normals(s, vec({0}), vec({0}), norms).is_inf());
  CHECK(lip_via_tangents(s, vec({0}), vec({0}), norms, false).is_inf());
  Certificate c = lip_certificate(s, vec({0}), vec({0}), norms);
  CHECK(c.verdict == Verdict::Fails);
  REQUIRE(c.witness_normal.has_value());
  CHECK(!is_zero(c.witness_normal->first));
  CHECK(is_zero(c.witness_normal->second));
}

TEST_CASE("graphical regularity detection") {
  CHECK(is_graphically_regular(fixtures::halfline_map(), vec({0}), vec({0})));
  CHECK_FALSE(is_graphically_regular(fixtures::s1(), vec({0}), vec({0})));
  CHECK_FALSE(is_graphically_regular(fixtures::s2(), vec({0}), vec({0})));
  CHECK_FALSE(is_graphically_regular(fixtures::s3(), vec({0}), vec({0})));
  PwpMap affine(1, 1, PolyUnion(2, {poly(2, {iq({2, -1}, 0), iq({-2, 1}, 0)})}));
  CHECK(is_graphically_regular(affine, vec({0}), vec({0})));
}

TEST_CASE("certify S1 with H = [-|p|, |p|] on every route") {
  PwpMap s1 = fixtures::s1();
  Prefan h = fixtures::prefan_abs();
  for (Route r : {Route::PrimalTangent, Route::PrimalConvexified, Route::DualNormal,
                  Route::Auto}) {
    Certificate c = certify_prefan(s1, vec({0}), vec({0}), h, r);
    CHECK(c.holds());
  }
}

TEST_CASE("certify S1 with H = [-|p|/2, |p|] fails with a checkable witness") {
  PwpMap s1 = fixtures::s1();
  Prefan h = fixtures::prefan_half_abs();
  for (Route r : {Route::PrimalTangent, Route::PrimalConvexified, Route::DualNormal,
                  Route::Auto}) {
    Certificate c = certify_prefan(s1, vec({0}), vec({0}), h, r);
    CHECK(c.verdict == Verdict::Fails);
    REQUIRE(c.witness_direction.has_value());
    CHECK(witness_reproduces_failure(s1, vec({0}), vec({0}), h, *c.witness_direction));
  }
}

TEST_CASE("certify the halfline map with H = max(0, .) via the fast path") {
  PwpMap s = fixtures::halfline_map();
  Prefan h = fixtures::prefan_max0();
  Certificate autoc = certify_prefan(s, vec({0}), vec({0}), h, Route::Auto);
  CHECK(autoc.holds());
  CHECK(autoc.route == Route::ClarkeFastpath);
  CHECK(certify_prefan(s, vec({0}), vec({0}), h, Route::PrimalTangent).holds());
  CHECK(certify_prefan(s, vec({0}), vec({0}), h, Route::DualNormal).holds());
}

TEST_CASE("certify S2: abs prefan holds, identity prefan fails") {
  PwpMap s2 = fixtures::s2();
  CHECK(certify_prefan(s2, vec({0}), vec({0}), fixtures::prefan_abs(), Route::Auto).holds());
  Certificate c = certify_prefan(s2, vec({0}), vec({0}), fixtures::prefan_identity(), Route::Auto);
  CHECK(c.verdict == Verdict::Fails);
  REQUIRE(c.witness_direction.has_value());
  CHECK(witness_reproduces_failure(s2, vec({0}), vec({0}), fixtures::prefan_identity(),
                                   *c.witness_direction));
}

TEST_CASE("invalid prefans are not applicable") {
  Polyhedron dom = Polyhedron::whole_space(1);
  Prefan nonconvex(1, 1,
                   {PrefanCell{dom, poly(2, {iq({1, -1}, 0), iq({-1, 1}, 0)})},
                    PrefanCell{dom, poly(2, {iq({1, 1}, 0), iq({-1, -1}, 0)})}});
  Certificate c = certify_prefan(fixtures::s1(), vec({0}), vec({0}), nonconvex, Route::Auto);
  CHECK(c.verdict == Verdict::NotApplicable);
}

TEST_CASE("certification is monotone in the prefan") {
  // H2 = [-|p|,|p|] holds for S1, so the wider H1 = [-2|p|, 2|p|] holds too.
  Prefan h2 = fixtures::prefan_abs();
  Prefan h1 = scale_prefan_codomain(h2, rat(2));
  REQUIRE(union_contains(h1.graph_union(), h2.graph_union()));
  CHECK(certify_prefan(fixtures::s1(), vec({0}), vec({0}), h2, Route::Auto).holds());
  CHECK(certify_prefan(fixtures::s1(), vec({0}), vec({0}), h1, Route::Auto).holds());
}

TEST_CASE("codomain scaling: verdicts transport, lip scales") {
  NormPair norms;
  PwpMap s1 = fixtures::s1();
  PwpMap scaled = scale_codomain(s1, rat(2));
  Prefan h = fixtures::prefan_abs();
  Prefan hs = scale_prefan_codomain(h, rat(2));
  CHECK(certify_prefan(scaled, vec({0}), vec({0}), hs, Route::Auto).holds());
  Certificate c = certify_prefan(scaled, vec({0}), vec({0}), fixtures::prefan_half_abs(),
                                 Route::Auto);
  CHECK(c.verdict == Verdict::Fails);
  CHECK(lip_via_normals(scaled, vec({0}), vec({0}), norms) == ExtRat(rat(2)));
  CHECK(lip_via_tangents(scaled, vec({0}), vec({0}), norms, true) == ExtRat(rat(2)));
}

TEST_CASE("Aubin property as the ball-prefan special case") {
  NormPair norms;
  for (const PwpMap& s : {fixtures::s1(), fixtures::s2(), fixtures::halfline_map()}) {
    ExtRat lip = lip_via_normals(s, vec({0}), vec({0}), norms);
    REQUIRE(!lip.is_inf());
    Prefan at = ball_prefan(lip.value, s.n, s.m, norms);
    CHECK(certify_prefan(s, vec({0}), vec({0}), at, Route::Auto).holds());
    Prefan above = ball_prefan(lip.value + rat(1, 4), s.n, s.m, norms);
    CHECK(certify_prefan(s, vec({0}), vec({0}), above, Route::Auto).holds());
    if (sgn(lip.value) > 0) {
      Prefan below = ball_prefan(lip.value - rat(1, 4), s.n, s.m, norms);
      Certificate c = certify_prefan(s, vec({0}), vec({0}), below, Route::Auto);
      CHECK(c.verdict == Verdict::Fails);
    }
  }
}

TEST_CASE("certificates carry norms and notes") {
  Certificate c =
      certify_prefan(fixtures::s1(), vec({0}), vec({0}), fixtures::prefan_abs(), Route::Auto);
  CHECK(c.norms.domain == NormKind::Inf);
  CHECK_FALSE(c.notes.empty());
}
