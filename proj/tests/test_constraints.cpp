#include <doctest.h>

#include "helpers.hpp"
#include "varkit/constraints.hpp"

using namespace varkit;
using namespace varkit::testing;

namespace {

Polyhedron r_minus(std::size_t m, std::size_t r) {
  // {0}^r x R_-^(m-r)
  std::vector<Ineq> iq;
  for (std::size_t i = 0; i < m; ++i) {
    RatVec a = zero_vec(m);
    a[i] = 1;
    iq.push_back(Ineq{a, rat(0)});
    if (i < r) {
      RatVec na = zero_vec(m);
      na[i] = -1;
      iq.push_back(Ineq{na, rat(0)});
    }
  }
  return Polyhedron::from_ineqs(m, std::move(iq));
}

ConstraintSystem sys_1d(long grad, std::size_t r = 0) {
  return ConstraintSystem(1, 1, {{rat(grad)}}, r_minus(1, r), vec({0}));
}

RandomGeom rng(515151);

ConstraintSystem random_mfcq_system(std::size_t n, std::size_t m) {
  std::size_t r = static_cast<std::size_t>(rng.small_int(0, static_cast<long>(m)));
  RatMat jac;
  for (std::size_t i = 0; i < m; ++i) jac.push_back(rng.vec(n));
  RatVec z = zero_vec(m);
  for (std::size_t i = r; i < m; ++i) z[i] = rat(rng.small_int(-1, 0));  // active or interior
  return ConstraintSystem(n, m, jac, r_minus(m, r), z);
}

}  // namespace

TEST_CASE("constraint system validation") {
  CHECK_THROWS_AS(ConstraintSystem(1, 1, {{rat(1)}}, r_minus(1, 0), vec({1})), ResidualNotInD);
  CHECK_THROWS_AS(ConstraintSystem(2, 1, {{rat(1)}}, r_minus(1, 0), vec({0})),
                  DimensionMismatch);
}

TEST_CASE("inverse tangent cone examples") {
  // grad F = 1, D = R_-: T_D(0) = R_-, cone {(p,q): q - p <= 0}.
  PHMap t1 = inverse_tangent(sys_1d(1));
  CHECK(relate(t1.graph, PolyUnion(2, {poly(2, {iq({-1, 1}, 0)})})).rel == Relation::Equal);

  // grad F = 2, D = {0}: cone {(p,q): 2q = p}.
  ConstraintSystem eq(1, 1, {{rat(2)}}, r_minus(1, 1), vec({0}));
  PHMap t2 = inverse_tangent(eq);
  CHECK(relate(t2.graph, PolyUnion(2, {poly(2, {iq({-1, 2}, 0), iq({1, -2}, 0)})})).rel ==
        Relation::Equal);

  // D = R^m: no constraint at all.
  ConstraintSystem freev(1, 1, {{rat(1)}}, Polyhedron::whole_space(1), vec({0}));
  CHECK(relate(inverse_tangent(freev).graph, PolyUnion(2, {Polyhedron::whole_space(2)})).rel ==
        Relation::Equal);
}

TEST_CASE("check_cq examples") {
  CHECK(check_cq(sys_1d(2)).holds);  // N_D(0) = R_+, 2y = 0 forces y = 0

  // Zero gradient on an equality coordinate: witness survives.
  ConstraintSystem bad(1, 2, {{rat(0)}, {rat(1)}}, r_minus(2, 1), vec({0, 0}));
  CqResult r = check_cq(bad);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness_y.has_value());
  CHECK(!is_zero(*r.witness_y));
  // The witness genuinely lies in N_D with grad F^T y = 0.
  CHECK(normal_cone_of_d(bad).contains(*r.witness_y));
  CHECK(sgn(dot(transpose(bad.jacobian)[0], *r.witness_y)) == 0);

  // Interior residual: N_D = {0}, CQ vacuous.
  ConstraintSystem interior(1, 1, {{rat(1)}}, r_minus(1, 0), vec({-1}));
  CHECK(check_cq(interior).holds);
}

TEST_CASE("check_mfcq examples") {
  MfcqResult a = check_mfcq(sys_1d(1));
  CHECK(a.holds);
  REQUIRE(a.witness_w.has_value());
  CHECK(sgn((*a.witness_w)[0]) < 0);

  ConstraintSystem zero_eq(1, 1, {{rat(0)}}, r_minus(1, 1), vec({0}));
  CHECK_FALSE(check_mfcq(zero_eq).holds);

  ConstraintSystem ident(2, 2, {{rat(1), rat(0)}, {rat(0), rat(1)}}, r_minus(2, 0),
                         vec({0, 0}));
  MfcqResult b = check_mfcq(ident);
  CHECK(b.holds);
  REQUIRE(b.witness_w.has_value());
  CHECK(sgn((*b.witness_w)[0]) < 0);
  CHECK(sgn((*b.witness_w)[1]) < 0);

  ConstraintSystem notshape(1, 1, {{rat(1)}}, poly(1, {iq({1}, 1)}), vec({0}));
  CHECK_THROWS_AS(check_mfcq(notshape), WrongDShape);
}

TEST_CASE("cq and mfcq agree on random product-form systems") {
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.small_int(0, 2));
    std::size_t m = 1 + static_cast<std::size_t>(rng.small_int(0, 2));
    ConstraintSystem sys = random_mfcq_system(n, m);
    CHECK(check_cq(sys).holds == check_mfcq(sys).holds);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("constraint_lip examples") {
  NormPair norms;
  CHECK(constraint_lip(sys_1d(2), norms) == ExtRat(rat(1, 2)));
  CHECK(constraint_lip(sys_1d(1), norms) == ExtRat(rat(1)));
  ConstraintSystem interior(1, 1, {{rat(1)}}, r_minus(1, 0), vec({-1}));
  CHECK(constraint_lip(interior, norms) == ExtRat(rat(0)));

  ConstraintSystem bad(1, 1, {{rat(0)}}, r_minus(1, 1), vec({0}));
  CHECK_THROWS_AS(constraint_lip(bad, norms), CqFails);
}

TEST_CASE("constraint_lip equals lip_via_normals on the materialized inverse") {
  NormPair norms;
  int agreements = 0;
  for (int t = 0; t < 25; ++t) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.small_int(0, 1));
    std::size_t m = 1 + static_cast<std::size_t>(rng.small_int(0, 1));
    ConstraintSystem sys = random_mfcq_system(n, m);
    PwpMap inv = materialize_inverse(sys);
    RatVec u0 = zero_vec(m), x0 = zero_vec(n);
    REQUIRE(inv.on_graph(u0, x0));
    ExtRat via_normals = lip_via_normals(inv, u0, x0, norms);
    if (check_cq(sys).holds) {
      CHECK(constraint_lip(sys, norms) == via_normals);
    } else {
      CHECK(via_normals.is_inf());
    }
    ++agreements;
  }
  CHECK(agreements == 25);
}

TEST_CASE("certify_constraint_prefan examples") {
  // grad F = 1, D = R_-, H(p) = {p}: q = p works for every p.
  CHECK(certify_constraint_prefan(sys_1d(1), fixtures::prefan_identity()).holds());

  // H(p) = {0} covers only p >= 0; the certificate fails with a witness.
  Certificate c = certify_constraint_prefan(sys_1d(1), fixtures::prefan_zero());
  CHECK(c.verdict == Verdict::Fails);
  REQUIRE(c.witness_direction.has_value());
  {
    // Re-check the witness by hand: q = 0 must fail grad F q - p in T_D.
    Rat p = (*c.witness_direction)[0];
    CHECK(sgn(-p) > 0);  // -p in T_D(0) = R_- fails exactly when p < 0
  }

  // grad F = 2, D = R_-, H = [-|p|, |p|]: q = -|p| always works.
  CHECK(certify_constraint_prefan(sys_1d(2), fixtures::prefan_abs()).holds());
}

TEST_CASE("constraint certificates agree with the generic fast path") {
  for (long grad : {1L, 2L, -3L}) {
    ConstraintSystem sys = sys_1d(grad);
    PwpMap inv = materialize_inverse(sys);
    for (const Prefan& h : {fixtures::prefan_identity(), fixtures::prefan_abs(),
                            fixtures::prefan_zero()}) {
      Certificate direct = certify_constraint_prefan(sys, h);
      Certificate generic =
          certify_prefan(inv, zero_vec(1), zero_vec(1), h, Route::ClarkeFastpath);
      CHECK(direct.holds() == generic.holds());
    }
  }
}

TEST_CASE("aubin ball prefan at the constraint modulus") {
  NormPair norms;
  ConstraintSystem sys = sys_1d(2);
  ExtRat lip = constraint_lip(sys, norms);
  REQUIRE(!lip.is_inf());
  REQUIRE(sgn(lip.value) > 0);
  Prefan at = ball_prefan(lip.value, 1, 1, norms);
  CHECK(certify_constraint_prefan(sys, at).holds());
  Prefan below = ball_prefan(lip.value - rat(1, 4), 1, 1, norms);
  CHECK(certify_constraint_prefan(sys, below).verdict == Verdict::Fails);
}
