#include "varkit/constraints.hpp"

#include <cassert>

#include "varkit/lp.hpp"

namespace varkit {

ConstraintSystem::ConstraintSystem(std::size_t n_, std::size_t m_, RatMat jac, Polyhedron d_,
                                   RatVec residual_)
    : n(n_), m(m_), jacobian(std::move(jac)), d(std::move(d_)), residual(std::move(residual_)) {
  if (jacobian.size() != m) throw DimensionMismatch("jacobian row count");
  for (const auto& row : jacobian)
    if (row.size() != n) throw DimensionMismatch("jacobian column count");
  if (d.dim() != m || residual.size() != m) throw DimensionMismatch("D / residual dimension");
  if (!d.contains(residual)) throw ResidualNotInD("constraint system residual");
}

Polyhedron tangent_cone_of_d(const ConstraintSystem& sys) {
  std::vector<Ineq> iq;
  for (auto i : sys.d.active_indices(sys.residual))
    iq.push_back(Ineq{sys.d.ineqs()[i].a, Rat(0)});
  return Polyhedron::from_ineqs(sys.m, std::move(iq));
}

Polyhedron normal_cone_of_d(const ConstraintSystem& sys) { return tangent_cone_of_d(sys).polar(); }

PHMap inverse_tangent(const ConstraintSystem& sys) {
  // Rows g.(grad F q - p) <= 0 over (p, q) in R^{m+n}.
  Polyhedron td = tangent_cone_of_d(sys);
  std::vector<Ineq> iq;
  for (const auto& row : td.ineqs()) {
    RatVec a(sys.m + sys.n);
    for (std::size_t k = 0; k < sys.m; ++k) a[k] = -row.a[k];
    for (std::size_t k = 0; k < sys.n; ++k) {
      Rat c = 0;
      for (std::size_t i = 0; i < sys.m; ++i) c += row.a[i] * sys.jacobian[i][k];
      a[sys.m + k] = c;
    }
    iq.push_back(Ineq{a, Rat(0)});
  }
  return PHMap(sys.m, sys.n,
               PolyUnion::single(Polyhedron::from_ineqs(sys.m + sys.n, std::move(iq))));
}

namespace {

// {(y, g) : y in N_D(zbar), g = grad F^T y} as a cone in R^{m+n}.
Polyhedron normal_image_cone(const ConstraintSystem& sys) {
  Polyhedron nd = normal_cone_of_d(sys);
  std::vector<Ineq> iq;
  for (const auto& row : nd.ineqs()) {
    RatVec a = row.a;
    a.resize(sys.m + sys.n, Rat(0));
    iq.push_back(Ineq{a, Rat(0)});
  }
  RatMat jt = transpose(sys.jacobian);  // n x m
  for (std::size_t k = 0; k < sys.n; ++k) {
    RatVec a(sys.m + sys.n, Rat(0));
    for (std::size_t i = 0; i < sys.m; ++i) a[i] = jt[k][i];
    a[sys.m + k] = -1;
    iq.push_back(Ineq{a, Rat(0)});
    for (auto& c : a) c = -c;
    iq.push_back(Ineq{a, Rat(0)});
  }
  return Polyhedron::from_ineqs(sys.m + sys.n, std::move(iq));
}

}  // namespace

CqResult check_cq(const ConstraintSystem& sys) {
  Polyhedron nd = normal_cone_of_d(sys);
  std::vector<Ineq> iq = nd.ineqs();
  RatMat jt = transpose(sys.jacobian);
  for (std::size_t k = 0; k < sys.n; ++k) {
    iq.push_back(Ineq{jt[k], Rat(0)});
    RatVec neg = jt[k];
    for (auto& c : neg) c = -c;
    iq.push_back(Ineq{neg, Rat(0)});
  }
  Polyhedron kernel = Polyhedron::from_ineqs(sys.m, std::move(iq));
  for (const auto& r : kernel.gens().rays) return CqResult{false, r};
  for (const auto& l : kernel.gens().lines) return CqResult{false, l};
  return CqResult{true, std::nullopt};
}

MfcqResult check_mfcq(const ConstraintSystem& sys) {
  // D must be {0}^r x R_-^{m-r}; infer r from the coordinates pinned to zero.
  std::size_t r = 0;
  for (std::size_t i = 0; i < sys.m; ++i) {
    RatVec e = zero_vec(sys.m);
    e[i] = 1;
    bool pinned = sys.d.side_of_hyperplane(Ineq{e, Rat(0)}) == std::optional<int>(0);
    if (pinned) {
      if (r != i) throw WrongDShape("equality coordinates must come first");
      ++r;
    }
  }
  std::vector<Ineq> expect;
  for (std::size_t i = 0; i < sys.m; ++i) {
    RatVec e = zero_vec(sys.m);
    e[i] = 1;
    expect.push_back(Ineq{e, Rat(0)});
    if (i < r) {
      RatVec ne = zero_vec(sys.m);
      ne[i] = -1;
      expect.push_back(Ineq{ne, Rat(0)});
    }
  }
  if (!sys.d.equals(Polyhedron::from_ineqs(sys.m, std::move(expect))))
    throw WrongDShape("D is not of the form {0}^r x R_-^(m-r)");

  RatMat eq_rows(sys.jacobian.begin(), sys.jacobian.begin() + r);
  if (rank(eq_rows) != r) return MfcqResult{false, std::nullopt};

  // max s subject to grad F_i w + s <= 0 (active inequalities), grad F_i w = 0
  // (equalities), s <= 1. Strict feasibility <=> optimum 1.
  RatMat a;
  RatVec b;
  RatMat e;
  RatVec f;
  for (std::size_t i = 0; i < sys.m; ++i) {
    if (i < r) {
      RatVec row = sys.jacobian[i];
      row.push_back(Rat(0));
      e.push_back(row);
      f.push_back(Rat(0));
    } else if (sgn(sys.residual[i]) == 0) {
      RatVec row = sys.jacobian[i];
      row.push_back(Rat(1));
      a.push_back(row);
      b.push_back(Rat(0));
    }
  }
  RatVec cap = zero_vec(sys.n);
  cap.push_back(Rat(1));
  a.push_back(cap);
  b.push_back(Rat(1));

  RatVec obj = zero_vec(sys.n);
  obj.push_back(Rat(1));
  auto res = lp::maximize(obj, a, b, e, f);
  assert(res.optimal());
  if (res.value == Rat(1)) {
    RatVec w(res.point.begin(), res.point.end() - 1);
    return MfcqResult{true, w};
  }
  return MfcqResult{false, std::nullopt};
}

ExtRat constraint_lip(const ConstraintSystem& sys, NormPair norms) {
  if (!norm_exact(norms.domain) || !norm_exact(norms.codomain))
    throw NonPolyhedralNorm("constraint_lip");
  CqResult cq = check_cq(sys);
  if (!cq.holds) throw CqFails("constraint_lip: modulus undefined (+inf)");

  Polyhedron cone = normal_image_cone(sys);
  // max ||y||_{dual dom} over the slab ||grad F^T y||_{dual cod} <= 1.
  NormKind du = dual_kind(norms.domain), dv = dual_kind(norms.codomain);
  std::vector<Ineq> iq;
  Polyhedron dv_dual_ball = unit_ball(dual_kind(dv), sys.n);
  for (const auto& vtx : dv_dual_ball.gens().vertices) {
    RatVec a = zero_vec(sys.m + sys.n);
    for (std::size_t k = 0; k < sys.n; ++k) a[sys.m + k] = vtx[k];
    iq.push_back(Ineq{a, Rat(1)});
  }
  Polyhedron slab = cone.intersect(Polyhedron::from_ineqs(sys.m + sys.n, std::move(iq)));
  assert(slab.is_bounded());
  Rat best = 0;
  for (const auto& v : slab.gens().vertices) {
    Rat val = norm_value(du, RatVec(v.begin(), v.begin() + sys.m));
    if (val > best) best = val;
  }
  return ExtRat(best);
}

Certificate certify_constraint_prefan(const ConstraintSystem& sys, const Prefan& h) {
  Certificate cert;
  cert.query = QueryKind::Certify;
  cert.norms = h.norms;
  cert.route = Route::ClarkeFastpath;
  if (h.n != sys.m || h.m != sys.n)
    throw DimensionMismatch("constraint prefan must map R^m into R^n");
  PrefanReport rep = validate_prefan(h);
  if (!rep.ok) {
    cert.verdict = Verdict::NotApplicable;
    cert.witness_direction = rep.witness_p;
    cert.notes.push_back("prefan validation failed: " + rep.describe());
    return cert;
  }

  Polyhedron td = tangent_cone_of_d(sys);
  std::vector<Ineq> feas;  // grad F q - p in T_D(zbar), rows over (p, q)
  for (const auto& row : td.ineqs()) {
    RatVec a(sys.m + sys.n);
    for (std::size_t k = 0; k < sys.m; ++k) a[k] = -row.a[k];
    for (std::size_t k = 0; k < sys.n; ++k) {
      Rat c = 0;
      for (std::size_t i = 0; i < sys.m; ++i) c += row.a[i] * sys.jacobian[i][k];
      a[sys.m + k] = c;
    }
    feas.push_back(Ineq{a, Rat(0)});
  }
  Polyhedron feas_cone = Polyhedron::from_ineqs(sys.m + sys.n, std::move(feas));

  std::vector<Polyhedron> pieces;
  for (const auto& cell : h.cells) {
    Polyhedron sg = cell.graph.negate();  // (p, q) with (-p, -q) in gph H
    Polyhedron piece = sg.intersect(feas_cone);
    if (!piece.is_empty()) pieces.push_back(std::move(piece));
  }
  CoverageResult cr = coverage(pieces, Polyhedron::whole_space(sys.m));
  cert.notes.push_back("constraint tangent condition over " + std::to_string(pieces.size()) +
                       " cell pieces");
  if (!cr.covered) {
    cert.verdict = Verdict::Fails;
    cert.witness_direction = cr.witness;
    cert.notes.push_back("no feasible q in -H(-p) for the witness direction");
  } else {
    cert.notes.push_back("all directions admit q in -H(-p) with grad F q - p in T_D");
  }
  return cert;
}

PwpMap materialize_inverse(const ConstraintSystem& sys) {
  // gph(S^-1) = {(u, x) : grad F x + zbar - u in D}.
  std::vector<Ineq> iq;
  for (const auto& row : sys.d.ineqs()) {
    RatVec a(sys.m + sys.n);
    for (std::size_t k = 0; k < sys.m; ++k) a[k] = -row.a[k];
    for (std::size_t k = 0; k < sys.n; ++k) {
      Rat c = 0;
      for (std::size_t i = 0; i < sys.m; ++i) c += row.a[i] * sys.jacobian[i][k];
      a[sys.m + k] = c;
    }
    iq.push_back(Ineq{a, row.b - dot(row.a, sys.residual)});
  }
  return PwpMap(sys.m, sys.n,
                PolyUnion(sys.m + sys.n,
                          {Polyhedron::from_ineqs(sys.m + sys.n, std::move(iq))}));
}

}  // namespace varkit
