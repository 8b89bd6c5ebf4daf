#pragma once

#include "varkit/criteria.hpp"

namespace varkit {

// First-order data of a constraint system S(x) = F(x) - D at a reference
// point: the Jacobian, the polyhedral convex right-hand set, and the residual
// zbar = F(xbar) - ubar, which must lie in D.
struct ConstraintSystem {
  std::size_t n = 0, m = 0;
  RatMat jacobian;  // m x n
  Polyhedron d;     // in R^m, closed convex polyhedral
  RatVec residual;  // zbar in D

  ConstraintSystem(std::size_t n_, std::size_t m_, RatMat jac, Polyhedron d_, RatVec residual_);
};

Polyhedron tangent_cone_of_d(const ConstraintSystem& sys);
Polyhedron normal_cone_of_d(const ConstraintSystem& sys);

// T_gph(S^-1)(ubar, xbar) = {(p, q) : grad F q - p in T_D(zbar)}.
PHMap inverse_tangent(const ConstraintSystem& sys);

struct CqResult {
  bool holds = false;
  std::optional<RatVec> witness_y;  // nonzero normal in ker(grad F^T) on failure
};

// Constraint qualification: y in N_D(zbar) with grad F^T y = 0 forces y = 0.
CqResult check_cq(const ConstraintSystem& sys);

struct MfcqResult {
  bool holds = false;
  std::optional<RatVec> witness_w;  // strictly feasible direction when it holds
};

// Mangasarian-Fromovitz test for D = {0}^r x R_-^{m-r}: full-row-rank equality
// gradients plus a direction strictly decreasing the active inequalities.
MfcqResult check_mfcq(const ConstraintSystem& sys);

// Aubin modulus of S^-1: max ||y|| / ||grad F^T y|| over N_D(zbar) \ {0} in the
// norms dual to the given pair. Throws CqFails when the CQ fails.
ExtRat constraint_lip(const ConstraintSystem& sys, NormPair norms);

// Sufficient certificate for pseudo strict H-differentiability of S^-1 per
// the tangent condition: every p != 0 admits q in -H(-p) with
// grad F q - p in T_D(zbar).
Certificate certify_constraint_prefan(const ConstraintSystem& sys, const Prefan& h);

// The graph of S^-1 for affine F with F(xbar) = residual at xbar = 0, ubar = 0;
// lets the generic machinery cross-check the constraint-specific formulas.
PwpMap materialize_inverse(const ConstraintSystem& sys);

}  // namespace varkit
