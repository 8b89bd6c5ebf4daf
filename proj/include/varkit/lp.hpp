#pragma once

#include <vector>

#include "varkit/linalg.hpp"

namespace varkit::lp {

enum class Status { Optimal, Unbounded, Infeasible };

struct Result {
  Status status = Status::Infeasible;
  Rat value;    // objective at optimum
  RatVec point; // optimizer (original variables)
  bool optimal() const { return status == Status::Optimal; }
};

// Exact rational simplex (two phases, Bland's rule), variables free.
//   minimize c.x  s.t.  A x <= b,  E x = f
Result minimize(const RatVec& c, const RatMat& a, const RatVec& b, const RatMat& e = {},
                const RatVec& f = {});

Result maximize(const RatVec& c, const RatMat& a, const RatVec& b, const RatMat& e = {},
                const RatVec& f = {});

bool feasible(const RatMat& a, const RatVec& b, const RatMat& e = {}, const RatVec& f = {});

}  // namespace varkit::lp
