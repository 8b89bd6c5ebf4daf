#pragma once

#include <cstddef>
#include <vector>

#include "varkit/rational.hpp"

namespace varkit {

using RatMat = std::vector<RatVec>;  // row major

Rat dot(const RatVec& a, const RatVec& b);
RatVec vadd(const RatVec& a, const RatVec& b);
RatVec vsub(const RatVec& a, const RatVec& b);
RatVec vscale(const Rat& k, const RatVec& a);
bool is_zero(const RatVec& a);
RatVec zero_vec(std::size_t n);

// Scales a nonzero vector so its entries are coprime integers and returns the
// (positive) factor applied. Keeps double-description intermediates small.
RatVec normalize_ray(const RatVec& a);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<std::size_t> rref(RatMat& m);

std::size_t rank(RatMat m);

// Solves A x = b exactly. Empty optional when inconsistent; when the system is
// underdetermined an arbitrary solution (free vars = 0) is returned.
std::optional<RatVec> solve(RatMat a, RatVec b);

// Matrix-vector products for the constraints module.
RatVec mat_vec(const RatMat& m, const RatVec& x);
RatMat transpose(const RatMat& m);

}  // namespace varkit
