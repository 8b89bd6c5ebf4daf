#include "varkit/lp.hpp"

#include <cassert>
#include <cstddef>
#include <limits>

namespace varkit::lp {
namespace {

// Dense tableau over rationals. Columns: structural variables (split into
// positive/negative parts), slacks, artificials, rightmost column is the rhs.
struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes rhs
  RatMat t;                        // rows x (cols + 1)
  std::vector<std::size_t> basis;  // basic column per row
  RatVec obj;                      // reduced-cost row, size cols + 1 (last = -objective value)

  void price_out(std::size_t row) {
    Rat f = obj[basis[row]];
    if (sgn(f) == 0) return;
    for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[row][j];
  }

  void pivot(std::size_t row, std::size_t col) {
    Rat inv = 1 / t[row][col];
    for (auto& x : t[row]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(t[i][col]) == 0) continue;
      Rat f = t[i][col];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[row][j];
    }
    Rat f = obj[col];
    if (sgn(f) != 0)
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[row][j];
    basis[row] = col;
  }

  // Bland's rule; returns false when optimal, throws-free unbounded flag via out.
  enum class Step { Optimal, Pivoted, Unbounded };
  Step step(std::size_t usable_cols) {
    std::size_t enter = usable_cols;
    for (std::size_t j = 0; j < usable_cols; ++j) {
      if (sgn(obj[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == usable_cols) return Step::Optimal;
    std::size_t leave = rows;
    Rat best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rat ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Pivoted;
  }
};

}  // namespace

Result minimize(const RatVec& c, const RatMat& a, const RatVec& b, const RatMat& e,
                const RatVec& f) {
  const std::size_t n = c.size();
  const std::size_t mi = a.size(), me = e.size();
  const std::size_t rows = mi + me;
  const std::size_t n_split = 2 * n;
  const std::size_t n_struct = n_split + mi;    // + slacks
  const std::size_t n_total = n_struct + rows;  // + artificials

  Tableau tb;
  tb.rows = rows;
  tb.cols = n_total;
  tb.t.assign(rows, RatVec(n_total + 1, Rat(0)));
  tb.basis.assign(rows, 0);

  for (std::size_t i = 0; i < rows; ++i) {
    const RatVec& row = i < mi ? a[i] : e[i - mi];
    Rat rhs = i < mi ? b[i] : f[i - mi];
    assert(row.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
      tb.t[i][j] = row[j];
      tb.t[i][n + j] = -row[j];
    }
    if (i < mi) tb.t[i][n_split + i] = 1;
    tb.t[i][n_total] = rhs;
    if (sgn(tb.t[i][n_total]) < 0)
      for (auto& x : tb.t[i]) x = -x;
    tb.t[i][n_struct + i] = 1;
    tb.basis[i] = n_struct + i;
  }

  // Phase 1: minimize the sum of artificials.
  tb.obj.assign(n_total + 1, Rat(0));
  for (std::size_t j = n_struct; j < n_total; ++j) tb.obj[j] = 1;
  for (std::size_t i = 0; i < rows; ++i) tb.price_out(i);
  while (tb.step(n_total) == Tableau::Step::Pivoted) {
  }
  if (sgn(tb.obj[n_total]) != 0) return {Status::Infeasible, Rat(0), {}};

  // Drive leftover artificials out of the basis; drop rows that are redundant.
  for (std::size_t i = 0; i < rows; ++i) {
    if (tb.basis[i] < n_struct) continue;
    std::size_t col = n_struct;
    for (std::size_t j = 0; j < n_struct; ++j) {
      if (sgn(tb.t[i][j]) != 0) {
        col = j;
        break;
      }
    }
    if (col < n_struct) tb.pivot(i, col);
    // else: zero row, harmless to keep (artificial stays basic at level 0)
  }

  // Phase 2 over structural columns only.
  tb.obj.assign(n_total + 1, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    tb.obj[j] = c[j];
    tb.obj[n + j] = -c[j];
  }
  for (std::size_t i = 0; i < rows; ++i) tb.price_out(i);
  for (;;) {
    auto s = tb.step(n_struct);
    if (s == Tableau::Step::Unbounded) return {Status::Unbounded, Rat(0), {}};
    if (s == Tableau::Step::Optimal) break;
  }

  RatVec x = zero_vec(n);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t j = tb.basis[i];
    if (j < n)
      x[j] += tb.t[i][n_total];
    else if (j < n_split)
      x[j - n] -= tb.t[i][n_total];
  }
  Rat val = 0;
  for (std::size_t j = 0; j < n; ++j) val += c[j] * x[j];
  return {Status::Optimal, val, x};
}

Result maximize(const RatVec& c, const RatMat& a, const RatVec& b, const RatMat& e,
                const RatVec& f) {
  RatVec neg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
  Result r = minimize(neg, a, b, e, f);
  if (r.status == Status::Optimal) r.value = -r.value;
  return r;
}

bool feasible(const RatMat& a, const RatVec& b, const RatMat& e, const RatVec& f) {
  std::size_t n = 0;
  if (!a.empty()) n = a[0].size();
  if (!e.empty()) n = e[0].size();
  Result r = minimize(zero_vec(n), a, b, e, f);
  return r.status == Status::Optimal;
}

}  // namespace varkit::lp
