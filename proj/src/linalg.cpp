#include "varkit/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace varkit {

Rat dot(const RatVec& a, const RatVec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec vadd(const RatVec& a, const RatVec& b) {
  assert(a.size() == b.size());
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec vsub(const RatVec& a, const RatVec& b) {
  assert(a.size() == b.size());
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec vscale(const Rat& k, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

bool is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

RatVec zero_vec(std::size_t n) { return RatVec(n, Rat(0)); }

RatVec normalize_ray(const RatVec& a) {
  mpz_class den_lcm = 1;
  for (const auto& x : a) {
    mpz_class d = x.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class num_gcd = 0;
  std::vector<mpz_class> ints(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpq_class scaled = a[i] * Rat(den_lcm);
    scaled.canonicalize();
    ints[i] = scaled.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (num_gcd == 0) return zero_vec(a.size());
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(ints[i] / num_gcd);
  return r;
}

std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMat m) { return rref(m).size(); }

std::optional<RatVec> solve(RatMat a, RatVec b) {
  if (a.empty()) return RatVec{};
  const std::size_t rows = a.size(), cols = a[0].size();
  RatMat aug(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug);
  for (std::size_t i = 0; i < rows; ++i) {
    bool all0 = true;
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(aug[i][j]) != 0) all0 = false;
    if (all0 && sgn(aug[i][cols]) != 0) return std::nullopt;
  }
  RatVec x = zero_vec(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < cols) x[pivots[i]] = aug[i][cols];
  }
  return x;
}

RatVec mat_vec(const RatMat& m, const RatVec& x) {
  RatVec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

RatMat transpose(const RatMat& m) {
  if (m.empty()) return {};
  RatMat t(m[0].size(), RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace varkit
