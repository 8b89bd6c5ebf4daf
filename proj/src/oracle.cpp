#include "varkit/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "varkit/lp.hpp"

namespace varkit {

OracleBudget default_budget() {
  OracleBudget b;
  b.delta_grid = {rat(1), rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16)};
  b.radius_grid = {rat(1), rat(1, 2), rat(1, 4)};
  return b;
}

namespace {

void validate_budget(const OracleBudget& b) {
  auto check = [](const std::vector<Rat>& g, const char* name) {
    if (g.empty()) throw Error(std::string("oracle budget: empty ") + name);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (sgn(g[i]) <= 0) throw Error(std::string("oracle budget: nonpositive ") + name);
      if (i && !(g[i] < g[i - 1]))
        throw Error(std::string("oracle budget: ") + name + " must strictly decrease");
    }
  };
  check(b.delta_grid, "delta grid");
  check(b.radius_grid, "radius grid");
  if (b.samples_per_pair <= 0) throw Error("oracle budget: samples_per_pair must be positive");
}

// Deterministic-first candidate points in the radius-r box around xbar.
std::vector<RatVec> candidate_points(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                                     const Rat& r, const OracleBudget& budget,
                                     const std::vector<RatVec>& hints) {
  std::vector<RatVec> pts;
  auto push = [&](RatVec p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  };
  push(xbar);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (const Rat& step : {r, Rat(r / 2)}) {
      RatVec p = xbar;
      p[i] += step;
      push(p);
      p[i] -= 2 * step;
      push(p);
    }
  }
  RatVec base = xbar;
  base.insert(base.end(), ybar.begin(), ybar.end());
  for (const auto& z : local_tangent_samples(s.graph, base)) {
    RatVec dx(z.begin(), z.begin() + s.n);
    RatVec dir = vsub(dx, xbar);
    if (is_zero(dir)) continue;
    Rat len = norm_value(NormKind::Inf, dir);
    push(vadd(xbar, vscale(r / (2 * len), dir)));
  }
  for (const auto& hdir : hints) {
    if (hdir.size() != s.n || is_zero(hdir)) continue;
    Rat len = norm_value(NormKind::Inf, hdir);
    push(vadd(xbar, vscale(r / (2 * len), hdir)));
    push(vsub(xbar, vscale(r / (2 * len), hdir)));
  }
  std::mt19937_64 gen(budget.seed);
  std::uniform_int_distribution<int> num(-8, 8);
  for (int k = 0; k < budget.samples_per_pair; ++k) {
    RatVec p = xbar;
    for (std::size_t i = 0; i < s.n; ++i) p[i] += r * rat(num(gen), 8);
    push(p);
  }
  return pts;
}

std::vector<Polyhedron> rhs_pieces(const PwpMap& s, const PHMap& h, const RatVec& x_prime,
                                   const RatVec& w, const Rat& delta, NormPair norms) {
  Polyhedron ball = unit_ball(norms.codomain, s.m);
  Rat scale = delta * norm_value(norms.domain, w);
  RatMat sc(s.m, zero_vec(s.m));
  for (std::size_t i = 0; i < s.m; ++i) sc[i][i] = scale;
  Polyhedron inflation = ball.linear_image(sc);

  std::vector<Polyhedron> hfibers;
  PolyUnion hfib = h.fiber(w);
  for (const auto& piece : hfib.pieces()) hfibers.push_back(piece.minkowski(inflation));

  std::vector<Polyhedron> out;
  PolyUnion sfib = s.fiber(x_prime);
  for (const auto& sp : sfib.pieces())
    for (const auto& hp : hfibers) out.push_back(sp.minkowski(hp));
  return out;
}

}  // namespace

OracleOutcome falsify_definition(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                                 const PHMap& h, NormPair norms, const OracleBudget& budget,
                                 const std::vector<RatVec>& hint_directions) {
  validate_budget(budget);
  if (!s.on_graph(xbar, ybar)) throw PointNotInSet("falsify_definition base point");
  if (h.n != s.n || h.m != s.m) throw DimensionMismatch("oracle H dimensions");

  for (const Rat& delta : budget.delta_grid) {
    for (const Rat& radius : budget.radius_grid) {
      Polyhedron v_nbhd =
          unit_ball(norms.codomain, s.m).linear_image([&] {
            RatMat sc(s.m, zero_vec(s.m));
            for (std::size_t i = 0; i < s.m; ++i) sc[i][i] = radius;
            return sc;
          }()).translate(ybar);
      auto pts = candidate_points(s, xbar, ybar, radius, budget, hint_directions);
      for (const auto& x : pts) {
        std::vector<Polyhedron> lhs;
        PolyUnion xfib = s.fiber(x);
        for (const auto& piece : xfib.pieces()) {
          Polyhedron cl = piece.intersect(v_nbhd);
          if (!cl.is_empty()) lhs.push_back(std::move(cl));
        }
        if (lhs.empty()) continue;
        for (const auto& xp : pts) {
          if (xp == x) continue;
          RatVec w = vsub(x, xp);
          auto rhs = rhs_pieces(s, h, xp, w, delta, norms);
          for (const auto& lp : lhs) {
            auto witness = covers(rhs, lp);
            if (witness.has_value()) {
              // Exact re-verification of the reported counterexample.
              assert(lp.contains(*witness));
              for (const auto& rp : rhs) assert(!rp.contains(*witness));
              return OracleOutcome{Violation{x, xp, delta, radius, *witness}};
            }
          }
        }
      }
    }
  }
  return OracleOutcome{};
}

ExtRat dist_to_union(const RatVec& y, const PolyUnion& u, NormKind k) {
  if (!norm_exact(k)) throw NonPolyhedralNorm("dist_to_union");
  if (u.is_empty()) return ExtRat::inf();
  const std::size_t m = u.dim();
  std::optional<Rat> best;
  for (const auto& piece : u.pieces()) {
    // Variables (z, t) or (z, s_1..s_m); minimize the norm of y - z over z.
    RatMat a;
    RatVec b;
    std::size_t extra = k == NormKind::Inf ? 1 : m;
    for (const auto& iq : piece.ineqs()) {
      RatVec row = iq.a;
      row.resize(m + extra, Rat(0));
      a.push_back(row);
      b.push_back(iq.b);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t slack = k == NormKind::Inf ? m : m + i;
      RatVec row = zero_vec(m + extra);
      row[i] = -1;
      row[slack] = -1;
      a.push_back(row);
      b.push_back(-y[i]);  // y_i - z_i <= t
      row[i] = 1;
      a.push_back(row);
      b.push_back(y[i]);  // z_i - y_i <= t
    }
    RatVec c = zero_vec(m + extra);
    for (std::size_t i = m; i < m + extra; ++i) c[i] = 1;
    auto res = lp::minimize(c, a, b);
    assert(res.optimal());
    if (!best.has_value() || res.value < *best) best = res.value;
  }
  return ExtRat(*best);
}

ExtRat sample_lip_lower_bound(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                              const OracleBudget& budget, NormPair norms) {
  validate_budget(budget);
  if (!s.on_graph(xbar, ybar)) throw PointNotInSet("sample_lip_lower_bound base point");
  ExtRat best(Rat(0));
  for (const Rat& radius : budget.radius_grid) {
    Polyhedron v_nbhd =
        unit_ball(norms.codomain, s.m).linear_image([&] {
          RatMat sc(s.m, zero_vec(s.m));
          for (std::size_t i = 0; i < s.m; ++i) sc[i][i] = radius;
          return sc;
        }()).translate(ybar);
    auto pts = candidate_points(s, xbar, ybar, radius, budget, {});
    for (const auto& x : pts) {
      std::vector<RatVec> ys;
      PolyUnion xfib = s.fiber(x);
      for (const auto& piece : xfib.pieces()) {
        Polyhedron cl = piece.intersect(v_nbhd);
        if (cl.is_empty()) continue;
        for (const auto& v : cl.gens().vertices) ys.push_back(v);
      }
      if (ys.empty()) continue;
      for (const auto& xp : pts) {
        if (xp == x) continue;
        Rat sep = norm_value(norms.domain, vsub(x, xp));
        PolyUnion target = s.fiber(xp);
        for (const auto& yv : ys) {
          ExtRat d = dist_to_union(yv, target, norms.codomain);
          if (d.is_inf()) return ExtRat::inf();
          best = ext_max(best, ExtRat(d.value / sep));
        }
      }
    }
  }
  return best;
}

namespace {

// Euclidean projection of y on {x : rows.x = rhs} (rows independent).
std::optional<RatVec> affine_projection(const RatVec& y, const RatMat& rows, const RatVec& rhs) {
  if (rows.empty()) return y;
  RatMat gram(rows.size(), RatVec(rows.size()));
  RatVec resid(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) gram[i][j] = dot(rows[i], rows[j]);
    resid[i] = dot(rows[i], y) - rhs[i];
  }
  auto lambda = solve(gram, resid);
  if (!lambda.has_value()) return std::nullopt;
  RatVec x = y;
  for (std::size_t i = 0; i < rows.size(); ++i) x = vsub(x, vscale((*lambda)[i], rows[i]));
  return x;
}

std::optional<Rat> dist2_to_polyhedron(const RatVec& y, const Polyhedron& p) {
  if (p.is_empty()) return std::nullopt;
  const auto& iq = p.ineqs();
  const std::size_t k = iq.size();
  std::optional<Rat> best;
  for (std::size_t mask = 0; mask < (1u << k); ++mask) {
    RatMat rows;
    RatVec rhs;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1) {
        rows.push_back(iq[i].a);
        rhs.push_back(iq[i].b);
      }
    }
    RatMat indep;
    RatVec indep_rhs;
    {
      RatMat aug;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        RatVec r = rows[i];
        r.push_back(rhs[i]);
        aug.push_back(r);
      }
      rref(aug);
      bool inconsistent = false;
      for (const auto& r : aug) {
        RatVec head(r.begin(), r.end() - 1);
        if (is_zero(head)) {
          if (sgn(r.back()) != 0) inconsistent = true;
          continue;
        }
        indep.push_back(head);
        indep_rhs.push_back(r.back());
      }
      if (inconsistent) continue;
    }
    auto proj = affine_projection(y, indep, indep_rhs);
    if (!proj.has_value() || !p.contains(*proj)) continue;
    RatVec diff = vsub(y, *proj);
    Rat d2 = dot(diff, diff);
    if (!best.has_value() || d2 < *best) best = d2;
  }
  return best;
}

}  // namespace

double sample_lip_lower_bound_l2(const PwpMap& s, const RatVec& xbar, const RatVec& ybar,
                                 const OracleBudget& budget) {
  validate_budget(budget);
  if (!s.on_graph(xbar, ybar)) throw PointNotInSet("sample_lip_lower_bound_l2 base point");
  double best = 0.0;
  for (const Rat& radius : budget.radius_grid) {
    Polyhedron v_nbhd =
        unit_ball(NormKind::Inf, s.m).linear_image([&] {
          RatMat sc(s.m, zero_vec(s.m));
          for (std::size_t i = 0; i < s.m; ++i) sc[i][i] = radius;
          return sc;
        }()).translate(ybar);
    auto pts = candidate_points(s, xbar, ybar, radius, budget, {});
    for (const auto& x : pts) {
      std::vector<RatVec> ys;
      PolyUnion xfib = s.fiber(x);
      for (const auto& piece : xfib.pieces()) {
        Polyhedron cl = piece.intersect(v_nbhd);
        if (!cl.is_empty())
          for (const auto& v : cl.gens().vertices) ys.push_back(v);
      }
      for (const auto& xp : pts) {
        if (xp == x) continue;
        RatVec w = vsub(x, xp);
        Rat sep2 = dot(w, w);
        for (const auto& yv : ys) {
          std::optional<Rat> d2;
          PolyUnion xpfib = s.fiber(xp);
          for (const auto& piece : xpfib.pieces()) {
            auto cand = dist2_to_polyhedron(yv, piece);
            if (cand.has_value() && (!d2.has_value() || *cand < *d2)) d2 = cand;
          }
          if (!d2.has_value()) continue;
          double ratio2 = Rat(*d2 / sep2).get_d();
          best = std::max(best, std::sqrt(ratio2));
        }
      }
    }
  }
  return best;
}

}  // namespace varkit
