#pragma once

// Independent brute-force oracles used to derive expected values in tests.
// None of them call into the LP or the Newton polyhedron code.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nil/ideal.hpp"
#include "nil/lp.hpp"
#include "nil/rational.hpp"

namespace oracle_support {

using nil::Rational;
using nil::RationalVector;

/// Solves the square system M y = r exactly; nullopt when singular.
inline std::optional<RationalVector> solve_square(std::vector<RationalVector> m, RationalVector r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(r[pivot], r[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      r[row] -= f * r[col];
    }
  }
  RationalVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] / m[i][i];
  return y;
}

/// Calls visit(indices) for every k-subset of {0..m-1}.
template <typename Visit>
void for_each_subset(std::size_t m, std::size_t k, Visit visit) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Inequality rows a.x <= b describing a system (equalities split in two,
/// sign constraints added).
inline std::vector<std::pair<RationalVector, Rational>> as_inequalities(const nil::lp::LinearConstraintSystem& s) {
  std::vector<std::pair<RationalVector, Rational>> rows;
  for (const auto& c : s.constraints) {
    RationalVector neg(c.coefficients.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coefficients[i];
    if (c.relation != nil::lp::Relation::GreaterEqual) rows.emplace_back(c.coefficients, c.bound);
    if (c.relation != nil::lp::Relation::LessEqual) rows.emplace_back(neg, Rational(-c.bound));
  }
  for (std::size_t j = 0; j < s.variable_count; ++j) {
    if (!s.is_nonnegative(j)) continue;
    RationalVector e(s.variable_count, 0);
    e[j] = -1;
    rows.emplace_back(e, Rational(0));
  }
  return rows;
}

struct VertexOptimum {
  bool feasible = false;
  Rational value;
};

/// Best objective over all basic feasible points. Exact for pointed, bounded
/// feasible regions.
inline VertexOptimum vertex_enumeration_max(const RationalVector& objective,
                                            const nil::lp::LinearConstraintSystem& system) {
  const auto rows = as_inequalities(system);
  const std::size_t n = system.variable_count;
  VertexOptimum best;
  for_each_subset(rows.size(), n, [&](const std::vector<std::size_t>& pick) {
    std::vector<RationalVector> m;
    RationalVector r;
    for (auto i : pick) {
      m.push_back(rows[i].first);
      r.push_back(rows[i].second);
    }
    const auto y = solve_square(m, r);
    if (!y) return;
    for (const auto& [a, b] : rows)
      if (nil::dot(a, *y) > b) return;
    const Rational v = nil::dot(objective, *y);
    if (!best.feasible || v > best.value) best.value = v;
    best.feasible = true;
  });
  return best;
}

/// A supporting inequality <w, x> >= support of conv(points) + orthant.
struct HalfSpace {
  RationalVector w;
  Rational support;
};

/// Every facet of conv(points) + R_+^n, found by solving <w, a_j> = 1 through
/// k points with n - k zero coordinates of w, plus the coordinate half-spaces.
/// May contain redundant valid inequalities.
inline std::vector<HalfSpace> facet_enumeration(const std::vector<RationalVector>& points) {
  const std::size_t n = points.front().size();
  std::vector<HalfSpace> out;
  auto support_of = [&](const RationalVector& w) {
    Rational s = nil::dot(w, points.front());
    for (const auto& p : points) s = std::min(s, nil::dot(w, p));
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0);
    e[i] = 1;
    out.push_back({e, support_of(e)});
  }
  for (std::size_t k = 1; k <= n; ++k) {
    for_each_subset(points.size(), k, [&](const std::vector<std::size_t>& pts) {
      for_each_subset(n, n - k, [&](const std::vector<std::size_t>& zeros) {
        std::vector<RationalVector> m;
        RationalVector r;
        for (auto j : pts) {
          m.push_back(points[j]);
          r.push_back(1);
        }
        for (auto z : zeros) {
          RationalVector e(n, 0);
          e[z] = 1;
          m.push_back(e);
          r.push_back(0);
        }
        const auto w = solve_square(m, r);
        if (!w) return;
        for (const auto& v : *w)
          if (v < 0) return;
        if (support_of(*w) != 1) return;
        out.push_back({*w, 1});
      });
    });
  }
  return out;
}

inline bool facet_interior(const std::vector<HalfSpace>& facets, const RationalVector& x, const Rational& c) {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const HalfSpace& h) { return nil::dot(h.w, x) > c * h.support; });
}

inline bool facet_closure(const std::vector<HalfSpace>& facets, const RationalVector& x, const Rational& c) {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const HalfSpace& h) { return nil::dot(h.w, x) >= c * h.support; });
}

/// min over positive-support facets of <w, x> / support; nullopt means +inf.
inline std::optional<Rational> facet_critical_scale(const std::vector<HalfSpace>& facets, const RationalVector& x) {
  std::optional<Rational> best;
  for (const auto& h : facets) {
    if (h.support <= 0) continue;
    const Rational v = nil::dot(h.w, x) / h.support;
    if (!best || v < *best) best = v;
  }
  return best;
}

inline std::vector<RationalVector> exponent_points(const nil::MonomialIdeal& a) {
  std::vector<RationalVector> pts;
  for (const auto& g : a.generators()) pts.push_back(nil::to_exponents(g));
  return pts;
}

/// Minimal elements of a finite set, by pairwise comparison.
inline std::vector<nil::Monomial> pairwise_minimal(const std::vector<nil::Monomial>& set) {
  std::vector<nil::Monomial> out;
  for (const auto& a : set) {
    bool minimal = true;
    for (const auto& b : set) {
      if (a == b) continue;
      bool below = true;
      for (std::size_t i = 0; i < a.size(); ++i) below = below && b[i] <= a[i];
      if (below) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Calls visit(beta) for every beta in [0, caps].
template <typename Visit>
void for_each_in_box(const std::vector<std::int64_t>& caps, Visit visit) {
  nil::Monomial beta(caps.size(), 0);
  for (;;) {
    visit(beta);
    std::size_t i = 0;
    while (i < caps.size() && beta[i] == caps[i]) beta[i++] = 0;
    if (i == caps.size()) return;
    ++beta[i];
  }
}

/// Brute-force multiplier ideal from the facet description over the given box.
inline std::vector<nil::Monomial> brute_multiplier(const nil::MonomialIdeal& a, const Rational& c,
                                                   const std::vector<std::int64_t>& caps) {
  const auto facets = facet_enumeration(exponent_points(a));
  std::vector<nil::Monomial> members;
  for_each_in_box(caps, [&](const nil::Monomial& beta) {
    auto x = nil::to_exponents(beta);
    for (auto& v : x) v += 1;
    if (facet_interior(facets, x, c)) members.push_back(beta);
  });
  return pairwise_minimal(members);
}

/// Brute-force adjoint ideal: interior of cP, or the relative interior of the
/// axis face, both from facet descriptions.
inline std::vector<nil::Monomial> brute_adjoint(const nil::MonomialIdeal& a, const Rational& c, std::size_t axis,
                                                const std::vector<std::int64_t>& caps) {
  const auto facets = facet_enumeration(exponent_points(a));
  std::vector<RationalVector> face_points;
  for (const auto& g : a.generators()) {
    if (g[axis] != 0) continue;
    RationalVector p;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (i != axis) p.emplace_back(static_cast<long>(g[i]));
    face_points.push_back(p);
  }
  const auto face_facets = face_points.empty() ? std::vector<HalfSpace>{} : facet_enumeration(face_points);
  std::vector<nil::Monomial> members;
  for_each_in_box(caps, [&](const nil::Monomial& beta) {
    auto x = nil::to_exponents(beta);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != axis) x[i] += 1;
    bool member = facet_interior(facets, x, c);
    if (!member && beta[axis] == 0 && !face_points.empty()) {
      RationalVector y;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (i != axis) y.push_back(x[i]);
      member = facet_interior(face_facets, y, c);
    }
    if (member) members.push_back(beta);
  });
  return pairwise_minimal(members);
}

inline std::vector<nil::Monomial> sorted(std::vector<nil::Monomial> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Pseudo-random monomial ideal: n variables, 1..max_gens generators, exponents <= max_exp.
inline nil::MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, int max_gens, int max_exp) {
  std::uniform_int_distribution<int> count(1, max_gens), expo(0, max_exp);
  std::vector<nil::Monomial> gens;
  const int m = count(rng);
  for (int j = 0; j < m; ++j) {
    nil::Monomial g(n);
    for (auto& v : g) v = expo(rng);
    gens.push_back(g);
  }
  return nil::MonomialIdeal::minimalize(n, gens);
}

}  // namespace oracle_support
