#include <gtest/gtest.h>

#include <random>

#include "nil/errors.hpp"
#include "nil/lp.hpp"
#include "oracles.hpp"

using nil::Rational;
using nil::RationalVector;
using namespace nil::lp;

namespace {

LinearConstraintSystem howald_system() {
  auto s = LinearConstraintSystem::all_nonnegative(2);
  s.add({2, 0}, Relation::LessEqual, 1);
  s.add({0, 3}, Relation::LessEqual, 1);
  return s;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(nil::to_string(nil::parse_rational("4/6")), "2/3");
  EXPECT_EQ(nil::to_string(nil::parse_rational("-3/6")), "-1/2");
  EXPECT_THROW(nil::parse_rational("3/-6"), nil::InputError);
  EXPECT_EQ(nil::to_string(nil::parse_rational("5")), "5");
  EXPECT_THROW(nil::parse_rational("1/0"), nil::InputError);
  EXPECT_THROW(nil::parse_rational("x"), nil::InputError);
  EXPECT_THROW(nil::parse_rational("1.5"), nil::InputError);
}

TEST(Rational, CeilFloorAndRoots) {
  EXPECT_EQ(nil::ceil(nil::ratio(7, 3)), 3);
  EXPECT_EQ(nil::floor(nil::ratio(-7, 3)), -3);
  EXPECT_EQ(nil::ceil(Rational(2)), 2);
  Rational root;
  ASSERT_TRUE(nil::exact_root(nil::ratio(8, 27), 3, root));
  EXPECT_EQ(root, nil::ratio(2, 3));
  EXPECT_FALSE(nil::exact_root(Rational(2), 2, root));
  EXPECT_EQ(nil::to_string(nil::ExtendedRational::infinity()), "inf");
}

TEST(Maximize, HowaldThresholdLp) {
  const auto s = howald_system();
  const RationalVector obj{1, 1};
  const auto out = maximize(obj, s);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.optimum, nil::ratio(5, 6));
  EXPECT_EQ(out.primal_point, (RationalVector{nil::ratio(1, 2), nil::ratio(1, 3)}));
  EXPECT_TRUE(satisfies(s, out.primal_point));
  EXPECT_TRUE(is_optimal_dual(s, obj, out.dual_certificate, out.optimum));
  // Oracle: exhaustive vertex enumeration.
  const auto v = oracle_support::vertex_enumeration_max(obj, s);
  ASSERT_TRUE(v.feasible);
  EXPECT_EQ(v.value, out.optimum);
}

TEST(Maximize, Unbounded) {
  auto s = LinearConstraintSystem::all_nonnegative(1);
  const RationalVector obj{1};
  const auto out = maximize(obj, s);
  EXPECT_EQ(out.status, LpStatus::Unbounded);
  ASSERT_EQ(out.ray.size(), 1u);
  EXPECT_GT(out.ray[0], 0);
}

TEST(Maximize, InfeasibleWithFarkas) {
  LinearConstraintSystem s;
  s.variable_count = 1;
  s.add({1}, Relation::GreaterEqual, 1);
  s.add({1}, Relation::LessEqual, 0);
  const RationalVector obj{1};
  const auto out = maximize(obj, s);
  ASSERT_EQ(out.status, LpStatus::Infeasible);
  EXPECT_TRUE(is_farkas_certificate(s, out.dual_certificate));
}

TEST(Maximize, DimensionMismatch) {
  const auto s = howald_system();
  const RationalVector obj{1, 1, 1};
  EXPECT_THROW(maximize(obj, s), nil::InputError);
}

TEST(Feasible, Examples) {
  auto simplex = LinearConstraintSystem::all_nonnegative(2);
  simplex.add({1, 1}, Relation::Equal, 1);
  const auto yes = feasible(simplex);
  ASSERT_TRUE(yes.feasible);
  EXPECT_TRUE(satisfies(simplex, yes.witness));

  LinearConstraintSystem contradiction;
  contradiction.variable_count = 1;
  contradiction.add({1}, Relation::GreaterEqual, 1);
  contradiction.add({1}, Relation::LessEqual, 0);
  const auto no = feasible(contradiction);
  ASSERT_FALSE(no.feasible);
  EXPECT_TRUE(is_farkas_certificate(contradiction, no.certificate));

  auto s = howald_system();
  s.add({1, 1}, Relation::Equal, nil::ratio(5, 6));
  const auto tight = feasible(s);
  ASSERT_TRUE(tight.feasible);
  EXPECT_TRUE(satisfies(s, tight.witness));
  s.constraints.back().bound = nil::ratio(6, 7);
  EXPECT_FALSE(feasible(s).feasible);
}

TEST(Maximize, Deterministic) {
  const auto s = howald_system();
  const RationalVector obj{1, 1};
  const auto a = maximize(obj, s), b = maximize(obj, s);
  EXPECT_EQ(a.primal_point, b.primal_point);
  EXPECT_EQ(a.dual_certificate, b.dual_certificate);
}

TEST(Maximize, FreeVariablesAndEqualities) {
  // max x - y with x free in [-2, 3], y free in [-1, 4], x + y = 1.
  LinearConstraintSystem s;
  s.variable_count = 2;
  s.add({1, 0}, Relation::LessEqual, 3);
  s.add({1, 0}, Relation::GreaterEqual, -2);
  s.add({0, 1}, Relation::LessEqual, 4);
  s.add({0, 1}, Relation::GreaterEqual, -1);
  s.add({1, 1}, Relation::Equal, 1);
  const RationalVector obj{1, -1};
  const auto out = maximize(obj, s);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.optimum, 3);
  EXPECT_TRUE(is_optimal_dual(s, obj, out.dual_certificate, out.optimum));
}

// Random bounded systems against vertex enumeration; every certificate re-verified.
TEST(Maximize, RandomAgainstVertexEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4), bound(-3, 8), nvar(1, 3), ncons(1, 5), rel(0, 2), sign(0, 2);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = nvar(rng);
    LinearConstraintSystem s;
    s.variable_count = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (sign(rng) != 0) s.nonnegative_variables.push_back(j);
      RationalVector e(n, 0);
      e[j] = 1;
      s.add(e, Relation::LessEqual, 10);
      s.add(e, Relation::GreaterEqual, -10);
    }
    const int m = ncons(rng);
    for (int i = 0; i < m; ++i) {
      RationalVector a(n);
      for (auto& v : a) v = nil::ratio(coef(rng), 1 + (trial % 3));
      s.add(a, static_cast<Relation>(rel(rng)), nil::ratio(bound(rng), 2));
    }
    RationalVector obj(n);
    for (auto& v : obj) v = coef(rng);
    const auto out = maximize(obj, s);
    const auto oracle = oracle_support::vertex_enumeration_max(obj, s);
    ASSERT_NE(out.status, LpStatus::Unbounded);
    ASSERT_EQ(out.status == LpStatus::Optimal, oracle.feasible) << "trial " << trial;
    if (out.status == LpStatus::Optimal) {
      ++optimal;
      EXPECT_EQ(out.optimum, oracle.value) << "trial " << trial;
      EXPECT_TRUE(satisfies(s, out.primal_point));
      EXPECT_EQ(nil::dot(obj, out.primal_point), out.optimum);
      EXPECT_TRUE(is_optimal_dual(s, obj, out.dual_certificate, out.optimum));
    } else {
      ++infeasible;
      EXPECT_TRUE(is_farkas_certificate(s, out.dual_certificate)) << "trial " << trial;
    }
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 10);
}

// Degenerate vertices (many tight constraints) exercise Bland's rule.
TEST(Maximize, DegenerateCycling) {
  // Beale's classic cycling example.
  auto s = LinearConstraintSystem::all_nonnegative(4);
  s.add({nil::ratio(1, 4), -8, -1, 9}, Relation::LessEqual, 0);
  s.add({nil::ratio(1, 2), -12, nil::ratio(-1, 2), 3}, Relation::LessEqual, 0);
  s.add({0, 0, 1, 0}, Relation::LessEqual, 1);
  const RationalVector obj{nil::ratio(3, 4), -20, nil::ratio(1, 2), -6};
  const auto out = maximize(obj, s);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.optimum, nil::ratio(5, 4));
  EXPECT_EQ(oracle_support::vertex_enumeration_max(obj, s).value, out.optimum);
  EXPECT_TRUE(is_optimal_dual(s, obj, out.dual_certificate, out.optimum));
}
