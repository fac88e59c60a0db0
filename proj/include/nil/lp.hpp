#pragma once

// Exact rational linear programming for small dense problems.
//
// Dense two-phase tableau simplex with Bland's rule. Every outcome carries a
// certificate that can be re-checked with the verification helpers below:
// an optimal dual for Optimal, a Farkas combination for Infeasible.

#include <cstddef>
#include <span>
#include <vector>

#include "nil/rational.hpp"

namespace nil::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  RationalVector coefficients;
  Relation relation = Relation::LessEqual;
  Rational bound = 0;
};

struct LinearConstraintSystem {
  std::size_t variable_count = 0;
  std::vector<Constraint> constraints;
  /// Indices of variables constrained to be >= 0; the rest are free.
  std::vector<std::size_t> nonnegative_variables;

  static LinearConstraintSystem all_nonnegative(std::size_t variable_count);

  bool is_nonnegative(std::size_t variable) const;
  void add(RationalVector coefficients, Relation relation, Rational bound);
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum = 0;
  /// Optimal point, or the feasible base point of the improving ray when Unbounded.
  RationalVector primal_point;
  /// Improving direction when Unbounded.
  RationalVector ray;
  /// One multiplier per constraint: the optimal dual when Optimal, a Farkas
  /// certificate when Infeasible.
  RationalVector dual_certificate;
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;
  RationalVector certificate;
};

LpOutcome maximize(std::span<const Rational> objective, const LinearConstraintSystem& system);
FeasibilityResult feasible(const LinearConstraintSystem& system);

/// True when `point` satisfies every constraint and sign restriction exactly.
bool satisfies(const LinearConstraintSystem& system, std::span<const Rational> point);

/// y is a Farkas certificate: sign-correct per relation, A^T y >= 0 on
/// non-negative variables, = 0 on free ones, and b^T y < 0.
bool is_farkas_certificate(const LinearConstraintSystem& system, std::span<const Rational> y);

/// y is dual feasible for max <objective, x> and b^T y equals `optimum`.
bool is_optimal_dual(const LinearConstraintSystem& system, std::span<const Rational> objective,
                     std::span<const Rational> y, const Rational& optimum);

}  // namespace nil::lp
