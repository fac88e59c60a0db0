#include "nil/lp.hpp"

#include <algorithm>
#include <optional>

#include "nil/errors.hpp"

namespace nil::lp {

LinearConstraintSystem LinearConstraintSystem::all_nonnegative(std::size_t variable_count) {
  LinearConstraintSystem s;
  s.variable_count = variable_count;
  for (std::size_t j = 0; j < variable_count; ++j) s.nonnegative_variables.push_back(j);
  return s;
}

bool LinearConstraintSystem::is_nonnegative(std::size_t variable) const {
  return std::find(nonnegative_variables.begin(), nonnegative_variables.end(), variable) !=
         nonnegative_variables.end();
}

void LinearConstraintSystem::add(RationalVector coefficients, Relation relation, Rational bound) {
  constraints.push_back({std::move(coefficients), relation, std::move(bound)});
}

namespace {

void check_shape(const LinearConstraintSystem& system) {
  for (const auto& c : system.constraints)
    if (c.coefficients.size() != system.variable_count)
      throw InputError("constraint has " + std::to_string(c.coefficients.size()) +
                       " coefficients, expected " + std::to_string(system.variable_count));
  for (auto j : system.nonnegative_variables)
    if (j >= system.variable_count) throw InputError("non-negativity index out of range");
}

// Standard-form tableau. Columns are laid out as
//   [structural (free variables split in two)] [slack/surplus] [artificial]
// and every row owns one column that was a unit vector initially (its slack
// for <= rows, its artificial otherwise), from which B^-1 is read back.
class Tableau {
 public:
  explicit Tableau(const LinearConstraintSystem& system) : system_(system) {
    const std::size_t n = system.variable_count;
    const std::size_t m = system.constraints.size();
    for (std::size_t j = 0; j < n; ++j) {
      plus_col_.push_back(columns_++);
      minus_col_.push_back(system.is_nonnegative(j) ? std::nullopt : std::optional(columns_++));
    }
    structural_end_ = columns_;

    row_sign_.resize(m);
    relation_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = system.constraints[i];
      row_sign_[i] = c.bound < 0 ? -1 : 1;
      Relation rel = c.relation;
      if (row_sign_[i] < 0 && rel != Relation::Equal)
        rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
      relation_[i] = rel;
    }
    slack_col_.assign(m, std::nullopt);
    for (std::size_t i = 0; i < m; ++i)
      if (relation_[i] != Relation::Equal) slack_col_[i] = columns_++;
    artificial_begin_ = columns_;
    unit_col_.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      unit_col_[i] = relation_[i] == Relation::LessEqual ? *slack_col_[i] : columns_++;

    rows_.assign(m, RationalVector(columns_, 0));
    rhs_.resize(m);
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = system.constraints[i];
      const int s = row_sign_[i];
      for (std::size_t j = 0; j < n; ++j) {
        rows_[i][plus_col_[j]] = s * c.coefficients[j];
        if (minus_col_[j]) rows_[i][*minus_col_[j]] = -s * c.coefficients[j];
      }
      if (slack_col_[i]) rows_[i][*slack_col_[i]] = relation_[i] == Relation::LessEqual ? 1 : -1;
      rows_[i][unit_col_[i]] = 1;
      rhs_[i] = s * c.bound;
      basis_[i] = unit_col_[i];
    }
  }

  bool is_artificial(std::size_t col) const { return col >= artificial_begin_; }

  enum class Result { Optimal, Unbounded };

  // Maximizes <cost, x> from the current feasible basis. Artificial columns
  // are never allowed to enter when `allow_artificial` is false.
  Result optimize(const RationalVector& cost, bool allow_artificial, std::size_t& entering_out) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns_ && !entering; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        if (reduced_cost(cost, j) > 0) entering = j;
      }
      if (!entering) return Result::Optimal;
      const std::size_t e = *entering;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][e] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][e];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) {
        entering_out = e;
        return Result::Unbounded;
      }
      pivot(*leaving, e);
    }
  }

  // After phase one: pivot zero-level artificials out of the basis wherever a
  // non-artificial column has a nonzero entry in their row.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < artificial_begin_; ++j) {
        if (rows_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Rational objective_value(const RationalVector& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  // y_i = c_B^T B^-1 e_i, mapped back through the row sign normalization.
  RationalVector duals(const RationalVector& cost) const {
    RationalVector y(rows_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational v = 0;
      for (std::size_t k = 0; k < rows_.size(); ++k) v += cost[basis_[k]] * rows_[k][unit_col_[r]];
      y[r] = row_sign_[r] * v;
    }
    return y;
  }

  RationalVector column_values() const {
    RationalVector x(columns_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

  RationalVector to_original(const RationalVector& cols) const {
    RationalVector x(system_.variable_count, 0);
    for (std::size_t j = 0; j < system_.variable_count; ++j) {
      x[j] = cols[plus_col_[j]];
      if (minus_col_[j]) x[j] -= cols[*minus_col_[j]];
    }
    return x;
  }

  // Direction obtained by raising the entering column by one unit.
  RationalVector ray_columns(std::size_t entering) const {
    RationalVector d(columns_, 0);
    d[entering] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) d[basis_[i]] = -rows_[i][entering];
    return d;
  }

  std::size_t columns() const { return columns_; }
  std::size_t structural_end() const { return structural_end_; }

  RationalVector phase_one_cost() const {
    RationalVector c(columns_, 0);
    for (std::size_t j = artificial_begin_; j < columns_; ++j) c[j] = -1;
    return c;
  }

  RationalVector phase_two_cost(std::span<const Rational> objective) const {
    RationalVector c(columns_, 0);
    for (std::size_t j = 0; j < system_.variable_count; ++j) {
      c[plus_col_[j]] = objective[j];
      if (minus_col_[j]) c[*minus_col_[j]] = -objective[j];
    }
    return c;
  }

 private:
  Rational reduced_cost(const RationalVector& cost, std::size_t j) const {
    Rational d = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][j] != 0) d -= cost[basis_[i]] * rows_[i][j];
    return d;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = rows_[row][col];
    for (auto& v : rows_[row]) v /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j < columns_; ++j)
        if (rows_[row][j] != 0) rows_[i][j] -= f * rows_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  const LinearConstraintSystem& system_;
  std::size_t columns_ = 0;
  std::size_t structural_end_ = 0;
  std::size_t artificial_begin_ = 0;
  std::vector<std::size_t> plus_col_;
  std::vector<std::optional<std::size_t>> minus_col_;
  std::vector<std::optional<std::size_t>> slack_col_;
  std::vector<std::size_t> unit_col_;
  std::vector<int> row_sign_;
  std::vector<Relation> relation_;
  std::vector<RationalVector> rows_;
  RationalVector rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpOutcome maximize(std::span<const Rational> objective, const LinearConstraintSystem& system) {
  check_shape(system);
  if (objective.size() != system.variable_count)
    throw InputError("objective has " + std::to_string(objective.size()) + " entries, expected " +
                     std::to_string(system.variable_count));

  Tableau t(system);
  LpOutcome out;
  std::size_t entering = 0;

  const auto phase_one = t.phase_one_cost();
  t.optimize(phase_one, true, entering);  // bounded above by 0
  if (t.objective_value(phase_one) < 0) {
    out.status = LpStatus::Infeasible;
    out.dual_certificate = t.duals(phase_one);
    return out;
  }
  t.drive_out_artificials();

  const auto cost = t.phase_two_cost(objective);
  if (t.optimize(cost, false, entering) == Tableau::Result::Unbounded) {
    out.status = LpStatus::Unbounded;
    out.primal_point = t.to_original(t.column_values());
    out.ray = t.to_original(t.ray_columns(entering));
    return out;
  }
  out.status = LpStatus::Optimal;
  out.optimum = t.objective_value(cost);
  out.primal_point = t.to_original(t.column_values());
  out.dual_certificate = t.duals(cost);
  return out;
}

FeasibilityResult feasible(const LinearConstraintSystem& system) {
  RationalVector zero(system.variable_count, 0);
  auto outcome = maximize(zero, system);
  FeasibilityResult r;
  r.feasible = outcome.status != LpStatus::Infeasible;
  if (r.feasible)
    r.witness = std::move(outcome.primal_point);
  else
    r.certificate = std::move(outcome.dual_certificate);
  return r;
}

bool satisfies(const LinearConstraintSystem& system, std::span<const Rational> point) {
  if (point.size() != system.variable_count) return false;
  for (auto j : system.nonnegative_variables)
    if (point[j] < 0) return false;
  for (const auto& c : system.constraints) {
    const Rational lhs = dot(c.coefficients, point);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.bound) return false;
        break;
      case Relation::Equal:
        if (lhs != c.bound) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.bound) return false;
        break;
    }
  }
  return true;
}

namespace {

bool dual_signs_ok(const LinearConstraintSystem& system, std::span<const Rational> y) {
  if (y.size() != system.constraints.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto rel = system.constraints[i].relation;
    if (rel == Relation::LessEqual && y[i] < 0) return false;
    if (rel == Relation::GreaterEqual && y[i] > 0) return false;
  }
  return true;
}

Rational transposed_product(const LinearConstraintSystem& system, std::span<const Rational> y,
                            std::size_t j) {
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * system.constraints[i].coefficients[j];
  return s;
}

Rational bound_product(const LinearConstraintSystem& system, std::span<const Rational> y) {
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * system.constraints[i].bound;
  return s;
}

}  // namespace

bool is_farkas_certificate(const LinearConstraintSystem& system, std::span<const Rational> y) {
  if (!dual_signs_ok(system, y)) return false;
  for (std::size_t j = 0; j < system.variable_count; ++j) {
    const Rational aty = transposed_product(system, y, j);
    if (system.is_nonnegative(j) ? aty < 0 : aty != 0) return false;
  }
  return bound_product(system, y) < 0;
}

bool is_optimal_dual(const LinearConstraintSystem& system, std::span<const Rational> objective,
                     std::span<const Rational> y, const Rational& optimum) {
  if (!dual_signs_ok(system, y) || objective.size() != system.variable_count) return false;
  for (std::size_t j = 0; j < system.variable_count; ++j) {
    const Rational aty = transposed_product(system, y, j);
    if (system.is_nonnegative(j) ? aty < objective[j] : aty != objective[j]) return false;
  }
  return bound_product(system, y) == optimum;
}

}  // namespace nil::lp
