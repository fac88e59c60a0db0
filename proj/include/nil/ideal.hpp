#pragma once

// Monomial ideals as antichains of exponent vectors, and the polyhedral
// calculus of multiplier and adjoint ideals built on top of them.

#include <cstdint>
#include <functional>
#include <vector>

#include "nil/newton.hpp"
#include "nil/rational.hpp"
#include "nil/toric.hpp"

namespace nil {

using Monomial = std::vector<std::int64_t>;

ExponentVector to_exponents(const Monomial& m);

class MonomialIdeal {
 public:
  /// Keeps the componentwise-minimal exponents in lex monomial order
  /// (lexicographically decreasing exponent vectors).
  /// Throws InputError on negative exponents or mixed dimensions.
  static MonomialIdeal minimalize(std::size_t dimension, std::vector<Monomial> exponents);
  static MonomialIdeal zero(std::size_t dimension);
  static MonomialIdeal unit(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Monomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const;

  /// Some generator divides z^beta.
  bool contains(const Monomial& beta) const;
  /// Every generator of `other` lies in this ideal.
  bool contains(const MonomialIdeal& other) const;

  /// Requires a nonzero ideal.
  NewtonPolyhedron newton_polyhedron() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  MonomialIdeal(std::size_t dimension, std::vector<Monomial> generators)
      : dimension_(dimension), generators_(std::move(generators)) {}

  std::size_t dimension_ = 0;
  std::vector<Monomial> generators_;
};

/// Upward-closed membership predicate on natural exponent vectors.
using MembershipPredicate = std::function<bool(const Monomial&)>;

/// Minimal members of an upward-closed set whose minimal elements lie in the
/// box [0, caps]. Walks the staircase with a binary search on the first axis.
/// The ideal constructors below re-run it with every cap raised by two and throw
/// std::logic_error if the answer changes.
MonomialIdeal minimal_members(const std::vector<std::int64_t>& caps, const MembershipPredicate& member);

/// Enumeration caps ceil(c * max_j a_ji) used by multiplier_ideal.
std::vector<std::int64_t> multiplier_caps(const MonomialIdeal& a, const Rational& c);

/// z^beta is a member iff beta + 1 lies in the interior of c*P(a).
bool in_multiplier_ideal(const NewtonPolyhedron& p, const Monomial& beta, const Rational& c);

MonomialIdeal multiplier_ideal(const MonomialIdeal& a, const Rational& c);

/// Multiplier ideal of the weight attached to g.
MonomialIdeal multiplier_ideal_toric(const ConcaveToricFunction& g);
std::vector<std::int64_t> multiplier_toric_caps(const ConcaveToricFunction& g);
bool in_multiplier_ideal_toric(const ConcaveToricFunction& g, const Monomial& beta);

/// Log canonical threshold; infinite exactly for the unit ideal.
ExtendedRational lct(const MonomialIdeal& a);

/// Values in (0, c_max] where the multiplier ideal strictly shrinks, increasing.
std::vector<Rational> jumping_numbers(const MonomialIdeal& a, const Rational& c_max);

/// eps > 0 with multiplier_ideal(a, (1+eps)c) == multiplier_ideal(a, c).
Rational openness_margin(const MonomialIdeal& a, const Rational& c);

/// Axis indices are 0-based. The adjoint requires dimension >= 2 and a
/// generator with zero exponent on `axis`; otherwise the restriction of the
/// weight to the hyperplane is identically -inf and HypothesisError is thrown.
std::vector<std::int64_t> adjoint_caps(const MonomialIdeal& a, const Rational& c, std::size_t axis);
bool in_adjoint_ideal(const NewtonPolyhedron& p, const Monomial& beta, const Rational& c,
                      std::size_t axis);
MonomialIdeal adjoint_ideal(const MonomialIdeal& a, const Rational& c, std::size_t axis);

/// Closed-form membership of z^beta in the zero adjoint ideal of
/// k * log max |z_i|^(1/a_i). Every a_i must be positive.
bool adj0_power_membership(const Rational& k, const ExponentVector& alpha, std::size_t axis,
                           const Monomial& beta);
/// sum (beta_i + 1) / a_i, the quantity the closed form compares with k + 1/a_axis.
Rational adj0_power_sum(const ExponentVector& alpha, const Monomial& beta);

MonomialIdeal restrict_to_axis(const MonomialIdeal& a, std::size_t axis);
MonomialIdeal shift_by_axis(const MonomialIdeal& a, std::size_t axis);
MonomialIdeal intersect_axis_multiples(const MonomialIdeal& a, std::size_t axis);

struct AdjunctionReport {
  MonomialIdeal adjoint = MonomialIdeal::zero(0);
  MonomialIdeal multiplier = MonomialIdeal::zero(0);
  MonomialIdeal restricted_multiplier = MonomialIdeal::zero(0);
  MonomialIdeal kernel = MonomialIdeal::zero(0);
  /// Members of the adjoint with zero exponent on the axis, projected.
  MonomialIdeal restriction = MonomialIdeal::zero(0);
  bool kernel_exact = false;
  bool restriction_exact = false;
};

AdjunctionReport adjunction_report(const MonomialIdeal& a, const Rational& c, std::size_t axis);

/// c * min_j <a_j, x>, the concave function of the weight c * log|a|.
ConcaveToricFunction toric_function_of(const MonomialIdeal& a, const Rational& c);

}  // namespace nil
