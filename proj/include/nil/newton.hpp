#pragma once

// Newton polyhedra P = conv(generators) + R_+^n with exact point classification.

#include <cstddef>
#include <optional>
#include <vector>

#include "nil/rational.hpp"

namespace nil {

/// Non-negative rational n-tuple: monomial exponents, weights, points of P.
using ExponentVector = RationalVector;

ExponentVector ones(std::size_t n);
/// (1,...,1) with a 0 in slot `axis`.
ExponentVector ones_except(std::size_t n, std::size_t axis);

/// Componentwise a <= b.
bool dominated_by(const ExponentVector& a, const ExponentVector& b);

enum class Verdict { Interior, Boundary, Exterior };

const char* to_string(Verdict v);

/// Result of locating x relative to c*P.
///
/// Interior: `margin` > 0 and x - margin*1 lies in c*P.
/// Boundary: x in c*P and <w, x> equals the support value c*min_j <w, a_j>.
/// Exterior: <w, x> is strictly below the support value.
/// For Boundary/Exterior the witness w is >= 0 and nonzero; it is scaled so the
/// support value is c when that value is positive, and to sum 1 otherwise.
struct PointClassification {
  Verdict verdict = Verdict::Exterior;
  Rational margin = 0;
  ExponentVector witness;
};

class NewtonPolyhedron {
 public:
  /// Keeps only the componentwise-minimal generators, deduplicated and sorted
  /// lexicographically. Throws InputError on empty input, negative
  /// coordinates, mixed or zero dimension.
  static NewtonPolyhedron build(std::vector<ExponentVector> points);

  std::size_t dimension() const { return dimension_; }
  const std::vector<ExponentVector>& generators() const { return generators_; }

  /// min_j <w, a_j>.
  Rational support(const ExponentVector& w) const;

  /// Solves max eps s.t. x - eps*1 >= c*sum t_j a_j, sum t_j = 1, t >= 0, eps >= 0.
  PointClassification classify(const ExponentVector& x, const Rational& c) const;

  /// The same LP with eps free: positive inside, zero on the boundary,
  /// negative outside. Used to grade how far a point is from the boundary.
  Rational signed_margin(const ExponentVector& x, const Rational& c) const;

  /// max { sum s_j : sum s_j a_j <= x, s >= 0 }; +inf iff some generator is 0.
  /// For x > 0 strictly, x lies in the interior of c*P exactly when c is below it.
  ExtendedRational critical_scale(const ExponentVector& x) const;

  /// P intersected with {x_axis = 0}, projected to n-1 coordinates. Absent when
  /// no generator has a zero in that slot. Requires dimension >= 2.
  std::optional<NewtonPolyhedron> axis_face(std::size_t axis) const;

  /// x_axis == 0 and the projection of x is interior to c times the axis face.
  bool in_relative_interior_of_axis_face(std::size_t axis, const ExponentVector& x,
                                         const Rational& c) const;

  friend bool operator==(const NewtonPolyhedron&, const NewtonPolyhedron&) = default;

 private:
  NewtonPolyhedron(std::size_t dimension, std::vector<ExponentVector> generators)
      : dimension_(dimension), generators_(std::move(generators)) {}

  void check_point(const ExponentVector& x) const;

  std::size_t dimension_ = 0;
  std::vector<ExponentVector> generators_;
};

}  // namespace nil
