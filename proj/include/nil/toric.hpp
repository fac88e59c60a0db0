#pragma once

// Concave functions g on the orthant attached to toric psh weights through
// phi(z) = -g(-log|z_1|, ..., -log|z_n|).
//
// Two families are represented exactly:
//   * finite minima of non-decreasing affine functions, and
//   * power products k * x_1^a_1 ... x_n^a_n with sum a_i <= 1.

#include <optional>
#include <variant>
#include <vector>

#include "nil/newton.hpp"
#include "nil/rational.hpp"

namespace nil {

struct AffinePiece {
  ExponentVector slope;
  Rational offset = 0;

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct PiecewiseLinearMin {
  std::vector<AffinePiece> pieces;

  friend bool operator==(const PiecewiseLinearMin&, const PiecewiseLinearMin&) = default;
};

struct PowerProduct {
  Rational k;
  ExponentVector alpha;

  friend bool operator==(const PowerProduct&, const PowerProduct&) = default;
};

class ConcaveToricFunction {
 public:
  /// Throws InputError when the list is empty, a slope has a negative entry,
  /// or dimensions disagree.
  static ConcaveToricFunction piecewise_linear_min(std::vector<AffinePiece> pieces);
  /// Throws InputError unless k > 0, every exponent is >= 0 and their sum is <= 1.
  static ConcaveToricFunction power_product(Rational k, ExponentVector alpha);

  std::size_t dimension() const;
  bool is_piecewise_linear() const { return std::holds_alternative<PiecewiseLinearMin>(data_); }
  const PiecewiseLinearMin& piecewise_linear() const { return std::get<PiecewiseLinearMin>(data_); }
  const PowerProduct& power() const { return std::get<PowerProduct>(data_); }

  /// c * g for rational c > 0.
  ConcaveToricFunction scaled(const Rational& c) const;

  /// Power products with exponent sum exactly 1 (positively homogeneous).
  bool is_homogeneous_power() const;

  /// Newton polyhedron of the slopes (piecewise-linear variant only).
  NewtonPolyhedron slope_polyhedron() const;

  friend bool operator==(const ConcaveToricFunction&, const ConcaveToricFunction&) = default;

 private:
  explicit ConcaveToricFunction(std::variant<PiecewiseLinearMin, PowerProduct> data)
      : data_(std::move(data)) {}
  std::variant<PiecewiseLinearMin, PowerProduct> data_;
};

/// A value that is exact when possible; `approx` is always filled.
struct RealValue {
  std::optional<Rational> exact;
  double approx = 0.0;
};

RealValue evaluate(const ConcaveToricFunction& g, const ExponentVector& x);

/// lim g(t w)/t: the Kiselman number of the attached weight along w.
RealValue homogenized_value(const ConcaveToricFunction& g, const ExponentVector& w);

/// Exact sign of homogenized_value(g, w) - v, even when the value is irrational.
int compare_homogenized(const ConcaveToricFunction& g, const ExponentVector& w, const Rational& v);

/// Locates lambda relative to the closure of the Newton convex body of g.
/// Witness invariants are those of PointClassification with the support value
/// replaced by homogenized_value(g, w). For power products the margin is a
/// certified rational lower bound of the maximal one.
PointClassification classify_in_body(const ConcaveToricFunction& g, const ExponentVector& lambda);

/// Is e^g integrable on the orthant?
bool exp_integrable(const ConcaveToricFunction& g);
/// Is e^(g - <A, .>) integrable on the orthant?
bool exp_integrable_shifted(const ConcaveToricFunction& g, const ExponentVector& shift);

struct ValuativeReport {
  bool member = false;
  /// When member: 1 minus an upper bound of sup_w g^(w) / (<w, beta> + |w|).
  Rational margin = 0;
  /// When not member: w with g^(w) >= <w, beta> + sum w_i.
  ExponentVector certificate;
};

ValuativeReport valuative_membership(const ConcaveToricFunction& g, const ExponentVector& beta);

/// True when g^(w) >= <w, beta> + sum w_i holds exactly.
bool certifies_non_membership(const ConcaveToricFunction& g, const ExponentVector& beta,
                              const ExponentVector& w);

/// grad g(v) + mu at each sample, rounded up to rationals. Power products only;
/// every sample must be strictly positive.
std::vector<ExponentVector> gradient_sample(const ConcaveToricFunction& g,
                                            const std::vector<ExponentVector>& samples,
                                            const ExponentVector& mu);

}  // namespace nil
