#include "nil/newton.hpp"

#include <algorithm>

#include "nil/errors.hpp"
#include "nil/lp.hpp"

namespace nil {

ExponentVector ones(std::size_t n) { return ExponentVector(n, 1); }

ExponentVector ones_except(std::size_t n, std::size_t axis) {
  auto v = ones(n);
  if (axis < n) v[axis] = 0;
  return v;
}

bool dominated_by(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Interior:
      return "interior";
    case Verdict::Boundary:
      return "boundary";
    case Verdict::Exterior:
      return "exterior";
  }
  return "?";
}

NewtonPolyhedron NewtonPolyhedron::build(std::vector<ExponentVector> points) {
  if (points.empty()) throw InputError("a Newton polyhedron needs at least one generator");
  const std::size_t n = points.front().size();
  if (n == 0) throw InputError("a Newton polyhedron needs dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("generators have mixed dimensions");
    for (const auto& v : p)
      if (v < 0) throw InputError("generator has a negative coordinate: " + to_string(p));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<ExponentVector> minimal;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominated_by(points[j], points[i]);
    if (!dominated) minimal.push_back(points[i]);
  }
  return NewtonPolyhedron(n, std::move(minimal));
}

void NewtonPolyhedron::check_point(const ExponentVector& x) const {
  if (x.size() != dimension_)
    throw InputError("point has dimension " + std::to_string(x.size()) + ", expected " +
                     std::to_string(dimension_));
}

Rational NewtonPolyhedron::support(const ExponentVector& w) const {
  check_point(w);
  Rational best = dot(w, generators_.front());
  for (const auto& g : generators_) best = std::min(best, dot(w, g));
  return best;
}

namespace {

// Variables: t_1..t_m (>= 0), eps (>= 0 unless `free_margin`).
// Rows 0..n-1:  c*sum_j t_j a_ji + eps <= x_i.   Row n:  sum_j t_j = 1.
lp::LinearConstraintSystem margin_system(const std::vector<ExponentVector>& gens,
                                         const ExponentVector& x, const Rational& c,
                                         bool free_margin) {
  const std::size_t m = gens.size();
  const std::size_t n = x.size();
  lp::LinearConstraintSystem sys;
  sys.variable_count = m + 1;
  for (std::size_t j = 0; j < m; ++j) sys.nonnegative_variables.push_back(j);
  if (!free_margin) sys.nonnegative_variables.push_back(m);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) row[j] = c * gens[j][i];
    row[m] = 1;
    sys.add(std::move(row), lp::Relation::LessEqual, x[i]);
  }
  RationalVector simplex_row(m + 1, 1);
  simplex_row[m] = 0;
  sys.add(std::move(simplex_row), lp::Relation::Equal, 1);
  return sys;
}

RationalVector margin_objective(std::size_t m) {
  RationalVector obj(m + 1, 0);
  obj[m] = 1;
  return obj;
}

}  // namespace

PointClassification NewtonPolyhedron::classify(const ExponentVector& x, const Rational& c) const {
  check_point(x);
  if (c <= 0) throw InputError("scale c must be positive, got " + to_string(c));
  const std::size_t n = dimension_;
  const auto sys = margin_system(generators_, x, c, false);
  const auto outcome = lp::maximize(margin_objective(generators_.size()), sys);

  PointClassification out;
  if (outcome.status == lp::LpStatus::Optimal && outcome.optimum > 0) {
    out.verdict = Verdict::Interior;
    out.margin = outcome.optimum;
    return out;
  }
  // The first n multipliers of either certificate form the functional w.
  out.verdict = outcome.status == lp::LpStatus::Infeasible ? Verdict::Exterior : Verdict::Boundary;
  ExponentVector w(outcome.dual_certificate.begin(), outcome.dual_certificate.begin() + n);
  const Rational s = support(w) * c;
  Rational scale;
  if (s > 0) {
    scale = c / s;
  } else {
    Rational total = 0;
    for (const auto& v : w) total += v;
    scale = 1 / total;
  }
  for (auto& v : w) v *= scale;
  out.witness = std::move(w);
  return out;
}

Rational NewtonPolyhedron::signed_margin(const ExponentVector& x, const Rational& c) const {
  check_point(x);
  if (c <= 0) throw InputError("scale c must be positive, got " + to_string(c));
  const auto sys = margin_system(generators_, x, c, true);
  const auto outcome = lp::maximize(margin_objective(generators_.size()), sys);
  return outcome.optimum;  // always feasible and bounded
}

ExtendedRational NewtonPolyhedron::critical_scale(const ExponentVector& x) const {
  check_point(x);
  for (const auto& v : x)
    if (v <= 0) throw InputError("critical scale needs a strictly positive point, got " + to_string(x));
  const std::size_t m = generators_.size();
  auto sys = lp::LinearConstraintSystem::all_nonnegative(m);
  for (std::size_t i = 0; i < dimension_; ++i) {
    RationalVector row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = generators_[j][i];
    sys.add(std::move(row), lp::Relation::LessEqual, x[i]);
  }
  const auto outcome = lp::maximize(RationalVector(m, 1), sys);
  if (outcome.status == lp::LpStatus::Unbounded) return ExtendedRational::infinity();
  return outcome.optimum;
}

std::optional<NewtonPolyhedron> NewtonPolyhedron::axis_face(std::size_t axis) const {
  if (axis >= dimension_) throw InputError("axis index out of range");
  if (dimension_ < 2) throw InputError("an axis face needs dimension >= 2");
  std::vector<ExponentVector> projected;
  for (const auto& g : generators_) {
    if (g[axis] != 0) continue;
    ExponentVector p;
    for (std::size_t i = 0; i < dimension_; ++i)
      if (i != axis) p.push_back(g[i]);
    projected.push_back(std::move(p));
  }
  if (projected.empty()) return std::nullopt;
  return build(std::move(projected));
}

bool NewtonPolyhedron::in_relative_interior_of_axis_face(std::size_t axis, const ExponentVector& x,
                                                         const Rational& c) const {
  check_point(x);
  if (c <= 0) throw InputError("scale c must be positive, got " + to_string(c));
  if (x[axis] != 0) return false;
  const auto face = axis_face(axis);
  if (!face) return false;
  ExponentVector projected;
  for (std::size_t i = 0; i < dimension_; ++i)
    if (i != axis) projected.push_back(x[i]);
  return face->classify(projected, c).verdict == Verdict::Interior;
}

}  // namespace nil
