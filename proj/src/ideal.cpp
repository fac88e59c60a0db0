#include "nil/ideal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "nil/errors.hpp"

namespace nil {

ExponentVector to_exponents(const Monomial& m) {
  ExponentVector out;
  out.reserve(m.size());
  for (auto v : m) out.emplace_back(static_cast<long>(v));
  return out;
}

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void check_axis(const MonomialIdeal& a, std::size_t axis) {
  if (axis >= a.dimension())
    throw InputError("axis " + std::to_string(axis) + " out of range for dimension " +
                     std::to_string(a.dimension()));
}

void check_scale(const Rational& c) {
  if (c <= 0) throw InputError("exponent c must be positive, got " + to_string(c));
}

void check_nonzero(const MonomialIdeal& a) {
  if (a.is_zero()) throw InputError("the zero ideal has no Newton polyhedron");
}

std::int64_t scaled_max_ceiling(const MonomialIdeal& a, const Rational& c, std::size_t i) {
  std::int64_t best = 0;
  for (const auto& g : a.generators()) best = std::max(best, g[i]);
  return ceil(c * Rational(static_cast<long>(best))).get_si();
}

}  // namespace

MonomialIdeal MonomialIdeal::minimalize(std::size_t dimension, std::vector<Monomial> exponents) {
  for (const auto& e : exponents) {
    if (e.size() != dimension)
      throw InputError("monomial has " + std::to_string(e.size()) + " exponents, expected " +
                       std::to_string(dimension));
    for (auto v : e)
      if (v < 0) throw InputError("monomial exponents must be natural numbers");
  }
  std::sort(exponents.begin(), exponents.end());
  exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
  std::vector<Monomial> minimal;
  // Lexicographic order puts every divisor before its multiples.
  for (auto& e : exponents) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(),
                                 [&](const Monomial& m) { return divides(m, e); });
    if (!dominated) minimal.push_back(std::move(e));
  }
  // Emit in lex monomial order: x^2 before x*y before y^3.
  std::reverse(minimal.begin(), minimal.end());
  return MonomialIdeal(dimension, std::move(minimal));
}

MonomialIdeal MonomialIdeal::zero(std::size_t dimension) { return MonomialIdeal(dimension, {}); }

MonomialIdeal MonomialIdeal::unit(std::size_t dimension) {
  return MonomialIdeal(dimension, {Monomial(dimension, 0)});
}

bool MonomialIdeal::is_unit() const {
  return generators_.size() == 1 &&
         std::all_of(generators_[0].begin(), generators_[0].end(), [](auto v) { return v == 0; });
}

bool MonomialIdeal::contains(const Monomial& beta) const {
  if (beta.size() != dimension_) throw InputError("monomial dimension mismatch");
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const Monomial& g) { return divides(g, beta); });
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const Monomial& g) { return contains(g); });
}

NewtonPolyhedron MonomialIdeal::newton_polyhedron() const {
  check_nonzero(*this);
  std::vector<ExponentVector> points;
  for (const auto& g : generators_) points.push_back(to_exponents(g));
  return NewtonPolyhedron::build(std::move(points));
}

MonomialIdeal minimal_members(const std::vector<std::int64_t>& caps, const MembershipPredicate& member) {
  const std::size_t n = caps.size();
  std::vector<Monomial> found;
  Monomial beta(n, 0);
  for (;;) {
    beta[0] = caps[0];
    if (member(beta)) {
      std::int64_t lo = 0, hi = caps[0];  // hi is a member
      while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        beta[0] = mid;
        if (member(beta))
          hi = mid;
        else
          lo = mid + 1;
      }
      beta[0] = hi;
      found.push_back(beta);
    }
    // Advance the tail (coordinates 1..n-1) like an odometer.
    std::size_t i = 1;
    while (i < n && beta[i] == caps[i]) beta[i++] = 0;
    if (i >= n) break;
    ++beta[i];
  }
  return MonomialIdeal::minimalize(n, std::move(found));
}

namespace {

// Enumerates within `caps`, then re-enumerates with every cap raised by two;
// a mismatch means a cap was too small.
MonomialIdeal audited_members(const std::vector<std::int64_t>& caps, const MembershipPredicate& member) {
  auto result = minimal_members(caps, member);
  auto wider = caps;
  for (auto& v : wider) v += 2;
  if (minimal_members(wider, member) != result)
    throw std::logic_error("generator enumeration changed when the caps were enlarged");
  return result;
}

}  // namespace

std::vector<std::int64_t> multiplier_caps(const MonomialIdeal& a, const Rational& c) {
  std::vector<std::int64_t> caps(a.dimension());
  for (std::size_t i = 0; i < caps.size(); ++i) caps[i] = scaled_max_ceiling(a, c, i);
  return caps;
}

bool in_multiplier_ideal(const NewtonPolyhedron& p, const Monomial& beta, const Rational& c) {
  auto x = to_exponents(beta);
  for (auto& v : x) v += 1;
  // Cheap acceptance: x sits strictly above a scaled generator.
  for (const auto& g : p.generators()) {
    bool strictly_above = true;
    for (std::size_t i = 0; i < x.size() && strictly_above; ++i) strictly_above = x[i] > c * g[i];
    if (strictly_above) return true;
  }
  return p.classify(x, c).verdict == Verdict::Interior;
}

MonomialIdeal multiplier_ideal(const MonomialIdeal& a, const Rational& c) {
  check_nonzero(a);
  check_scale(c);
  const auto p = a.newton_polyhedron();
  return audited_members(multiplier_caps(a, c),
                         [&](const Monomial& beta) { return in_multiplier_ideal(p, beta, c); });
}

bool in_multiplier_ideal_toric(const ConcaveToricFunction& g, const Monomial& beta) {
  auto x = to_exponents(beta);
  for (auto& v : x) v += 1;
  return classify_in_body(g, x).verdict == Verdict::Interior;
}

std::vector<std::int64_t> multiplier_toric_caps(const ConcaveToricFunction& g) {
  const std::size_t n = g.dimension();
  std::vector<std::int64_t> caps(n, 0);
  if (g.is_piecewise_linear()) {
    for (const auto& piece : g.piecewise_linear().pieces)
      for (std::size_t i = 0; i < n; ++i) caps[i] = std::max(caps[i], ceil(piece.slope[i]).get_si());
    return caps;
  }
  if (!g.is_homogeneous_power()) return caps;
  // Smallest b with b*e_i a member; it exists whenever alpha_i > 0.
  for (std::size_t i = 0; i < n; ++i) {
    if (g.power().alpha[i] == 0) continue;
    Monomial probe(n, 0);
    while (!in_multiplier_ideal_toric(g, probe)) ++probe[i];
    caps[i] = probe[i];
  }
  return caps;
}

MonomialIdeal multiplier_ideal_toric(const ConcaveToricFunction& g) {
  if (!g.is_piecewise_linear() && !g.is_homogeneous_power()) return MonomialIdeal::unit(g.dimension());
  return audited_members(multiplier_toric_caps(g),
                         [&](const Monomial& beta) { return in_multiplier_ideal_toric(g, beta); });
}

ExtendedRational lct(const MonomialIdeal& a) {
  check_nonzero(a);
  return a.newton_polyhedron().critical_scale(ones(a.dimension()));
}

std::vector<Rational> jumping_numbers(const MonomialIdeal& a, const Rational& c_max) {
  check_nonzero(a);
  check_scale(c_max);
  if (a.is_unit()) throw InputError("the unit ideal has no jumping numbers");
  const auto p = a.newton_polyhedron();
  const auto caps = multiplier_caps(a, c_max);
  const std::size_t n = a.dimension();
  std::set<Rational> jumps;
  Monomial beta(n, 0);
  for (;;) {
    auto x = to_exponents(beta);
    for (auto& v : x) v += 1;
    const auto crit = p.critical_scale(x);
    if (!crit.is_infinite() && crit.value() <= c_max) jumps.insert(crit.value());
    std::size_t i = 0;
    while (i < n && beta[i] == caps[i]) beta[i++] = 0;
    if (i >= n) break;
    ++beta[i];
  }
  return {jumps.begin(), jumps.end()};
}

Rational openness_margin(const MonomialIdeal& a, const Rational& c) {
  check_nonzero(a);
  check_scale(c);
  const auto p = a.newton_polyhedron();
  const auto j = multiplier_ideal(a, c);
  std::optional<Rational> best;
  for (const auto& beta : j.generators()) {
    auto x = to_exponents(beta);
    for (auto& v : x) v += 1;
    const auto crit = p.critical_scale(x);
    if (crit.is_infinite()) continue;
    const Rational margin = crit.value() / c - 1;
    if (!best || margin < *best) best = margin;
  }
  if (!best) return 1;
  return *best / 2;
}

namespace {

void check_adjoint_hypothesis(const MonomialIdeal& a, std::size_t axis) {
  check_nonzero(a);
  check_axis(a, axis);
  if (a.dimension() < 2) throw InputError("adjoint ideals need at least two variables");
  const bool has_free = std::any_of(a.generators().begin(), a.generators().end(),
                                    [&](const Monomial& g) { return g[axis] == 0; });
  if (!has_free)
    throw HypothesisError("every generator is divisible by the axis variable; the weight is "
                          "identically -inf on the hyperplane");
}

}  // namespace

std::vector<std::int64_t> adjoint_caps(const MonomialIdeal& a, const Rational& c, std::size_t axis) {
  auto caps = multiplier_caps(a, c);
  caps[axis] += 1;
  return caps;
}

bool in_adjoint_ideal(const NewtonPolyhedron& p, const Monomial& beta, const Rational& c,
                      std::size_t axis) {
  auto x = to_exponents(beta);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != axis) x[i] += 1;
  if (p.classify(x, c).verdict == Verdict::Interior) return true;
  return p.in_relative_interior_of_axis_face(axis, x, c);
}

MonomialIdeal adjoint_ideal(const MonomialIdeal& a, const Rational& c, std::size_t axis) {
  check_scale(c);
  check_adjoint_hypothesis(a, axis);
  const auto p = a.newton_polyhedron();
  const auto face = p.axis_face(axis);
  return audited_members(adjoint_caps(a, c, axis), [&](const Monomial& beta) {
    auto x = to_exponents(beta);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != axis) x[i] += 1;
    if (p.classify(x, c).verdict == Verdict::Interior) return true;
    if (beta[axis] != 0 || !face) return false;
    ExponentVector projected;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != axis) projected.push_back(x[i]);
    return face->classify(projected, c).verdict == Verdict::Interior;
  });
}

Rational adj0_power_sum(const ExponentVector& alpha, const Monomial& beta) {
  if (alpha.size() != beta.size()) throw InputError("exponent vector dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] <= 0) throw InputError("the power family needs every exponent positive");
    if (beta[i] < 0) throw InputError("monomial exponents must be natural numbers");
    total += Rational(static_cast<long>(beta[i]) + 1) / alpha[i];
  }
  return total;
}

bool adj0_power_membership(const Rational& k, const ExponentVector& alpha, std::size_t axis,
                           const Monomial& beta) {
  if (k <= 0) throw InputError("k must be positive");
  if (axis >= alpha.size()) throw InputError("axis out of range");
  const Rational sum = adj0_power_sum(alpha, beta);
  const Rational threshold = k + 1 / alpha[axis];
  if (sum > threshold) return true;
  return sum == threshold && beta[axis] > 0;
}

MonomialIdeal restrict_to_axis(const MonomialIdeal& a, std::size_t axis) {
  check_axis(a, axis);
  if (a.dimension() < 2) throw InputError("restriction needs at least two variables");
  std::vector<Monomial> projected;
  for (const auto& g : a.generators()) {
    if (g[axis] != 0) continue;
    Monomial m;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (i != axis) m.push_back(g[i]);
    projected.push_back(std::move(m));
  }
  return MonomialIdeal::minimalize(a.dimension() - 1, std::move(projected));
}

MonomialIdeal shift_by_axis(const MonomialIdeal& a, std::size_t axis) {
  check_axis(a, axis);
  auto gens = a.generators();
  for (auto& g : gens) ++g[axis];
  return MonomialIdeal::minimalize(a.dimension(), std::move(gens));
}

MonomialIdeal intersect_axis_multiples(const MonomialIdeal& a, std::size_t axis) {
  check_axis(a, axis);
  auto gens = a.generators();
  for (auto& g : gens) g[axis] = std::max<std::int64_t>(g[axis], 1);
  return MonomialIdeal::minimalize(a.dimension(), std::move(gens));
}

AdjunctionReport adjunction_report(const MonomialIdeal& a, const Rational& c, std::size_t axis) {
  AdjunctionReport r;
  r.adjoint = adjoint_ideal(a, c, axis);
  r.multiplier = multiplier_ideal(a, c);
  r.restricted_multiplier = multiplier_ideal(restrict_to_axis(a, axis), c);
  r.kernel = shift_by_axis(r.multiplier, axis);
  r.restriction = restrict_to_axis(r.adjoint, axis);
  r.kernel_exact = intersect_axis_multiples(r.adjoint, axis) == r.kernel;
  r.restriction_exact = r.restriction == r.restricted_multiplier;
  return r;
}

ConcaveToricFunction toric_function_of(const MonomialIdeal& a, const Rational& c) {
  check_nonzero(a);
  check_scale(c);
  std::vector<AffinePiece> pieces;
  for (const auto& g : a.generators()) {
    auto slope = to_exponents(g);
    for (auto& v : slope) v *= c;
    pieces.push_back({std::move(slope), 0});
  }
  return ConcaveToricFunction::piecewise_linear_min(std::move(pieces));
}

}  // namespace nil
