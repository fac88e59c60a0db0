#include "nil/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nil/errors.hpp"

namespace nil {

namespace {

// Exponents alpha_i = p_i / q over a common denominator q.
struct CommonExponents {
  unsigned long q = 1;
  std::vector<unsigned long> p;
};

CommonExponents common_exponents(const ExponentVector& alpha) {
  mpz_class q = 1;
  for (const auto& a : alpha) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), a.get_den_mpz_t());
  if (!q.fits_ulong_p()) throw InputError("exponent denominators are too large");
  CommonExponents out;
  out.q = q.get_ui();
  for (const auto& a : alpha) {
    mpz_class pi = a.get_num() * (q / a.get_den());
    out.p.push_back(pi.get_ui());
  }
  return out;
}

Rational exponent_sum(const ExponentVector& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), Rational(0));
}

double to_double(const Rational& q) { return q.get_d(); }

// Sign of prod_{alpha_i > 0} (lambda_i / alpha_i)^alpha_i - k, for sum alpha = 1.
int compare_product(const PowerProduct& pp, const ExponentVector& lambda) {
  const auto ce = common_exponents(pp.alpha);
  Rational lhs = 1;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (ce.p[i] == 0) continue;
    if (lambda[i] == 0) return -1;
    lhs *= pow(lambda[i] / pp.alpha[i], ce.p[i]);
  }
  return cmp(lhs, pow(pp.k, ce.q));
}

RealValue power_value(const PowerProduct& pp, const ExponentVector& x) {
  RealValue out;
  long double approx = to_double(pp.k);
  Rational exact = pp.k;
  bool is_exact = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& a = pp.alpha[i];
    if (a == 0) continue;
    if (x[i] == 0) {
      out.exact = Rational(0);
      out.approx = 0.0;
      return out;
    }
    approx *= std::pow(static_cast<long double>(to_double(x[i])), static_cast<long double>(to_double(a)));
    if (is_exact) {
      Rational root;
      if (a.get_den().fits_ulong_p() && a.get_num().fits_ulong_p() &&
          exact_root(x[i], a.get_den().get_ui(), root))
        exact *= pow(root, a.get_num().get_ui());
      else
        is_exact = false;
    }
  }
  if (is_exact) {
    out.exact = exact;
    out.approx = exact.get_d();
  } else {
    out.approx = static_cast<double>(approx);
  }
  return out;
}

void check_dimension(const ConcaveToricFunction& g, const ExponentVector& x) {
  if (x.size() != g.dimension())
    throw InputError("point has dimension " + std::to_string(x.size()) + ", expected " +
                     std::to_string(g.dimension()));
}

void check_nonnegative(const ExponentVector& x, const char* what) {
  for (const auto& v : x)
    if (v < 0) throw InputError(std::string(what) + " must be componentwise >= 0, got " + to_string(x));
}

Rational min_entry(const ExponentVector& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

ConcaveToricFunction ConcaveToricFunction::piecewise_linear_min(std::vector<AffinePiece> pieces) {
  if (pieces.empty()) throw InputError("a piecewise-linear minimum needs at least one piece");
  const std::size_t n = pieces.front().slope.size();
  if (n == 0) throw InputError("toric functions need dimension >= 1");
  for (const auto& p : pieces) {
    if (p.slope.size() != n) throw InputError("pieces have mixed dimensions");
    for (const auto& s : p.slope)
      if (s < 0) throw InputError("slopes must be non-negative, got " + to_string(p.slope));
  }
  return ConcaveToricFunction(PiecewiseLinearMin{std::move(pieces)});
}

ConcaveToricFunction ConcaveToricFunction::power_product(Rational k, ExponentVector alpha) {
  if (k <= 0) throw InputError("power product needs k > 0");
  if (alpha.empty()) throw InputError("toric functions need dimension >= 1");
  check_nonnegative(alpha, "exponents");
  if (exponent_sum(alpha) > 1) throw InputError("power product is concave only when sum of exponents <= 1");
  return ConcaveToricFunction(PowerProduct{std::move(k), std::move(alpha)});
}

std::size_t ConcaveToricFunction::dimension() const {
  if (is_piecewise_linear()) return piecewise_linear().pieces.front().slope.size();
  return power().alpha.size();
}

ConcaveToricFunction ConcaveToricFunction::scaled(const Rational& c) const {
  if (c <= 0) throw InputError("scale must be positive");
  if (is_piecewise_linear()) {
    auto pieces = piecewise_linear().pieces;
    for (auto& p : pieces) {
      for (auto& s : p.slope) s *= c;
      p.offset *= c;
    }
    return ConcaveToricFunction(PiecewiseLinearMin{std::move(pieces)});
  }
  return ConcaveToricFunction(PowerProduct{power().k * c, power().alpha});
}

bool ConcaveToricFunction::is_homogeneous_power() const {
  return !is_piecewise_linear() && exponent_sum(power().alpha) == 1;
}

NewtonPolyhedron ConcaveToricFunction::slope_polyhedron() const {
  std::vector<ExponentVector> slopes;
  for (const auto& p : piecewise_linear().pieces) slopes.push_back(p.slope);
  return NewtonPolyhedron::build(std::move(slopes));
}

RealValue evaluate(const ConcaveToricFunction& g, const ExponentVector& x) {
  check_dimension(g, x);
  check_nonnegative(x, "evaluation point");
  if (g.is_piecewise_linear()) {
    const auto& pieces = g.piecewise_linear().pieces;
    Rational best = dot(pieces.front().slope, x) + pieces.front().offset;
    for (const auto& p : pieces) best = std::min(best, Rational(dot(p.slope, x) + p.offset));
    return {best, best.get_d()};
  }
  return power_value(g.power(), x);
}

RealValue homogenized_value(const ConcaveToricFunction& g, const ExponentVector& w) {
  check_dimension(g, w);
  check_nonnegative(w, "direction");
  if (std::all_of(w.begin(), w.end(), [](const Rational& v) { return v == 0; }))
    throw InputError("homogenization is undefined at w = 0");
  if (g.is_piecewise_linear()) {
    const auto& pieces = g.piecewise_linear().pieces;
    Rational best = dot(pieces.front().slope, w);
    for (const auto& p : pieces) best = std::min(best, dot(p.slope, w));
    return {best, best.get_d()};
  }
  if (!g.is_homogeneous_power()) return {Rational(0), 0.0};
  return power_value(g.power(), w);
}

int compare_homogenized(const ConcaveToricFunction& g, const ExponentVector& w, const Rational& v) {
  if (g.is_piecewise_linear() || !g.is_homogeneous_power()) {
    return cmp(*homogenized_value(g, w).exact, v);
  }
  check_dimension(g, w);
  check_nonnegative(w, "direction");
  const auto& pp = g.power();
  if (v < 0) return 1;
  const auto ce = common_exponents(pp.alpha);
  Rational lhs = pow(pp.k, ce.q);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (ce.p[i] == 0) continue;
    if (w[i] == 0) return v == 0 ? 0 : -1;
    lhs *= pow(w[i], ce.p[i]);
  }
  return cmp(lhs, pow(v, ce.q));
}

namespace {

PointClassification classify_sublinear_power(const ExponentVector& lambda) {
  // The body contains the open orthant and its closure is the closed orthant.
  PointClassification out;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) {
      out.verdict = Verdict::Boundary;
      out.witness.assign(lambda.size(), 0);
      out.witness[i] = 1;
      return out;
    }
  }
  out.verdict = Verdict::Interior;
  out.margin = min_entry(lambda);
  return out;
}

bool in_closed_power_body(const PowerProduct& pp, const ExponentVector& lambda) {
  for (const auto& v : lambda)
    if (v < 0) return false;
  return compare_product(pp, lambda) >= 0;
}

PointClassification classify_homogeneous_power(const ConcaveToricFunction& g,
                                               const ExponentVector& lambda) {
  const auto& pp = g.power();
  const std::size_t n = lambda.size();
  PointClassification out;
  const int sign = compare_product(pp, lambda);

  if (sign > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (lambda[i] == 0) {  // only possible where alpha_i = 0
        out.verdict = Verdict::Boundary;
        out.witness.assign(n, 0);
        out.witness[i] = 1;
        return out;
      }
    }
    out.verdict = Verdict::Interior;
    auto shifted = [&](const Rational& m) {
      ExponentVector y = lambda;
      for (auto& v : y) v -= m;
      return y;
    };
    Rational hi = min_entry(lambda);
    if (in_closed_power_body(pp, shifted(hi))) {
      out.margin = hi;
      return out;
    }
    Rational lo = 0;
    for (int step = 0; step < 24; ++step) {
      Rational mid = (lo + hi) / 2;
      if (in_closed_power_body(pp, shifted(mid)))
        lo = mid;
      else
        hi = mid;
    }
    out.margin = lo;
    if (lo == 0) {
      // Bisection did not resolve a positive margin; fall back to a halving search.
      Rational m = min_entry(lambda);
      while (!in_closed_power_body(pp, shifted(m))) m /= 2;
      out.margin = m;
    }
    return out;
  }

  // Witness from equality in weighted AM-GM: w_i = alpha_i / lambda_i.
  ExponentVector w(n, 0);
  bool has_gap = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (pp.alpha[i] == 0) continue;
    if (lambda[i] == 0) {
      w[i] = 1;
      has_gap = true;
    } else {
      w[i] = pp.alpha[i] / lambda[i];
    }
  }
  if (sign == 0) {
    out.verdict = Verdict::Boundary;
    out.witness = std::move(w);
    return out;
  }
  out.verdict = Verdict::Exterior;
  if (has_gap) {
    // Grow the weight on the vanishing coordinates until the gap is certified.
    Rational big = 1;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i)
        if (pp.alpha[i] != 0 && lambda[i] == 0) w[i] = big;
      if (compare_homogenized(g, w, dot(w, lambda)) > 0) break;
      big *= 2;
    }
  }
  out.witness = std::move(w);
  return out;
}

}  // namespace

PointClassification classify_in_body(const ConcaveToricFunction& g, const ExponentVector& lambda) {
  check_dimension(g, lambda);
  check_nonnegative(lambda, "lambda");
  if (g.is_piecewise_linear()) return g.slope_polyhedron().classify(lambda, 1);
  if (!g.is_homogeneous_power()) return classify_sublinear_power(lambda);
  return classify_homogeneous_power(g, lambda);
}

bool exp_integrable(const ConcaveToricFunction& g) {
  return classify_in_body(g, ExponentVector(g.dimension(), 0)).verdict == Verdict::Interior;
}

bool exp_integrable_shifted(const ConcaveToricFunction& g, const ExponentVector& shift) {
  return classify_in_body(g, shift).verdict == Verdict::Interior;
}

namespace {

// Rational upper bound r >= k / prod (x_i/alpha_i)^alpha_i, the supremum of
// g^(w) / <w, x> for a homogeneous power product.
Rational ratio_upper_bound(const PowerProduct& pp, const ExponentVector& x) {
  const auto ce = common_exponents(pp.alpha);
  Rational base = 1;
  long double approx_log = std::log(static_cast<long double>(pp.k.get_d()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (ce.p[i] == 0) continue;
    base *= pow(x[i] / pp.alpha[i], ce.p[i]);
    approx_log -= static_cast<long double>(pp.alpha[i].get_d()) *
                  std::log(static_cast<long double>(Rational(x[i] / pp.alpha[i]).get_d()));
  }
  const Rational kq = pow(pp.k, ce.q);
  Rational r(static_cast<double>(std::exp(approx_log) * (1 + 1e-12L)));
  if (r <= 0) r = Rational(1, 1 << 30);
  while (pow(r, ce.q) * base < kq) r *= Rational(1000001, 1000000);
  return r;
}

}  // namespace

ValuativeReport valuative_membership(const ConcaveToricFunction& g, const ExponentVector& beta) {
  check_dimension(g, beta);
  check_nonnegative(beta, "beta");
  ExponentVector x = beta;
  for (auto& v : x) v += 1;
  auto cls = classify_in_body(g, x);
  ValuativeReport report;
  report.member = cls.verdict == Verdict::Interior;
  if (!report.member) {
    report.certificate = std::move(cls.witness);
    return report;
  }
  if (g.is_piecewise_linear()) {
    const auto crit = g.slope_polyhedron().critical_scale(x);
    report.margin = crit.is_infinite() ? Rational(1) : Rational(1 - 1 / crit.value());
  } else if (!g.is_homogeneous_power()) {
    report.margin = 1;
  } else {
    report.margin = 1 - ratio_upper_bound(g.power(), x);
  }
  return report;
}

bool certifies_non_membership(const ConcaveToricFunction& g, const ExponentVector& beta,
                              const ExponentVector& w) {
  if (w.size() != beta.size()) return false;
  Rational total = 0;
  for (const auto& v : w) {
    if (v < 0) return false;
    total += v;
  }
  if (total == 0) return false;
  return compare_homogenized(g, w, dot(w, beta) + total) >= 0;
}

std::vector<ExponentVector> gradient_sample(const ConcaveToricFunction& g,
                                            const std::vector<ExponentVector>& samples,
                                            const ExponentVector& mu) {
  if (g.is_piecewise_linear()) throw InputError("gradient sampling needs a power product");
  const auto& pp = g.power();
  const std::size_t n = g.dimension();
  if (mu.size() != n) throw InputError("mu has the wrong dimension");
  for (const auto& m : mu)
    if (m <= 0) throw InputError("mu must be strictly positive");
  const auto ce = common_exponents(pp.alpha);

  std::vector<ExponentVector> out;
  for (const auto& v : samples) {
    check_dimension(g, v);
    for (const auto& c : v)
      if (c <= 0) throw InputError("gradient samples must be strictly positive, got " + to_string(v));
    const auto value = power_value(pp, v);
    // prod v_i^p_i, the q-th power of prod v_i^alpha_i.
    Rational monomial_q = 1;
    for (std::size_t i = 0; i < n; ++i) monomial_q *= pow(v[i], ce.p[i]);

    ExponentVector point(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (pp.alpha[i] == 0) {
        point[i] = mu[i];
        continue;
      }
      Rational grad;
      if (value.exact) {
        grad = pp.alpha[i] * *value.exact / v[i];
      } else {
        // Round up until grad >= alpha_i k prod v^alpha / v_i holds exactly.
        grad = Rational(pp.alpha[i].get_d() * value.approx / v[i].get_d() * (1 + 1e-12));
        const Rational scale = v[i] / (pp.alpha[i] * pp.k);
        while (grad <= 0 || pow(grad * scale, ce.q) < monomial_q) {
          grad = grad <= 0 ? Rational(1, 1 << 20) : Rational(grad * Rational(1000001, 1000000));
        }
      }
      point[i] = grad + mu[i];
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace nil
