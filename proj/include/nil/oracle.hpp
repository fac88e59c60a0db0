#pragma once

// Floating-point convergence oracles for the orthant integrals behind the
// exact integrability tests. Nothing here feeds back into exact verdicts.

#include <cstdint>
#include <vector>

#include "nil/ideal.hpp"
#include "nil/toric.hpp"

namespace nil::oracle {

struct OracleConfig {
  /// Increasing truncation sizes T; at least three entries.
  std::vector<double> schedule{10, 20, 40, 80};
  /// Node budget of each one-dimensional integral: a peak search followed by
  /// Gauss-Legendre panels graded geometrically away from the peak (at least 48).
  std::size_t points_per_axis = 512;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20240611;
  double convergence_ratio_threshold = 0.6;
  double divergence_growth_threshold = 0.9;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws ConfigError when the configuration cannot produce a verdict.
  void validate() const;
};

enum class Convergence { Converges, Diverges, Inconclusive };

const char* to_string(Convergence c);

struct PartialValue {
  double box = 0;
  /// May be +inf when the value overflows a double; log_estimate stays finite.
  double estimate = 0;
  double log_estimate = 0;
};

struct ConvergenceVerdict {
  Convergence verdict = Convergence::Inconclusive;
  std::vector<PartialValue> partial_values;
  /// Increment of shell k over increment of shell k-1, for k >= 1. Increments
  /// that are negligible relative to the total are reported as 0.
  std::vector<double> increment_ratios;
};

/// Integral of exp(2(g(t) - <A, t>)) over [0, T]^n along the schedule.
ConvergenceVerdict orthant_exp_integral(const ConcaveToricFunction& g, const ExponentVector& shift,
                                        const OracleConfig& cfg);

/// Integral of exp(2((1+eps) g(t) - <A, t>)) / t_axis^2 over t_axis in [1, T],
/// other coordinates in [0, T].
ConvergenceVerdict adjoint_weighted_integral(const ConcaveToricFunction& g, const ExponentVector& shift,
                                             const Rational& eps, std::size_t axis,
                                             const OracleConfig& cfg);

enum class Weight { Plain, Poincare };

/// Monte Carlo estimate of the integral of |z^beta|^2 exp(-2 phi) over the
/// punctured polydisk of radius 1/2, optionally against the Poincare weight
/// 1/(|z_axis|^2 log^2 |z_axis|). Radii are sampled log-uniformly; shell k
/// holds the points whose smallest radius lies in [exp(-T_k), exp(-T_{k-1})).
ConvergenceVerdict polydisk_mc(const ConcaveToricFunction& g, const Monomial& beta, Weight weight,
                               std::size_t axis, const OracleConfig& cfg);

/// Verdict rule applied to per-shell log increments.
ConvergenceVerdict judge(const std::vector<double>& schedule, const std::vector<double>& shell_logs,
                         const OracleConfig& cfg);

}  // namespace nil::oracle
