#include "nil/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "nil/errors.hpp"

namespace nil::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNegligible = 1e-12;

// Running log-sum-exp accumulator.
struct LogSum {
  double max = kNegInf;
  double sum = 0;  // sum of exp(x - max)

  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max) {
      sum += std::exp(x - max);
    } else {
      sum = sum * std::exp(max - x) + 1;
      max = x;
    }
  }
  void merge(const LogSum& o) {
    if (o.max == kNegInf) return;
    if (o.max <= max) {
      sum += o.sum * std::exp(o.max - max);
    } else {
      sum = sum * std::exp(max - o.max) + o.sum;
      max = o.max;
    }
  }
  double log() const { return max == kNegInf ? kNegInf : max + std::log(sum); }
};

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Gauss-Legendre nodes and weights of order 8 on [-1, 1].
constexpr double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066959719208,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066959719208,
                                  0.2223810344533745, 0.1012285362903763};

// Double-precision evaluation of g.
class FastG {
 public:
  explicit FastG(const ConcaveToricFunction& g, double scale = 1.0) : n_(g.dimension()) {
    if (g.is_piecewise_linear()) {
      for (const auto& p : g.piecewise_linear().pieces) {
        for (const auto& s : p.slope) slopes_.push_back(scale * s.get_d());
        offsets_.push_back(scale * p.offset.get_d());
      }
    } else {
      power_ = true;
      k_ = scale * g.power().k.get_d();
      for (const auto& a : g.power().alpha) alpha_.push_back(a.get_d());
    }
  }

  bool piecewise_linear() const { return !power_; }
  std::size_t pieces() const { return offsets_.size(); }
  double slope(std::size_t piece, std::size_t axis) const { return slopes_[piece * n_ + axis]; }
  double offset(std::size_t piece) const { return offsets_[piece]; }

  double operator()(const double* t) const {
    if (power_) {
      double log_prod = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (alpha_[i] == 0) continue;
        if (t[i] <= 0) return 0;
        log_prod += alpha_[i] * std::log(t[i]);
      }
      return k_ * std::exp(log_prod);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < offsets_.size(); ++j) {
      double v = offsets_[j];
      for (std::size_t i = 0; i < n_; ++i) v += slopes_[j * n_ + i] * t[i];
      best = std::min(best, v);
    }
    return best;
  }

 private:
  std::size_t n_;
  bool power_ = false;
  double k_ = 0;
  std::vector<double> alpha_, slopes_, offsets_;
};

unsigned worker_count(const OracleConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on a worker pool. Each task writes only its
// own slot, so results do not depend on scheduling.
template <typename Task>
void parallel_for(std::size_t count, unsigned workers, Task task) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) task(i);
    });
  for (auto& t : pool) t.join();
}

// Log integrand: exponent part and an optional -2 log t_axis term.
// log of the integral of exp(s y) over [0, len].
double log_exp_segment(double s, double len) {
  if (!(len > 0)) return kNegInf;
  const double x = s * len;
  if (std::abs(x) < 1e-12) return std::log(len);
  if (s > 0) return x + std::log(-std::expm1(-x)) - std::log(s);
  return std::log(-std::expm1(x)) - std::log(-s);
}

struct Integrand {
  FastG g;
  std::vector<double> shift;
  int poincare_axis = -1;

  double log_value(const double* t) const {
    double v = g(t);
    for (std::size_t i = 0; i < shift.size(); ++i) v -= shift[i] * t[i];
    v *= 2;
    if (poincare_axis >= 0) v -= 2 * std::log(t[poincare_axis]);
    return v;
  }

  bool closed_form_along(std::size_t axis) const {
    return g.piecewise_linear() && static_cast<int>(axis) != poincare_axis;
  }

  // Exact log-integral over t_axis in [lo, hi] for piecewise-linear g: the
  // exponent is the minimum of lines c_j + s_j x, integrated along its lower
  // envelope.
  double log_line_integral(double* t, std::size_t axis, double lo, double hi) const {
    const std::size_t m = g.pieces();
    std::vector<double> c(m), sl(m);
    double base = 0;
    for (std::size_t i = 0; i < shift.size(); ++i)
      if (i != axis) base -= shift[i] * t[i];
    for (std::size_t j = 0; j < m; ++j) {
      double v = g.offset(j) + base;
      for (std::size_t i = 0; i < shift.size(); ++i)
        if (i != axis) v += g.slope(j, i) * t[i];
      c[j] = 2 * v;
      sl[j] = 2 * (g.slope(j, axis) - shift[axis]);
    }
    const double extra = poincare_axis >= 0 ? -2 * std::log(t[poincare_axis]) : 0.0;
    auto value = [&](std::size_t j, double x) { return c[j] + sl[j] * x; };

    double x = lo;
    std::size_t active = 0;
    for (std::size_t j = 1; j < m; ++j) {
      const double vj = value(j, x), va = value(active, x);
      if (vj < va || (vj == va && sl[j] < sl[active])) active = j;
    }
    double acc = kNegInf;
    while (x < hi) {
      double next = hi;
      std::size_t next_active = active;
      for (std::size_t k = 0; k < m; ++k) {
        if (sl[k] >= sl[active]) continue;
        const double cross = (c[k] - c[active]) / (sl[active] - sl[k]);
        if (cross > x && (cross < next || (cross == next && sl[k] < sl[next_active]))) {
          next = cross;
          next_active = k;
        }
      }
      acc = log_add(acc, value(active, x) + log_exp_segment(sl[active], next - x));
      x = next;
      active = next_active;
    }
    return acc + extra;
  }
};

// Integrates exp(F) over [a, b] for a unimodal log-density F, returning the
// log of the integral. Marginals of log-concave densities are log-concave, so
// the same rule applies at every level of the nested integral.
class UnimodalRule {
 public:
  explicit UnimodalRule(std::size_t points) {
    panels_ = std::max<std::size_t>(2, (points > kSearch + 16 ? points - kSearch : 16) / 16);
    // Growth ratio r with first panel len * kFirst and panels_ panels covering len.
    double lo = 1.0 + 1e-9, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
      const double r = (lo + hi) / 2;
      const double covered = kFirst * (std::pow(r, static_cast<double>(panels_)) - 1) / (r - 1);
      (covered < 1 ? lo : hi) = r;
    }
    ratio_ = (lo + hi) / 2;
  }

  template <typename F>
  double log_integral(F&& f, double a, double b) const {
    if (!(b > a)) return kNegInf;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double lo = a, hi = b;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (std::size_t it = 0; it + 4 < kSearch; ++it) {
      if (f1 < f2) {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + phi * (hi - lo), f2 = f(x2);
      } else {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - phi * (hi - lo), f1 = f(x1);
      }
    }
    const double fa = f(a), fb = f(b);
    double peak = f1 >= f2 ? f1 : f2, mode = f1 >= f2 ? x1 : x2;
    if (fa >= peak) peak = fa, mode = a;
    if (fb > peak) peak = fb, mode = b;

    LogSum acc;
    side(f, mode, b, peak, acc);
    side(f, mode, a, peak, acc);
    return acc.log();
  }

 private:
  static constexpr std::size_t kSearch = 32;
  static constexpr double kFirst = 1e-6;
  static constexpr double kDrop = 60;  // log-units below the peak treated as zero

  template <typename F>
  void side(F& f, double from, double to, double peak, LogSum& acc) const {
    const double len = std::abs(to - from);
    if (len == 0) return;
    const double dir = to > from ? 1 : -1;
    double x = from, width = len * kFirst;
    for (std::size_t p = 0; p < panels_; ++p) {
      const double y = p + 1 == panels_ ? to : x + dir * width;
      const double half = (y - x) / 2, mid = (x + y) / 2;
      double last = kNegInf;
      for (int q = 0; q < 8; ++q) {
        last = f(mid + half * kGlNodes[q]);
        acc.add(std::log(std::abs(half) * kGlWeights[q]) + last);
      }
      if (last < peak - kDrop && f(y) < peak - kDrop) return;
      x = y;
      width *= ratio_;
    }
  }

  std::size_t panels_ = 2;
  double ratio_ = 2;
};

// Shell k is [L, T_k]^n minus [L, T_{k-1}]^n, split into n boxes by the first
// coordinate that exceeds T_{k-1}.
std::vector<std::pair<std::vector<double>, std::vector<double>>> shell_boxes(const std::vector<double>& lower,
                                                                             const std::vector<double>& schedule,
                                                                             std::size_t k) {
  const std::size_t n = lower.size();
  std::vector<std::pair<std::vector<double>, std::vector<double>>> boxes;
  if (k == 0) {
    boxes.emplace_back(lower, std::vector<double>(n, schedule[0]));
    return boxes;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> lo(lower), hi(n, schedule[k]);
    for (std::size_t j = 0; j < i; ++j) hi[j] = schedule[k - 1];
    lo[i] = schedule[k - 1];
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

std::vector<double> nested_quadrature(const Integrand& f, std::size_t n, const OracleConfig& cfg) {
  std::vector<double> lower(n, 0.0);
  if (f.poincare_axis >= 0) lower[f.poincare_axis] = 1.0;
  const UnimodalRule rule(cfg.points_per_axis);

  struct Task {
    std::size_t shell;
    std::vector<double> lo, hi;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < cfg.schedule.size(); ++k)
    for (auto& [lo, hi] : shell_boxes(lower, cfg.schedule, k)) tasks.push_back({k, std::move(lo), std::move(hi)});

  // Integration order: the Poincare axis outermost, so the innermost level can
  // use the closed form whenever g is piecewise linear.
  std::vector<std::size_t> order;
  if (f.poincare_axis >= 0) order.push_back(static_cast<std::size_t>(f.poincare_axis));
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<int>(i) != f.poincare_axis) order.push_back(i);

  std::vector<double> box_logs(tasks.size());
  parallel_for(tasks.size(), worker_count(cfg), [&](std::size_t i) {
    const auto& task = tasks[i];
    std::vector<double> t(n);
    std::function<double(std::size_t)> level = [&](std::size_t d) -> double {
      const std::size_t axis = order[d];
      if (d + 1 == n && f.closed_form_along(axis))
        return f.log_line_integral(t.data(), axis, task.lo[axis], task.hi[axis]);
      return rule.log_integral(
          [&](double x) {
            t[axis] = x;
            return d + 1 == n ? f.log_value(t.data()) : level(d + 1);
          },
          task.lo[axis], task.hi[axis]);
    };
    box_logs[i] = level(0);
  });

  std::vector<double> logs(cfg.schedule.size(), kNegInf);
  for (std::size_t i = 0; i < tasks.size(); ++i) logs[tasks[i].shell] = log_add(logs[tasks[i].shell], box_logs[i]);
  return logs;
}

void check_shift(const ConcaveToricFunction& g, const ExponentVector& shift) {
  if (shift.size() != g.dimension()) throw InputError("shift has the wrong dimension");
  for (const auto& v : shift)
    if (v < 0) throw InputError("shift must be componentwise >= 0");
}

std::vector<double> to_doubles(const ExponentVector& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace

const char* to_string(Convergence c) {
  switch (c) {
    case Convergence::Converges:
      return "converges";
    case Convergence::Diverges:
      return "diverges";
    case Convergence::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

void OracleConfig::validate() const {
  if (schedule.size() < 3) throw ConfigError("the truncation schedule needs at least 3 boxes");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > (i == 0 ? 1.0 : schedule[i - 1])))
      throw ConfigError("the truncation schedule must be strictly increasing and start above 1");
  }
  if (points_per_axis < 48) throw ConfigError("points per axis must be at least 48");
  auto in_unit = [](double x) { return x > 0 && x < 1; };
  if (!in_unit(convergence_ratio_threshold) || !in_unit(divergence_growth_threshold))
    throw ConfigError("ratio thresholds must lie in (0, 1)");
  if (convergence_ratio_threshold >= divergence_growth_threshold)
    throw ConfigError("the convergence threshold must be below the divergence threshold");
  if (mc_samples == 0) throw ConfigError("mc_samples must be positive");
}

ConvergenceVerdict judge(const std::vector<double>& schedule, const std::vector<double>& shell_logs,
                         const OracleConfig& cfg) {
  ConvergenceVerdict out;
  double running = kNegInf;
  bool all_small = true, all_large = true;
  for (std::size_t k = 0; k < shell_logs.size(); ++k) {
    const double previous = running;
    running = log_add(running, shell_logs[k]);
    out.partial_values.push_back({schedule[k], std::exp(running), running});
    if (k == 0) continue;
    // An increment that no longer moves the running value counts as zero.
    double ratio;
    if (shell_logs[k] == kNegInf || (previous != kNegInf && shell_logs[k] - previous < std::log(kNegligible)))
      ratio = 0;
    else if (shell_logs[k - 1] == kNegInf)
      ratio = std::numeric_limits<double>::infinity();
    else
      ratio = std::exp(shell_logs[k] - shell_logs[k - 1]);
    out.increment_ratios.push_back(ratio);
    all_small = all_small && ratio < cfg.convergence_ratio_threshold;
    all_large = all_large && ratio >= cfg.divergence_growth_threshold;
  }
  out.verdict = all_small   ? Convergence::Converges
                : all_large ? Convergence::Diverges
                            : Convergence::Inconclusive;
  return out;
}

ConvergenceVerdict orthant_exp_integral(const ConcaveToricFunction& g, const ExponentVector& shift,
                                        const OracleConfig& cfg) {
  cfg.validate();
  check_shift(g, shift);
  Integrand f{FastG(g), to_doubles(shift), -1};
  return judge(cfg.schedule, nested_quadrature(f, g.dimension(), cfg), cfg);
}

ConvergenceVerdict adjoint_weighted_integral(const ConcaveToricFunction& g, const ExponentVector& shift,
                                             const Rational& eps, std::size_t axis,
                                             const OracleConfig& cfg) {
  cfg.validate();
  check_shift(g, shift);
  if (eps < 0) throw InputError("epsilon must be >= 0");
  if (axis >= g.dimension()) throw InputError("axis out of range");
  Integrand f{FastG(g, Rational(1 + eps).get_d()), to_doubles(shift), static_cast<int>(axis)};
  return judge(cfg.schedule, nested_quadrature(f, g.dimension(), cfg), cfg);
}

ConvergenceVerdict polydisk_mc(const ConcaveToricFunction& g, const Monomial& beta, Weight weight,
                               std::size_t axis, const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.dimension();
  if (beta.size() != n) throw InputError("beta has the wrong dimension");
  for (auto b : beta)
    if (b < 0) throw InputError("beta must be natural");
  if (weight == Weight::Poincare && axis >= n) throw InputError("axis out of range");

  const FastG fast(g);
  const std::size_t shells = cfg.schedule.size();
  const std::uint64_t per_shell = std::max<std::uint64_t>(1, cfg.mc_samples / shells);
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (per_shell + kBlock - 1) / kBlock;
  const double log_half = std::log(0.5);
  const double log_two_pi = std::log(2 * std::acos(-1.0));

  std::vector<double> shell_logs(shells);
  for (std::size_t s = 0; s < shells; ++s) {
    // Radii log-uniform on [exp(-T_s), 1/2]; keep samples whose smallest
    // radius falls in this shell.
    const double log_lo = -cfg.schedule[s];
    const double lower_edge = s == 0 ? 0.0 : -cfg.schedule[s - 1];
    const double span = log_half - log_lo;
    std::vector<LogSum> block_sums(blocks);
    parallel_for(blocks, worker_count(cfg), [&](std::size_t b) {
      std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(b)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> t(n);
      const std::uint64_t count = std::min<std::uint64_t>(kBlock, per_shell - b * kBlock);
      LogSum acc;
      for (std::uint64_t j = 0; j < count; ++j) {
        double log_min_r = 0, log_f = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const double log_r = log_lo + span * unit(rng);
          log_min_r = i == 0 ? log_r : std::min(log_min_r, log_r);
          t[i] = -log_r;
          // |z_i|^(2 beta_i), area element 2 pi r dr, importance weight r * span.
          log_f += 2.0 * static_cast<double>(beta[i]) * log_r + log_two_pi + 2 * log_r + std::log(span);
          if (weight == Weight::Poincare && i == axis) log_f -= 2 * log_r + 2 * std::log(-log_r);
        }
        if (s > 0 && log_min_r >= lower_edge) continue;
        // exp(-2 phi) with phi(z) = -g(-log|z_1|, ..., -log|z_n|).
        log_f += 2 * fast(t.data());
        acc.add(log_f);
      }
      block_sums[b] = acc;
    });
    LogSum total;
    for (const auto& b : block_sums) total.merge(b);
    shell_logs[s] = total.log() - std::log(static_cast<double>(per_shell));
  }
  return judge(cfg.schedule, shell_logs, cfg);
}

}  // namespace nil::oracle
