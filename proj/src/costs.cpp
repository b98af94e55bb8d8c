#include "lca/costs.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace lca::costs {

namespace {

inline double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_finite(std::span<const double> v, const char* msg) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument(msg);
}

// g(a) = a + lambda * C'(a) for the transformed-l1 cost, a >= 0.
inline double tl1_g(double a, double lam, double beta) {
  const double d = 1.0 + beta * a;
  return a + lam * beta / (d * d);
}

// Largest root of tl1's g(a) = x on the increasing branch, safeguarded
// Newton with a bisection bracket.  Caller guarantees x is at or above the
// real-valuedness bound so the root exists.
double tl1_root(double x, double lam, double beta) {
  double lo = 0.0;
  const double crit = 2.0 * lam * beta * beta;  // g'(a) = 0 at (1+beta*a)^3 = crit
  if (crit > 1.0) lo = (std::cbrt(crit) - 1.0) / beta;
  if (tl1_g(lo, lam, beta) >= x) return lo;
  double hi = x;  // g(x) > x, so the root is below x
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = tl1_g(a, lam, beta) - x;
    if (std::abs(r) <= 1e-15 * std::max(1.0, x)) break;
    if (r > 0.0)
      hi = a;
    else
      lo = a;
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    const double d = 1.0 + beta * a;
    const double gp = 1.0 - crit / (d * d * d);
    double next = gp > 0.0 ? a - r / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    a = next;
  }
  return a;
}

// Nonzero stationary point of the approximate-lp low-range prox, the
// positive increasing branch of the quadratic inversion.
inline double lp_low_root(double x, double lam, double c, double s) {
  const double disc = (x + s) * (x + s) - 4.0 * lam * c * s;
  if (disc <= 0.0) return 0.5 * (x - s);
  return 0.5 * ((x - s) + std::sqrt(disc));
}

// Keep/kill boundary by bisection on the prox energy crossing: below the
// returned |u| the zero output has strictly lower energy than the nonzero
// stationary branch.  `excess` must be positive at lo and decreasing.
template <typename F>
double bisect_crossing(double lo, double hi_seed, F excess) {
  if (excess(lo) <= 0.0) return lo;
  double hi = std::max(hi_seed, lo + 0.5);
  int guard = 0;
  while (excess(hi) > 0.0 && guard++ < 100) hi = lo + 2.0 * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double tl1_dead_zone(double lam, double beta) {
  if (2.0 * lam * beta * beta <= 1.0) return lam * beta;  // continuous activation
  const double u_rv = 3.0 * std::cbrt(lam / (4.0 * beta)) - 1.0 / beta;
  auto excess = [lam, beta](double x) {
    const double a = tl1_root(x, lam, beta);
    if (a <= 0.0) return 1.0;
    const double h = 0.5 * (x - a) * (x - a) + lam * beta * a / (1.0 + beta * a);
    return h - 0.5 * x * x;
  };
  return bisect_crossing(std::max(u_rv, 0.0), lam * beta, excess);
}

double lp_low_dead_zone(double lam, double c, double s) {
  if (lam * c <= s) return lam * c;  // continuous activation
  const double u_rv = 2.0 * std::sqrt(lam * c * s) - s;
  auto excess = [lam, c, s](double x) {
    const double a = lp_low_root(x, lam, c, s);
    if (a <= 0.0) return 1.0;
    const double h = 0.5 * (x - a) * (x - a) + lam * c * s * std::log1p(a / s);
    return h - 0.5 * x * x;
  };
  return bisect_crossing(std::max(u_rv, 0.0), lam * c, excess);
}

ActivationSpec make(Family f, double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "ActivationSpec: lambda must be positive");
  ActivationSpec spec;
  spec.family = f;
  spec.lambda = lambda;
  return spec;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::L1: return "l1";
    case Family::L0: return "l0";
    case Family::ApproxLpLow: return "approx_lp_low";
    case Family::ApproxLpHigh: return "approx_lp_high";
    case Family::Scad: return "scad";
    case Family::TransformedL1: return "transformed_l1";
    case Family::Huber: return "huber";
    case Family::Asib: return "asib";
    case Family::BlockL1: return "block_l1";
    case Family::LogBarrier: return "log_barrier";
    case Family::WeightedL1: return "weighted_l1";
    case Family::WeightedL2: return "weighted_l2";
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  static constexpr std::array<Family, 12> all = {
      Family::L1,      Family::L0,          Family::ApproxLpLow, Family::ApproxLpHigh,
      Family::Scad,    Family::TransformedL1, Family::Huber,     Family::Asib,
      Family::BlockL1, Family::LogBarrier,  Family::WeightedL1,  Family::WeightedL2};
  for (Family f : all)
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown cost family: " + std::string(name));
}

bool is_separable(Family f) { return f != Family::BlockL1; }

bool is_convex(Family f) {
  switch (f) {
    case Family::L1:
    case Family::ApproxLpHigh:
    case Family::Huber:
    case Family::BlockL1:
    case Family::LogBarrier:
    case Family::WeightedL1:
    case Family::WeightedL2:
      return true;
    default:
      return false;
  }
}

bool gap_certified(Family f) {
  return f == Family::L1 || f == Family::WeightedL1;
}

ActivationSpec ActivationSpec::l1(double lambda) {
  auto spec = make(Family::L1, lambda);
  spec.dead_zone = lambda;
  return spec;
}

ActivationSpec ActivationSpec::l0(double lambda) {
  auto spec = make(Family::L0, lambda);
  spec.dead_zone = lambda;
  return spec;
}

ActivationSpec ActivationSpec::approx_lp_low(double lambda, double c, double s) {
  require(std::isfinite(c) && c > 0.0 && std::isfinite(s) && s > 0.0,
          "approx_lp_low: c and s must be positive");
  auto spec = make(Family::ApproxLpLow, lambda);
  spec.c = c;
  spec.s = s;
  spec.dead_zone = lp_low_dead_zone(lambda, c, s);
  return spec;
}

ActivationSpec ActivationSpec::approx_lp_high(double lambda, double c, double s) {
  require(std::isfinite(c) && c > 0.0 && std::isfinite(s) && s > 0.0,
          "approx_lp_high: c and s must be positive");
  auto spec = make(Family::ApproxLpHigh, lambda);
  spec.c = c;
  spec.s = s;
  return spec;
}

ActivationSpec ActivationSpec::scad(double lambda, double kappa) {
  require(std::isfinite(kappa) && kappa >= 2.0, "scad: kappa must be >= 2");
  auto spec = make(Family::Scad, lambda);
  spec.kappa = kappa;
  spec.dead_zone = lambda;
  return spec;
}

ActivationSpec ActivationSpec::transformed_l1(double lambda, double beta) {
  require(std::isfinite(beta) && beta > 0.0, "transformed_l1: beta must be positive");
  auto spec = make(Family::TransformedL1, lambda);
  spec.beta = beta;
  spec.dead_zone = tl1_dead_zone(lambda, beta);
  return spec;
}

ActivationSpec ActivationSpec::huber(double lambda, double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "huber: epsilon must be positive");
  auto spec = make(Family::Huber, lambda);
  spec.epsilon = epsilon;
  return spec;
}

ActivationSpec ActivationSpec::asib(double lambda) {
  auto spec = make(Family::Asib, lambda);
  spec.dead_zone = lambda;
  return spec;
}

ActivationSpec ActivationSpec::block_l1(double lambda) {
  auto spec = make(Family::BlockL1, lambda);
  spec.dead_zone = lambda;
  return spec;
}

ActivationSpec ActivationSpec::log_barrier(double lambda, double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "log_barrier: gamma must be positive");
  auto spec = make(Family::LogBarrier, lambda);
  spec.gamma = gamma;
  return spec;
}

ActivationSpec ActivationSpec::weighted_l1(std::vector<double> weights) {
  require(!weights.empty(), "weighted_l1: weights must be non-empty");
  for (double w : weights)
    require(std::isfinite(w) && w > 0.0, "weighted_l1: weights must be positive");
  auto spec = make(Family::WeightedL1, 1.0);
  spec.weights = std::move(weights);
  return spec;
}

ActivationSpec ActivationSpec::weighted_l2(std::vector<double> weights) {
  require(!weights.empty(), "weighted_l2: weights must be non-empty");
  for (double w : weights)
    require(std::isfinite(w) && w > 0.0, "weighted_l2: weights must be positive");
  auto spec = make(Family::WeightedL2, 1.0);
  spec.weights = std::move(weights);
  return spec;
}

ActivationSpec ActivationSpec::with_lambda(double new_lambda) const {
  switch (family) {
    case Family::L1: return l1(new_lambda);
    case Family::L0: return l0(new_lambda);
    case Family::ApproxLpLow: return approx_lp_low(new_lambda, c, s);
    case Family::ApproxLpHigh: return approx_lp_high(new_lambda, c, s);
    case Family::Scad: return scad(new_lambda, kappa);
    case Family::TransformedL1: return transformed_l1(new_lambda, beta);
    case Family::Huber: return huber(new_lambda, epsilon);
    case Family::Asib: return asib(new_lambda);
    case Family::BlockL1: return block_l1(new_lambda);
    case Family::LogBarrier: return log_barrier(new_lambda, gamma);
    case Family::WeightedL1:
    case Family::WeightedL2: {
      ActivationSpec spec = *this;
      require(std::isfinite(new_lambda) && new_lambda > 0.0,
              "ActivationSpec: lambda must be positive");
      spec.lambda = new_lambda;
      return spec;
    }
  }
  throw std::logic_error("with_lambda: unhandled family");
}

double scalar_cost(const ActivationSpec& spec, double a) {
  const double lam = spec.lambda;
  const double t = std::abs(a);
  switch (spec.family) {
    case Family::L1:
    case Family::WeightedL1:
      return t;
    case Family::WeightedL2:
      return a * a;
    case Family::L0:
      return t == 0.0 ? 0.0 : 1.0;
    case Family::ApproxLpLow:
      return spec.c * spec.s * std::log1p(t / spec.s);
    case Family::ApproxLpHigh:
      return spec.c * t - spec.c * spec.s * std::log1p(t / spec.s);
    case Family::Scad: {
      const double k = spec.kappa;
      if (t <= lam) return t;
      if (t <= k * lam) return (t * k * lam - 0.5 * t * t - 0.5 * lam * lam) / ((k - 1.0) * lam);
      return 0.5 * lam * (1.0 + k);
    }
    case Family::TransformedL1:
      return spec.beta * t / (1.0 + spec.beta * t);
    case Family::Huber:
      return t <= spec.epsilon ? t * t / (2.0 * spec.epsilon) : t - 0.5 * spec.epsilon;
    case Family::Asib: {
      // Normalized so C(0) = 0; the constant shift leaves the activation pairing intact.
      const double r = std::sqrt(t * t + 4.0 * lam * lam);
      return -t * t / (4.0 * lam) + t * r / (4.0 * lam) + lam * std::log(t + r) -
             lam * std::log(2.0 * lam);
    }
    case Family::LogBarrier:
      if (a <= 0.0) throw std::domain_error("log_barrier cost undefined for a <= 0");
      return a - std::log(a) / (spec.gamma * lam);
    case Family::BlockL1:
      throw std::invalid_argument("scalar_cost: block_l1 is not separable");
  }
  throw std::logic_error("scalar_cost: unhandled family");
}

double cost_value(const ActivationSpec& spec, std::span<const double> a, const Groups* groups) {
  require_finite(a, "cost_value: coefficients must be finite");
  switch (spec.family) {
    case Family::BlockL1: {
      require(groups != nullptr, "cost_value: block_l1 requires a group partition");
      double total = 0.0;
      for (const auto& g : *groups) {
        double sq = 0.0;
        for (std::size_t idx : g) {
          require(idx < a.size(), "cost_value: group index out of range");
          sq += a[idx] * a[idx];
        }
        total += std::sqrt(sq);
      }
      return total;
    }
    case Family::WeightedL1:
    case Family::WeightedL2: {
      require(spec.weights.size() == a.size(), "cost_value: weight/coefficient size mismatch");
      double total = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double unit = spec.family == Family::WeightedL1 ? std::abs(a[i]) : a[i] * a[i];
        total += (spec.weights[i] / spec.lambda) * unit;
      }
      return total;
    }
    default: {
      double total = 0.0;
      for (double v : a) total += scalar_cost(spec, v);
      return total;
    }
  }
}

double penalty_value(const ActivationSpec& spec, std::span<const double> a, const Groups* groups) {
  return spec.lambda * cost_value(spec, a, groups);
}

double log_barrier_activation(double u, double lambda, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("log_barrier_activation: gamma must be positive");
  const double x = lambda - u;
  const double root = std::sqrt(x * x + 4.0 / gamma);
  // Stable evaluation of (root - x)/2 on both sides of the kink.
  if (x > 0.0) return (2.0 / gamma) / (root + x);
  return 0.5 * (root - x);
}

double activation_scalar(const ActivationSpec& spec, double u) {
  const double lam = spec.lambda;
  const double x = std::abs(u);
  switch (spec.family) {
    case Family::L1:
    case Family::WeightedL1:
      return x <= lam ? 0.0 : sgn(u) * (x - lam);
    case Family::L0:
      return x <= lam ? 0.0 : u;
    case Family::WeightedL2:
      return u / (1.0 + 2.0 * lam);
    case Family::Scad: {
      const double k = spec.kappa;
      if (x <= lam) return 0.0;
      if (x <= 2.0 * lam) return sgn(u) * (x - lam);
      if (x <= k * lam) return sgn(u) * ((k - 1.0) * x - k * lam) / (k - 2.0);
      return u;
    }
    case Family::Huber:
      return x <= spec.epsilon + lam ? spec.epsilon * u / (spec.epsilon + lam)
                                     : sgn(u) * (x - lam);
    case Family::Asib:
      return x <= lam ? 0.0 : sgn(u) * ((x * x - lam * lam) / x);
    case Family::LogBarrier:
      return log_barrier_activation(u, lam, spec.gamma);
    case Family::ApproxLpHigh: {
      if (x == 0.0) return 0.0;
      const double t = x - spec.s - lam * spec.c;
      const double root = std::sqrt(t * t + 4.0 * x * spec.s);
      const double a = t > 0.0 ? 0.5 * (t + root) : 2.0 * x * spec.s / (root - t);
      return sgn(u) * a;
    }
    case Family::ApproxLpLow: {
      if (x <= spec.dead_zone) return 0.0;
      const double a = lp_low_root(x, lam, spec.c, spec.s);
      return a <= 0.0 ? 0.0 : sgn(u) * a;
    }
    case Family::TransformedL1: {
      if (x <= spec.dead_zone) return 0.0;
      return sgn(u) * tl1_root(x, lam, spec.beta);
    }
    case Family::BlockL1:
      throw std::invalid_argument("activation_scalar: block_l1 is not separable");
  }
  throw std::logic_error("activation_scalar: unhandled family");
}

void activation_inplace(const ActivationSpec& spec, std::span<const double> u,
                        std::span<double> a, const Groups* groups) {
  assert(u.size() == a.size());
  switch (spec.family) {
    case Family::BlockL1: {
      require(groups != nullptr, "activation: block_l1 requires a group partition");
      for (const auto& g : *groups) {
        double sq = 0.0;
        for (std::size_t idx : g) {
          require(idx < u.size(), "activation: group index out of range");
          sq += u[idx] * u[idx];
        }
        const double nrm = std::sqrt(sq);
        if (nrm <= spec.lambda) {
          for (std::size_t idx : g) a[idx] = 0.0;
        } else {
          const double scale = 1.0 - spec.lambda / nrm;
          for (std::size_t idx : g) a[idx] = u[idx] * scale;
        }
      }
      return;
    }
    case Family::WeightedL1: {
      require(spec.weights.size() == u.size(), "activation: weight/state size mismatch");
      soft_threshold_weighted(u, spec.weights, a);
      return;
    }
    case Family::WeightedL2: {
      require(spec.weights.size() == u.size(), "activation: weight/state size mismatch");
      for (std::size_t i = 0; i < u.size(); ++i) a[i] = u[i] / (1.0 + 2.0 * spec.weights[i]);
      return;
    }
    default:
      for (std::size_t i = 0; i < u.size(); ++i) a[i] = activation_scalar(spec, u[i]);
      return;
  }
}

std::vector<double> activation(const ActivationSpec& spec, std::span<const double> u,
                               const Groups* groups) {
  require_finite(u, "activation: states must be finite");
  std::vector<double> a(u.size(), 0.0);
  activation_inplace(spec, u, a, groups);
  return a;
}

void soft_threshold_weighted(std::span<const double> u, std::span<const double> thresholds,
                             std::span<double> a) {
  assert(u.size() == thresholds.size() && u.size() == a.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = std::abs(u[i]);
    a[i] = x <= thresholds[i] ? 0.0 : sgn(u[i]) * (x - thresholds[i]);
  }
}

std::vector<double> activation_block(std::span<const double> u_g, double lambda) {
  require(!u_g.empty(), "activation_block: group must be non-empty");
  std::vector<double> out(u_g.size(), 0.0);
  double sq = 0.0;
  for (double v : u_g) sq += v * v;
  const double nrm = std::sqrt(sq);
  if (nrm <= lambda) return out;
  const double scale = 1.0 - lambda / nrm;
  for (std::size_t i = 0; i < u_g.size(); ++i) out[i] = u_g[i] * scale;
  return out;
}

double prox_oracle(const ActivationSpec& spec, double u, double resolution) {
  require(resolution > 0.0 && resolution <= 1e-3, "prox_oracle: resolution must be in (0, 1e-3]");
  require(is_separable(spec.family), "prox_oracle: pointwise families only");
  // The grid {-2|u|, ..., 2|u|} is scanned outward from exact zero as
  // +-k*resolution, so a = 0 is always a candidate (costs with a jump at the
  // origin need that) and, with the strict comparison below, ties resolve
  // toward smaller |a|.
  const long long steps = std::llround(2.0 * std::abs(u) / resolution);
  double best_val = 0.0, best_a = 0.0;
  bool have = false;
  auto consider = [&](double a) {
    if (spec.family == Family::LogBarrier && a <= 0.0) return;
    const double v = 0.5 * (u - a) * (u - a) + spec.lambda * scalar_cost(spec, a);
    if (!have || v < best_val) {
      best_val = v;
      best_a = a;
      have = true;
    }
  };
  for (long long k = 0; k <= steps; ++k) {
    const double a = static_cast<double>(k) * resolution;
    consider(a);
    if (k > 0) consider(-a);
  }
  return have ? best_a : 0.0;
}

std::vector<double> weight_update_l1(std::span<const double> a, double gamma, double nu) {
  require(gamma > 0.0 && nu > 0.0, "weight_update_l1: gamma and nu must be positive");
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = nu / (std::abs(a[i]) + gamma);
  return w;
}

std::vector<double> weight_update_l2(std::span<const double> a, double gamma, double p,
                                     double nu) {
  require(gamma >= 0.0 && nu > 0.0, "weight_update_l2: gamma must be >= 0 and nu positive");
  const double expo = 1.0 - 0.5 * p;
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    w[i] = expo == 0.0 ? nu : nu * std::pow(a[i] * a[i] + gamma, expo);
  return w;
}

namespace {

constexpr std::size_t kFitGrid = 2001;
constexpr double kFitSpan = 2.0;
constexpr double kEndpointSmallS = 1e-6;
constexpr double kEndpointLargeS = 1e6;

double lp_objective(double p, double c, double s, bool low_range) {
  const double da = kFitSpan / static_cast<double>(kFitGrid - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < kFitGrid; ++i) {
    const double a = da * static_cast<double>(i);
    const double target = p == 0.0 ? (a == 0.0 ? 0.0 : 1.0) : std::pow(a, p);
    const double fit = low_range ? c * s * std::log1p(a / s)
                                 : c * a - c * s * std::log1p(a / s);
    const double e = fit - target;
    acc += e * e;
  }
  return acc * da;
}

// Both cost families are linear in a multiplier once s is fixed
// (k = c*s against log1p(a/s) in the low range, k = c against
// a - s*log1p(a/s) in the high range), so the optimal multiplier has a
// closed form and the fit reduces to one dimension in log s.
struct ProfiledFit {
  double c = 0.0;
  double residual = 0.0;
};

ProfiledFit profile_c(double p, double log_s, bool low_range) {
  const double s = std::exp(log_s);
  const double da = kFitSpan / static_cast<double>(kFitGrid - 1);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < kFitGrid; ++i) {
    const double a = da * static_cast<double>(i);
    const double target = std::pow(a, p);
    const double basis = low_range ? std::log1p(a / s) : a - s * std::log1p(a / s);
    num += basis * target;
    den += basis * basis;
  }
  const double k = den > 0.0 ? num / den : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < kFitGrid; ++i) {
    const double a = da * static_cast<double>(i);
    const double target = std::pow(a, p);
    const double basis = low_range ? std::log1p(a / s) : a - s * std::log1p(a / s);
    const double e = k * basis - target;
    acc += e * e;
  }
  return ProfiledFit{low_range ? k / s : k, acc * da};
}

}  // namespace

LpFit fit_lp_params(double p) {
  require(std::isfinite(p) && p >= 0.0 && p <= 2.0, "fit_lp_params: p must be in [0, 2]");
  if (p == 1.0) {
    const double c = 1.0, s = kEndpointSmallS;
    return LpFit{p, c, s, lp_objective(p, c, s, false)};
  }
  if (p == 2.0) {
    const double s = kEndpointLargeS, c = 2.0 * s;
    return LpFit{p, c, s, lp_objective(p, c, s, false)};
  }
  if (p == 0.0) {
    const double s = kEndpointSmallS;
    const double c = 1.0 / (s * std::log(1.0 / s));
    return LpFit{p, c, s, lp_objective(p, c, s, true)};
  }
  const bool low = p < 1.0;
  // The multiplier is profiled out in closed form (see profile_c), leaving a
  // one-dimensional smooth objective in log s: coarse scan for the basin,
  // then 3-point parabolic refinement with shrinking probe spacing.
  double xs = 0.0;
  double fbest = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 112; ++k) {
    const double q = -14.0 + 0.25 * k;
    const double f = profile_c(p, q, low).residual;
    if (f < fbest) {
      fbest = f;
      xs = q;
    }
  }
  double h = 0.25;
  double f0 = fbest;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    for (int slide = 0; slide < 100; ++slide) {
      const double fm = profile_c(p, xs - h, low).residual;
      const double fp = profile_c(p, xs + h, low).residual;
      if (fm < f0 && fm <= fp) {
        xs -= h;
        f0 = fm;
        continue;
      }
      if (fp < f0) {
        xs += h;
        f0 = fp;
        continue;
      }
      const double denom = fm - 2.0 * f0 + fp;
      if (denom > 0.0) {
        const double dx = std::clamp(0.5 * h * (fm - fp) / denom, -h, h);
        const double fq = profile_c(p, xs + dx, low).residual;
        if (fq < f0) {
          xs += dx;
          f0 = fq;
        }
      }
      h *= 0.5;
      break;
    }
    if (h < 1e-10) {
      converged = true;
      break;
    }
  }
  const auto best = profile_c(p, xs, low);
  LpFit fit{p, best.c, std::exp(xs), best.residual};
  if (!converged) throw FitError("fit_lp_params: refinement budget exhausted", fit);
  if (!(fit.c > 0.0) || !std::isfinite(fit.c))
    throw FitError("fit_lp_params: degenerate fit", fit);
  return fit;
}

ActivationSpec spec_from_lp_fit(const LpFit& fit, double lambda) {
  return fit.p < 1.0 ? ActivationSpec::approx_lp_low(lambda, fit.c, fit.s)
                     : ActivationSpec::approx_lp_high(lambda, fit.c, fit.s);
}

nlohmann::json spec_to_json(const ActivationSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  switch (spec.family) {
    case Family::ApproxLpLow:
    case Family::ApproxLpHigh:
      params["c"] = spec.c;
      params["s"] = spec.s;
      break;
    case Family::Scad:
      params["kappa"] = spec.kappa;
      break;
    case Family::TransformedL1:
      params["beta"] = spec.beta;
      break;
    case Family::Huber:
      params["epsilon"] = spec.epsilon;
      break;
    case Family::LogBarrier:
      params["gamma"] = spec.gamma;
      break;
    case Family::WeightedL1:
    case Family::WeightedL2:
      params["weights"] = spec.weights;
      break;
    default:
      break;
  }
  return nlohmann::json{{"family", family_name(spec.family)},
                        {"lambda", spec.lambda},
                        {"params", params}};
}

ActivationSpec spec_from_json(const nlohmann::json& j) {
  const Family f = family_from_name(j.at("family").get<std::string>());
  const double lambda = j.value("lambda", 1.0);
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  switch (f) {
    case Family::L1: return ActivationSpec::l1(lambda);
    case Family::L0: return ActivationSpec::l0(lambda);
    case Family::ApproxLpLow:
      return ActivationSpec::approx_lp_low(lambda, params.at("c").get<double>(),
                                           params.at("s").get<double>());
    case Family::ApproxLpHigh:
      return ActivationSpec::approx_lp_high(lambda, params.at("c").get<double>(),
                                            params.at("s").get<double>());
    case Family::Scad: return ActivationSpec::scad(lambda, params.at("kappa").get<double>());
    case Family::TransformedL1:
      return ActivationSpec::transformed_l1(lambda, params.at("beta").get<double>());
    case Family::Huber: return ActivationSpec::huber(lambda, params.at("epsilon").get<double>());
    case Family::Asib: return ActivationSpec::asib(lambda);
    case Family::BlockL1: return ActivationSpec::block_l1(lambda);
    case Family::LogBarrier:
      return ActivationSpec::log_barrier(lambda, params.at("gamma").get<double>());
    case Family::WeightedL1:
      return ActivationSpec::weighted_l1(params.at("weights").get<std::vector<double>>())
          .with_lambda(lambda);
    case Family::WeightedL2:
      return ActivationSpec::weighted_l2(params.at("weights").get<std::vector<double>>())
          .with_lambda(lambda);
  }
  throw std::logic_error("spec_from_json: unhandled family");
}

}  // namespace lca::costs
