#include "lca/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lca/baseline.hpp"
#include "lca/kernels.hpp"

namespace lca::dynamics {

namespace {

using model::MeasurementProblem;
using model::Solution;
using model::TraceRecord;

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// Shared per-solve machinery: the drive vector phi^T y and the lateral
// product (phi^T phi - I) a, either from the precomputed Gram matrix or by
// two mat-vecs per step.
struct Engine {
  const MeasurementProblem& pb;
  std::vector<double> b;
  std::vector<double> gram;
  bool use_gram;
  double half_y_sq;
  std::vector<double> scratch;

  Engine(const MeasurementProblem& problem, bool precompute)
      : pb(problem), use_gram(precompute), scratch(problem.m()) {
    b.resize(pb.n());
    kernels::matvec_t(pb.phi.data, pb.m(), pb.n(), pb.y, b);
    half_y_sq = 0.5 * kernels::norm_sq(pb.y);
    if (use_gram) gram = kernels::gram_minus_identity(pb.phi.data, pb.m(), pb.n());
  }

  void lateral(std::span<const double> a, std::span<double> out) {
    if (use_gram) {
      kernels::matvec(gram, pb.n(), pb.n(), a, out);
    } else {
      kernels::matvec(pb.phi.data, pb.m(), pb.n(), a, scratch);
      kernels::matvec_t(pb.phi.data, pb.m(), pb.n(), scratch, out);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= a[i];
    }
  }

  // 0.5||y - phi a||^2 expanded around the lateral product already in hand.
  double data_term(std::span<const double> a, std::span<const double> lat) const {
    return half_y_sq - kernels::dot(b, a) +
           0.5 * (kernels::dot(a, lat) + kernels::dot(a, a));
  }
};

double truth_norm(const MeasurementProblem& pb) {
  return pb.truth ? kernels::norm(*pb.truth) : 0.0;
}

}  // namespace

void SolverOptions::validate() const {
  if (!(eta > 0.0 && eta <= 0.5))
    throw std::invalid_argument("SolverOptions: eta must be in (0, 0.5]");
  if (!(max_time > 0.0)) throw std::invalid_argument("SolverOptions: max_time must be positive");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("SolverOptions: gap_tol must be positive");
  if (!(continuation.decay > 0.0 && continuation.decay < 1.0))
    throw std::invalid_argument("SolverOptions: continuation decay must be in (0, 1)");
  if (continuation.floor && !(*continuation.floor > 0.0))
    throw std::invalid_argument("SolverOptions: continuation floor must be positive");
  if (!(record_every > 0.0))
    throw std::invalid_argument("SolverOptions: record_every must be positive");
  if (!(stationarity_tol > 0.0))
    throw std::invalid_argument("SolverOptions: stationarity_tol must be positive");
}

double lambda_rule(const MeasurementProblem& problem) {
  std::vector<double> b(problem.n());
  kernels::matvec_t(problem.phi.data, problem.m(), problem.n(), problem.y, b);
  const double v = kernels::max_abs(b);
  if (v == 0.0) throw std::domain_error("lambda_rule: phi^T y is zero");
  return 0.01 * v;
}

LcaState lca_step(const LcaState& state, const MeasurementProblem& problem,
                  const costs::ActivationSpec& spec, double eta) {
  const std::size_t n = problem.n();
  if (state.u.size() != n || state.a.size() != n)
    throw std::invalid_argument("lca_step: state dimension mismatch");
  if (!(eta > 0.0)) throw std::invalid_argument("lca_step: eta must be positive");

  Engine eng(problem, /*precompute=*/false);
  std::vector<double> lat(n);
  eng.lateral(state.a, lat);

  LcaState next = state;
  for (std::size_t i = 0; i < n; ++i)
    next.u[i] = state.u[i] + eta * (eng.b[i] - state.u[i] - lat[i]);
  if (!all_finite(next.u))
    throw DivergenceError("lca_step: non-finite state after update", eta);

  if (!state.weights.empty()) {
    costs::soft_threshold_weighted(next.u, state.weights, next.a);
  } else {
    const auto spec_now =
        state.lambda_now == spec.lambda ? spec : spec.with_lambda(state.lambda_now);
    const costs::Groups* groups = problem.groups ? &*problem.groups : nullptr;
    costs::activation_inplace(spec_now, next.u, next.a, groups);
  }
  next.t_over_tau = state.t_over_tau + eta;
  return next;
}

Solution solve_lca(const MeasurementProblem& problem, const costs::ActivationSpec& spec,
                   const SolverOptions& opts) {
  opts.validate();
  if (spec.family == costs::Family::BlockL1 && !problem.groups)
    throw std::invalid_argument("solve_lca: block_l1 requires a problem with groups");
  if ((spec.family == costs::Family::WeightedL1 || spec.family == costs::Family::WeightedL2) &&
      spec.weights.size() != problem.n())
    throw std::invalid_argument("solve_lca: weighted spec must carry one weight per node");

  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n = problem.n();
  const costs::Groups* groups = problem.groups ? &*problem.groups : nullptr;
  Engine eng(problem, opts.precompute_gram);

  const bool weighted =
      spec.family == costs::Family::WeightedL1 || spec.family == costs::Family::WeightedL2;
  const double floor_lam = opts.continuation.floor.value_or(spec.lambda);
  // Continuation rescales a scalar threshold; weighted specs keep theirs.
  const bool continuation = opts.continuation.enabled && !weighted;
  double lam = continuation ? std::max(kernels::max_abs(eng.b), floor_lam) : spec.lambda;
  costs::ActivationSpec spec_now = lam == spec.lambda ? spec : spec.with_lambda(lam);

  std::vector<double> u(n, 0.0), a(n, 0.0), lat(n, 0.0);
  std::vector<double> u_next(n), a_next(n), lat_next(n);
  costs::activation_inplace(spec_now, u, a, groups);
  eng.lateral(a, lat);
  double energy_now = eng.data_term(a, lat) + costs::penalty_value(spec_now, a, groups);

  const bool certified = costs::gap_certified(spec.family);
  const double tn = truth_norm(problem);

  Solution sol;
  bool converged = false;
  double t = 0.0;
  double eta = opts.eta;
  int halvings = 0;

  // Trace sample; returns the relative gap when the family carries the
  // certificate, NaN otherwise.
  auto record = [&]() {
    TraceRecord r;
    r.t_over_tau = t;
    r.energy = energy_now;
    r.lambda_now = lam;
    if (tn > 0.0) r.rel_err = model::rel_dist(a, *problem.truth);
    if (certified) {
      const auto g = baseline::duality_gap(problem, spec_now.weights, a, lam);
      r.gap = g.rel_gap;
    }
    sol.trace.push_back(r);
    return r.gap;
  };

  const double at_floor_tol = 1e-12;
  auto lambda_at_floor = [&]() { return !continuation || lam <= floor_lam * (1.0 + at_floor_tol); };

  // Stationarity bookkeeping for families without a gap certificate.
  std::vector<double> a_snapshot;
  double next_stationarity_check = std::numeric_limits<double>::infinity();
  auto arm_stationarity = [&]() {
    if (certified || !a_snapshot.empty()) return;
    a_snapshot = a;
    next_stationarity_check = t + 1.0;
  };

  {
    const double g0 = record();
    if (lambda_at_floor()) {
      if (certified && g0 <= opts.gap_tol) converged = true;
      arm_stationarity();
    }
  }
  double next_record = opts.record_every;
  double next_decay = opts.continuation.per_tau ? 1.0 : 0.0;

  while (!converged && t < opts.max_time - 1e-12) {
    double lam_next = lam;
    if (continuation && lam > floor_lam) {
      if (!opts.continuation.per_tau) {
        lam_next = std::max(floor_lam, lam * opts.continuation.decay);
      } else if (t + eta >= next_decay - 1e-12) {
        lam_next = std::max(floor_lam, lam * opts.continuation.decay);
        next_decay += 1.0;
      }
    }

    // Candidate Euler step; on an energy increase at fixed lambda (or a
    // non-finite state) halve eta and retry, up to 10 halvings.
    const bool lam_changed = lam_next != lam;
    costs::ActivationSpec spec_next_storage;
    if (lam_changed) spec_next_storage = spec.with_lambda(lam_next);
    const costs::ActivationSpec& spec_next = lam_changed ? spec_next_storage : spec_now;
    while (true) {
      for (std::size_t i = 0; i < n; ++i)
        u_next[i] = u[i] + eta * (eng.b[i] - u[i] - lat[i]);
      if (!all_finite(u_next)) {
        if (opts.adaptive && halvings < 10) {
          eta *= 0.5;
          ++halvings;
          continue;
        }
        throw DivergenceError("solve_lca: non-finite state after update", eta);
      }
      costs::activation_inplace(spec_next, u_next, a_next, groups);
      eng.lateral(a_next, lat_next);
      const double energy_next =
          eng.data_term(a_next, lat_next) + costs::penalty_value(spec_next, a_next, groups);
      if (opts.adaptive && !lam_changed &&
          energy_next > energy_now + 1e-12 * std::max(1.0, std::abs(energy_now))) {
        if (halvings >= 10)
          throw DivergenceError("solve_lca: energy increase persists after 10 halvings", eta);
        eta *= 0.5;
        ++halvings;
        continue;
      }
      energy_now = energy_next;
      break;
    }
    if (lam_changed) spec_now = std::move(spec_next_storage);
    u.swap(u_next);
    a.swap(a_next);
    lat.swap(lat_next);
    lam = lam_next;
    t += eta;

    if (lambda_at_floor()) arm_stationarity();

    if (t + 1e-9 >= next_record) {
      const double g = record();
      next_record += opts.record_every;
      if (lambda_at_floor() && certified && g <= opts.gap_tol) converged = true;
    }
    if (!certified && t + 1e-9 >= next_stationarity_check) {
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(a[i] - a_snapshot[i]));
      if (lambda_at_floor() && diff <= opts.stationarity_tol) {
        converged = true;
      } else {
        a_snapshot = a;
        next_stationarity_check = t + 1.0;
      }
    }
  }

  if (sol.trace.empty() || sol.trace.back().t_over_tau < t - 1e-12) record();
  sol.a = std::move(a);
  sol.converged = converged;
  sol.simulated_time = t;
  sol.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sol;
}

Solution solve_lca_reweighted(const MeasurementProblem& problem, const SolverOptions& opts,
                              double gamma, double nu, double tau_ratio,
                              std::vector<double> initial_weights,
                              std::vector<double>* terminal_weights) {
  opts.validate();
  if (!(gamma > 0.0 && nu > 0.0 && tau_ratio > 0.0))
    throw std::invalid_argument("solve_lca_reweighted: gamma, nu, tau_ratio must be positive");

  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n = problem.n();
  Engine eng(problem, opts.precompute_gram);

  const double w_cap = nu / gamma;
  const double w_floor = 1e-9 * w_cap;
  std::vector<double> w;
  if (initial_weights.empty()) {
    w.assign(n, w_cap);
  } else {
    if (initial_weights.size() != n)
      throw std::invalid_argument("solve_lca_reweighted: initial weight length mismatch");
    w = std::move(initial_weights);
    for (double& wi : w) {
      if (!(std::isfinite(wi) && wi > 0.0))
        throw std::invalid_argument("solve_lca_reweighted: weights must be positive");
      wi = std::clamp(wi, w_floor, w_cap);
    }
  }

  std::vector<double> u(n, 0.0), a(n, 0.0), lat(n, 0.0);
  std::vector<double> u_next(n), a_next(n), lat_next(n);
  const double tn = truth_norm(problem);
  const double h = opts.eta / tau_ratio;  // implicit-Euler step of the weight equation

  // Continuation for the re-weighted system: a global threshold envelope
  // dominates the per-node weights while it lasts.  It decays from
  // ||phi^T y||_inf to the weight cap (the plain-l1 threshold), holds there
  // until that uniform subproblem certifies via its duality gap, then decays
  // on so the weight dynamics take over node by node.  The trajectory thus
  // passes through the plain-l1 solution before re-weighting sharpens it,
  // mirroring one-and-a-bit iterations of the discrete re-weighting scheme.
  enum class EnvelopePhase { Decay, Hold, Release, Off };
  auto env_phase = opts.continuation.enabled ? EnvelopePhase::Decay : EnvelopePhase::Off;
  double envelope = 0.0;
  if (env_phase == EnvelopePhase::Decay) {
    envelope = std::max(kernels::max_abs(eng.b), w_cap);
    if (envelope <= w_cap) env_phase = EnvelopePhase::Hold;
  }
  std::vector<double> w_eff(n);
  auto effective_thresholds = [&]() {
    for (std::size_t i = 0; i < n; ++i) w_eff[i] = std::max(w[i], envelope);
  };
  effective_thresholds();

  Solution sol;
  bool converged = false;
  double t = 0.0;
  double eta = opts.eta;
  int halvings = 0;

  auto weight_residual = [&]() {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      r = std::max(r, std::abs(w[i] - nu / (std::abs(a[i]) + gamma)));
    return r;
  };
  auto record = [&]() {
    TraceRecord r;
    r.t_over_tau = t;
    double pen = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pen += w_eff[i] * std::abs(a[i]);
      wsum += w[i];
    }
    r.energy = eng.data_term(a, lat) + pen;
    r.lambda_now = wsum / static_cast<double>(n);
    if (tn > 0.0) r.rel_err = model::rel_dist(a, *problem.truth);
    const auto g = baseline::duality_gap(problem, w_eff, a);
    r.gap = g.rel_gap;
    sol.trace.push_back(r);
    return r.gap;
  };

  {
    const double g0 = record();
    if (env_phase == EnvelopePhase::Off && g0 <= opts.gap_tol &&
        weight_residual() <= 1e-6 * w_cap)
      converged = true;
  }
  double next_record = opts.record_every;

  while (!converged && t < opts.max_time - 1e-12) {
    while (true) {
      for (std::size_t i = 0; i < n; ++i)
        u_next[i] = u[i] + eta * (eng.b[i] - u[i] - lat[i]);
      if (all_finite(u_next)) break;
      if (halvings >= 10)
        throw DivergenceError("solve_lca_reweighted: non-finite state after update", eta);
      eta *= 0.5;
      ++halvings;
    }
    // Closed-form implicit Euler on tau_lambda w' = 1/w - (|a|+gamma)/nu,
    // unconditionally stable and monotone toward the fixed point.
    for (std::size_t i = 0; i < n; ++i) {
      const double q = (std::abs(a[i]) + gamma) / nu;
      const double base = w[i] - h * q;
      w[i] = std::clamp(0.5 * (base + std::sqrt(base * base + 4.0 * h)), w_floor, w_cap);
    }
    if (env_phase == EnvelopePhase::Decay) {
      envelope = std::max(envelope * opts.continuation.decay, w_cap);
      if (envelope <= w_cap) env_phase = EnvelopePhase::Hold;
    } else if (env_phase == EnvelopePhase::Release) {
      envelope *= opts.continuation.decay;
      if (envelope <= w_floor) {
        envelope = 0.0;
        env_phase = EnvelopePhase::Off;
      }
    }
    effective_thresholds();
    costs::soft_threshold_weighted(u_next, w_eff, a_next);
    eng.lateral(a_next, lat_next);
    u.swap(u_next);
    a.swap(a_next);
    lat.swap(lat_next);
    t += eta;

    if (t + 1e-9 >= next_record) {
      const double g = record();
      next_record += opts.record_every;
      if (env_phase == EnvelopePhase::Hold && g <= opts.gap_tol)
        env_phase = EnvelopePhase::Release;
      else if (env_phase == EnvelopePhase::Off && g <= opts.gap_tol &&
               weight_residual() <= 1e-6 * w_cap)
        converged = true;
    }
  }

  if (sol.trace.empty() || sol.trace.back().t_over_tau < t - 1e-12) record();
  if (terminal_weights) *terminal_weights = w;
  sol.a = std::move(a);
  sol.converged = converged;
  sol.simulated_time = t;
  sol.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sol;
}

}  // namespace lca::dynamics
