#include "lca/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lca/kernels.hpp"

namespace lca::baseline {

namespace {

using model::MeasurementProblem;
using model::Solution;
using model::TraceRecord;

inline double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

double node_lambda(const MeasurementProblem& pb, std::span<const double> weights,
                   std::optional<double> lambda_override, std::size_t i) {
  if (!weights.empty()) return weights[i];
  return lambda_override.value_or(pb.lambda);
}

}  // namespace

void BaselineOptions::validate() const {
  if (max_iters < 1) throw std::invalid_argument("BaselineOptions: max_iters must be >= 1");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("BaselineOptions: gap_tol must be positive");
  if (step && !(*step > 0.0)) throw std::invalid_argument("BaselineOptions: step must be positive");
}

GapResult duality_gap(const MeasurementProblem& problem, std::span<const double> weights,
                      std::span<const double> a, std::optional<double> lambda_override) {
  const std::size_t m = problem.m(), n = problem.n();
  if (a.size() != n) throw std::invalid_argument("duality_gap: coefficient length mismatch");
  if (!weights.empty() && weights.size() != n)
    throw std::invalid_argument("duality_gap: weight length mismatch");

  std::vector<double> r(m);
  kernels::matvec(problem.phi.data, m, n, a, r);
  for (std::size_t i = 0; i < m; ++i) r[i] = problem.y[i] - r[i];
  std::vector<double> corr(n);
  kernels::matvec_t(problem.phi.data, m, n, r, corr);

  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = std::abs(corr[i]);
    if (ci > 0.0) scale = std::min(scale, node_lambda(problem, weights, lambda_override, i) / ci);
  }

  double primal = 0.5 * kernels::norm_sq(r);
  for (std::size_t i = 0; i < n; ++i)
    primal += node_lambda(problem, weights, lambda_override, i) * std::abs(a[i]);

  double dual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double nu_i = scale * r[i];
    dual += nu_i * problem.y[i] - 0.5 * nu_i * nu_i;
  }

  double gap = primal - dual;
  if (gap < -1e-12) throw std::logic_error("duality_gap: certificate below -1e-12");
  if (gap < 0.0) gap = 0.0;
  return GapResult{gap, gap / std::max(1.0, std::abs(primal))};
}

Solution solve_fista(const MeasurementProblem& problem, std::span<const double> weights,
                     const BaselineOptions& opts) {
  opts.validate();
  const std::size_t m = problem.m(), n = problem.n();
  if (!weights.empty() && weights.size() != n)
    throw std::invalid_argument("solve_fista: weight length mismatch");

  const auto t_start = std::chrono::steady_clock::now();
  const double lipschitz = kernels::spectral_norm_sq(problem.phi.data, m, n);
  const double step = opts.step.value_or(1.0 / lipschitz);

  std::vector<double> x(n, 0.0), x_prev(n, 0.0), z(n, 0.0);
  std::vector<double> grad(n), fwd(m), resid(m), corr(n);
  double tk = 1.0;

  const double tn = problem.truth ? kernels::norm(*problem.truth) : 0.0;
  double lambda_mean = 0.0;
  if (weights.empty()) {
    lambda_mean = problem.lambda;
  } else {
    for (double w : weights) lambda_mean += w;
    lambda_mean /= static_cast<double>(n);
  }

  Solution sol;
  auto record = [&](double iter) {
    // Primal objective and certificate at the current iterate.
    kernels::matvec(problem.phi.data, m, n, x, resid);
    for (std::size_t i = 0; i < m; ++i) resid[i] = problem.y[i] - resid[i];
    double primal = 0.5 * kernels::norm_sq(resid);
    for (std::size_t i = 0; i < n; ++i)
      primal += node_lambda(problem, weights, std::nullopt, i) * std::abs(x[i]);
    const auto g = duality_gap(problem, weights, x);
    TraceRecord r;
    r.t_over_tau = iter;
    r.energy = primal;
    r.gap = g.rel_gap;
    r.lambda_now = lambda_mean;
    if (tn > 0.0) r.rel_err = model::rel_dist(x, *problem.truth);
    sol.trace.push_back(r);
    return g.rel_gap;
  };

  std::size_t iters = 0;
  bool converged = record(0.0) <= opts.gap_tol;
  for (std::size_t k = 1; !converged && k <= opts.max_iters; ++k) {
    kernels::matvec(problem.phi.data, m, n, z, fwd);
    for (std::size_t i = 0; i < m; ++i) fwd[i] -= problem.y[i];
    kernels::matvec_t(problem.phi.data, m, n, fwd, grad);

    x_prev.swap(x);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = z[i] - step * grad[i];
      const double th = step * node_lambda(problem, weights, std::nullopt, i);
      x[i] = std::abs(v) <= th ? 0.0 : sgn(v) * (std::abs(v) - th);
    }
    if (opts.acceleration) {
      const double tk_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
      const double momentum = (tk - 1.0) / tk_next;
      for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + momentum * (x[i] - x_prev[i]);
      tk = tk_next;
    } else {
      z = x;
    }
    iters = k;
    converged = record(static_cast<double>(k)) <= opts.gap_tol;
  }

  sol.a = std::move(x);
  sol.converged = converged;
  sol.simulated_time = static_cast<double>(iters);  // iteration count for digital solvers
  sol.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sol;
}

Solution solve_reweighted_iterative(const MeasurementProblem& problem,
                                    const ReweightIterOptions& opts) {
  if (opts.outer_iters < 1)
    throw std::invalid_argument("solve_reweighted_iterative: outer_iters must be >= 1");
  if (!(opts.gamma > 0.0))
    throw std::invalid_argument("solve_reweighted_iterative: gamma must be positive");

  const auto t_start = std::chrono::steady_clock::now();
  const double lam0 = dynamics::lambda_rule(problem);
  const double nu = opts.nu.value_or(lam0 * opts.gamma);
  if (!(nu > 0.0)) throw std::invalid_argument("solve_reweighted_iterative: nu must be positive");

  std::vector<double> weights(problem.n(), lam0);
  Solution total;
  double t_offset = 0.0;
  for (std::size_t it = 0; it < opts.outer_iters; ++it) {
    Solution inner;
    if (opts.inner == InnerSolver::Fista) {
      inner = solve_fista(problem, weights, opts.fista);
    } else {
      // Continuation rescales a single scalar threshold and is not defined
      // for a per-node weight vector, so weighted inner solves run without it.
      auto lca_opts = opts.lca;
      lca_opts.continuation.enabled = false;
      inner = dynamics::solve_lca(problem, costs::ActivationSpec::weighted_l1(weights), lca_opts);
    }
    for (std::size_t k = 0; k < inner.trace.size(); ++k) {
      if (it > 0 && k == 0) continue;  // collides with the previous terminal sample
      TraceRecord r = inner.trace[k];
      r.t_over_tau += t_offset;
      total.trace.push_back(r);
    }
    t_offset += inner.simulated_time;
    total.a = std::move(inner.a);
    total.converged = inner.converged;
    weights = costs::weight_update_l1(total.a, opts.gamma, nu);
  }
  total.simulated_time = t_offset;
  total.wallclock =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return total;
}

}  // namespace lca::baseline
