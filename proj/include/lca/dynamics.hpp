#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lca/costs.hpp"
#include "lca/model.hpp"

namespace lca::dynamics {

// Forward-Euler simulation of the analog network
//   tau u'(t) = phi^T y - u(t) - (phi^T phi - I) a(t),   a(t) = T_lambda(u(t)),
// with continuation on lambda and a duality-gap (or stationarity) stop.
// All times are in units of the system time constant tau.
//
// A solve owns its state exclusively and runs single-threaded apart from
// the shared kernels; separate solves on distinct problems may run
// concurrently.

struct ContinuationOptions {
  bool enabled = true;
  double decay = 0.9;           // multiplicative decay factor, in (0,1)
  std::optional<double> floor;  // target lambda; defaults to the activation spec's lambda
  bool per_tau = false;         // apply the decay once per tau instead of per step
};

struct SolverOptions {
  double eta = 0.05;         // Euler step dt/tau; must be <= 0.5
  double max_time = 200.0;   // budget in tau units
  double gap_tol = 1e-4;     // relative duality gap threshold (gap-certified families)
  ContinuationOptions continuation;
  bool adaptive = true;      // halve eta when the energy increases at fixed lambda
  double record_every = 0.5; // tau units between trace samples
  // Precompute phi^T phi - I (O(N^2) memory) or recompute phi^T(phi a) - a
  // per step.  The two paths agree to 1e-10 per step.
  bool precompute_gram = true;
  // ||delta a||_inf per tau threshold for families without a gap certificate.
  double stationarity_tol = 1e-9;

  void validate() const;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& msg, double eta_at_failure)
      : std::runtime_error(msg), eta(eta_at_failure) {}
  double eta;
};

struct LcaState {
  std::vector<double> u;        // internal states
  std::vector<double> a;        // outputs, = T_lambda(u) after every step
  double lambda_now = 0.0;      // scalar threshold (plain mode)
  std::vector<double> weights;  // per-node thresholds (re-weighted mode only)
  double t_over_tau = 0.0;
  double tau_lambda_over_tau = 0.0;  // weight-dynamics time constant ratio (re-weighted mode)
};

// lambda = 0.01 * ||phi^T y||_inf; throws std::domain_error when y = 0.
double lambda_rule(const model::MeasurementProblem& problem);

// One Euler step at fixed threshold: u += eta*(phi^T y - u - (phi^T phi - I) a),
// then a = T(u) and t += eta.  Deterministic bit-for-bit.  Throws
// DivergenceError if the update produces non-finite states.
LcaState lca_step(const LcaState& state, const model::MeasurementProblem& problem,
                  const costs::ActivationSpec& spec, double eta);

// Integrate from rest (u = 0).  With continuation enabled, lambda starts at
// ||phi^T y||_inf and decays per step until it reaches the floor.  Stops on
// the relative duality gap for gap-certified families, on the per-tau
// stationarity of a otherwise, or at max_time with converged = false.
model::Solution solve_lca(const model::MeasurementProblem& problem,
                          const costs::ActivationSpec& spec, const SolverOptions& opts);

// Dynamically re-weighted variant: co-integrates the states with per-node
// thresholds driven by tau_lambda lambda_i' = 1/lambda_i - (|a_i|+gamma)/nu,
// tau_lambda = tau_ratio * tau.  The weight equation is stiff near its fixed
// point, so it is advanced by a closed-form implicit Euler update (same
// fixed points); the state equation stays forward Euler.  Weights are
// clamped to [1e-9 nu/gamma, nu/gamma].  initial_weights defaults to the
// rest fixed point nu/gamma; terminal_weights, when non-null, receives the
// per-node thresholds at termination.
model::Solution solve_lca_reweighted(const model::MeasurementProblem& problem,
                                     const SolverOptions& opts, double gamma, double nu,
                                     double tau_ratio,
                                     std::vector<double> initial_weights = {},
                                     std::vector<double>* terminal_weights = nullptr);

}  // namespace lca::dynamics
