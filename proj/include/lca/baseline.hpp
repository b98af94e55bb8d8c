#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "lca/dynamics.hpp"
#include "lca/model.hpp"

namespace lca::baseline {

// Digital reference solvers for (weighted) basis-pursuit denoising, the
// duality-gap certificate both solver families stop on, and the iterative
// re-weighting outer loop.  Same concurrency contract as the network
// solver: one solve per thread, distinct solves freely in parallel.

struct BaselineOptions {
  std::size_t max_iters = 20000;
  double gap_tol = 1e-4;
  // Gradient step; defaults to 1/L with L = ||phi||_2^2 from power iteration
  // (200 iterations, tol 1e-10, all-ones start), so step * L <= 1.
  std::optional<double> step;
  bool acceleration = true;  // FISTA momentum; disabled gives monotone ISTA

  void validate() const;
};

struct GapResult {
  double gap = 0.0;      // primal minus dual objective, >= 0
  double rel_gap = 0.0;  // gap / max(1, |primal|)
};

// Duality gap of 0.5||y - phi a||^2 + sum_i lambda_i |a_i| at `a`.  The dual
// point is nu = s * (y - phi a) with the conservative scalar scale
// s = min(1, min_i lambda_i / |(phi^T r)_i|), which keeps nu feasible also
// for weighted problems.  weights empty means uniform lambda, taken from
// lambda_override or else the problem.
GapResult duality_gap(const model::MeasurementProblem& problem, std::span<const double> weights,
                      std::span<const double> a,
                      std::optional<double> lambda_override = std::nullopt);

// Proximal-gradient solve of weighted BPDN; weights empty means uniform
// problem.lambda.  The trace stores the iteration index in t_over_tau.
model::Solution solve_fista(const model::MeasurementProblem& problem,
                            std::span<const double> weights, const BaselineOptions& opts);

enum class InnerSolver { Fista, Lca };

struct ReweightIterOptions {
  std::size_t outer_iters = 4;
  double gamma = 0.01;
  std::optional<double> nu;  // weight-rule scale; defaults to lambda_rule * gamma
  InnerSolver inner = InnerSolver::Fista;
  BaselineOptions fista;
  dynamics::SolverOptions lca;
};

// Alternates a weighted-BPDN inner solve with the weight update
// lambda_i = nu / (|a_i| + gamma); initial weights are all lambda_rule.
// The returned trace concatenates the inner traces on a re-based time axis
// and simulated_time accumulates across iterations.
model::Solution solve_reweighted_iterative(const model::MeasurementProblem& problem,
                                           const ReweightIterOptions& opts);

}  // namespace lca::baseline
