#pragma once

// Seeded synthetic compressed-sensing instances.  Generation is pure given
// the parameters, so trials parallelize with per-(seed, trial, cell) stream
// isolation.

#include <cstdint>

#include "lca/model.hpp"
#include "lca/rng.hpp"

namespace lca::synth {

// Synthetic compressed-sensing instance description.  M and S are derived by
// round-half-up: M = round(delta*N), S = round(rho*M); phase-grid cell
// boundaries depend on this rounding, so it is fixed and recorded here.
struct ProblemParams {
  std::size_t n = 0;
  double delta = 0.0;        // M/N in (0, 1]
  double rho = 0.0;          // S/M in (0, 1]
  double noise_var = 1e-4;   // sigma^2 of the additive measurement noise
  std::uint64_t seed = 0;

  std::size_t m() const;
  std::size_t s() const;
  void validate() const;  // throws std::invalid_argument
};

// Gaussian measurement ensemble: phi entries standard normal then columns
// normalized; support drawn uniformly without replacement; nonzero
// coefficients standard normal; y = phi a0 + noise; lambda set by the
// 0.01*||phi^T y||_inf rule.  The truth vector is embedded in the returned
// problem and also written to *truth_out when non-null.  Fully deterministic
// given params (normal sampling: Box-Muller over splitmix64 streams).
model::MeasurementProblem generate(const ProblemParams& params,
                                   std::vector<double>* truth_out = nullptr);

}  // namespace lca::synth
