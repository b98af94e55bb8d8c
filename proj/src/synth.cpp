#include "lca/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lca/dynamics.hpp"
#include "lca/kernels.hpp"

namespace lca::synth {

namespace {

// Fixed sub-stream ids for the independent draws of one instance.
enum StreamPurpose : std::uint64_t { kPhi = 1, kSupport = 2, kCoeffs = 3, kNoise = 4 };

std::size_t round_half_up(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

}  // namespace

std::size_t ProblemParams::m() const { return round_half_up(delta * static_cast<double>(n)); }

std::size_t ProblemParams::s() const { return round_half_up(rho * static_cast<double>(m())); }

void ProblemParams::validate() const {
  if (n < 1) throw std::invalid_argument("ProblemParams: n must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("ProblemParams: delta in (0,1]");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("ProblemParams: rho in (0,1]");
  if (!(noise_var >= 0.0 && std::isfinite(noise_var)))
    throw std::invalid_argument("ProblemParams: noise_var must be >= 0");
  const std::size_t mm = m(), ss = s();
  if (mm < 1) throw std::invalid_argument("ProblemParams: M rounds to zero");
  if (ss < 1) throw std::invalid_argument("ProblemParams: S rounds to zero");
  if (mm > n || ss > mm) throw std::invalid_argument("ProblemParams: need S <= M <= N");
}

model::MeasurementProblem generate(const ProblemParams& params, std::vector<double>* truth_out) {
  params.validate();
  const std::size_t n = params.n, m = params.m(), s = params.s();

  model::DenseMatrix phi(m, n);
  {
    Rng rng(params.seed, kPhi);
    for (double& v : phi.data) v = rng.normal();
  }

  // Support: partial Fisher-Yates over 0..n-1, first s entries.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  {
    Rng rng(params.seed, kSupport);
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = i + rng.uniform_below(n - i);
      std::swap(perm[i], perm[j]);
    }
  }

  std::vector<double> truth(n, 0.0);
  {
    Rng rng(params.seed, kCoeffs);
    for (std::size_t i = 0; i < s; ++i) truth[perm[i]] = rng.normal();
  }

  // Normalize columns first, then form the measurements.
  for (std::size_t j = 0; j < n; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) sq += phi(i, j) * phi(i, j);
    const double nrm = std::sqrt(sq);
    for (std::size_t i = 0; i < m; ++i) phi(i, j) /= nrm;
  }

  std::vector<double> y(m);
  kernels::matvec(phi.data, m, n, truth, y);
  if (params.noise_var > 0.0) {
    Rng rng(params.seed, kNoise);
    const double sigma = std::sqrt(params.noise_var);
    for (double& v : y) v += sigma * rng.normal();
  }

  auto problem = model::MeasurementProblem::create(std::move(phi), std::move(y), 1.0,
                                                   std::nullopt, truth);
  problem.lambda = dynamics::lambda_rule(problem);
  if (truth_out) *truth_out = std::move(truth);
  return problem;
}

}  // namespace lca::synth
