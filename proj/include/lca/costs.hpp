#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lca::costs {

// Catalog of sparsity costs C(.) and their activation (thresholding)
// functions T_lambda(.).  The two are tied by the stationarity relation
// lambda * C'(a) = u - a on the smooth regions of C, and every pointwise
// activation here equals the proximal map of lambda * C (grid-searched by
// prox_oracle in tests).  The one documented exception is L0: we ship the
// classic hard threshold with keep/kill boundary at lambda, while the
// proximal boundary of the counting cost under this energy sits at
// sqrt(2*lambda); see the README notes on the nonconvex catalog.
//
// Everything here is a pure function over immutable specs and safe for
// concurrent use without coordination.

enum class Family {
  L1,
  L0,
  ApproxLpLow,    // c*s*log(1+|a|/s), approximates |a|^p for p in [0,1)
  ApproxLpHigh,   // c*|a| - c*s*log(1+|a|/s), approximates |a|^p for p in (1,2]
  Scad,
  TransformedL1,  // beta*|a| / (1+beta*|a|)
  Huber,
  Asib,           // amplitude-scale-invariant Bayes shrinkage
  BlockL1,        // non-overlapping group l2 norms (non-separable)
  LogBarrier,     // a - log(a)/(gamma*lambda), one-sided relaxation of L1
  WeightedL1,
  WeightedL2,
};

using Groups = std::vector<std::vector<std::size_t>>;

const char* family_name(Family f);
Family family_from_name(std::string_view name);
bool is_separable(Family f);    // everything except BlockL1
bool is_convex(Family f);
// Families whose solved program is (weighted) l1, i.e. where the duality-gap
// certificate applies.
bool gap_certified(Family f);

struct ActivationSpec {
  Family family = Family::L1;
  double lambda = 1.0;            // global threshold (unit weight scale for weighted families)
  double c = 0.0, s = 0.0;        // approximate lp
  double kappa = 0.0;             // SCAD transition width, >= 2
  double beta = 0.0;              // transformed l1
  double epsilon = 0.0;           // Huber knee
  double gamma = 0.0;             // log-barrier relaxation strength
  std::vector<double> weights;    // per-node thresholds (weighted families)
  // Cached keep/kill boundary of the activation in |u|.  For the nonconvex
  // families with a jump (TransformedL1 and ApproxLpLow with lambda*c > s)
  // this is the prox energy-crossing point found by bisection at
  // construction; for the continuous families it is the closed-form bound.
  double dead_zone = 0.0;

  static ActivationSpec l1(double lambda);
  static ActivationSpec l0(double lambda);
  static ActivationSpec approx_lp_low(double lambda, double c, double s);
  static ActivationSpec approx_lp_high(double lambda, double c, double s);
  static ActivationSpec scad(double lambda, double kappa);
  static ActivationSpec transformed_l1(double lambda, double beta);
  static ActivationSpec huber(double lambda, double epsilon);
  static ActivationSpec asib(double lambda);
  static ActivationSpec block_l1(double lambda);
  static ActivationSpec log_barrier(double lambda, double gamma);
  static ActivationSpec weighted_l1(std::vector<double> weights);
  static ActivationSpec weighted_l2(std::vector<double> weights);

  // Same family and parameters at a different threshold (dead zone re-derived).
  ActivationSpec with_lambda(double new_lambda) const;
};

// Per-coordinate cost C(a) for the separable families.  Families whose cost
// formula involves the threshold (SCAD, ASIB, LogBarrier, ...) read it from
// the spec.  For the weighted families the scalar API treats the spec as a
// single node of weight spec.lambda.
double scalar_cost(const ActivationSpec& spec, double a);

// C(a) over a coefficient vector.  BlockL1 requires the group partition.
double cost_value(const ActivationSpec& spec, std::span<const double> a,
                  const Groups* groups = nullptr);

// lambda * C(a); the penalty term of the energy.  For weighted families this
// is sum_i w_i * c(a_i).
double penalty_value(const ActivationSpec& spec, std::span<const double> a,
                     const Groups* groups = nullptr);

// Pointwise activation at threshold spec.lambda (weighted scalar semantics as
// in scalar_cost).
double activation_scalar(const ActivationSpec& spec, double u);

std::vector<double> activation(const ActivationSpec& spec, std::span<const double> u,
                               const Groups* groups = nullptr);
void activation_inplace(const ActivationSpec& spec, std::span<const double> u,
                        std::span<double> a, const Groups* groups = nullptr);
// Per-node soft threshold with node-specific thresholds (re-weighted dynamics).
void soft_threshold_weighted(std::span<const double> u, std::span<const double> thresholds,
                             std::span<double> a);

// Block-wise shrinkage: 0 if ||u_g|| <= lambda, else u_g * (1 - lambda/||u_g||).
std::vector<double> activation_block(std::span<const double> u_g, double lambda);

double log_barrier_activation(double u, double lambda, double gamma);

// Brute-force proximal ground truth: argmin over the symmetric grid
// {-2|u|, ..., 2|u|} (step = resolution, scanned outward from exact zero) of
// 0.5*(u-a)^2 + lambda*C(a), ties broken toward smaller |a|.
// Test/acceptance utility only; never called by the solvers.
double prox_oracle(const ActivationSpec& spec, double u, double resolution);

// lambda_i = nu / (|a_i| + gamma)
std::vector<double> weight_update_l1(std::span<const double> a, double gamma, double nu);
// lambda_i = nu * (a_i^2 + gamma)^(1 - p/2)
std::vector<double> weight_update_l2(std::span<const double> a, double gamma, double p,
                                     double nu);

struct LpFit {
  double p = 0.0;
  double c = 0.0;
  double s = 0.0;
  double fit_residual = 0.0;  // discretized integral of the squared fit error over [0,2]
};

// Thrown when the parameter fit exhausts its refinement budget; carries the
// best iterate reached.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& msg, LpFit best_iterate)
      : std::runtime_error(msg), best(best_iterate) {}
  LpFit best;
};

// Least-squares fit of the approximate-lp parameters (c, s) against |a|^p on
// a 2001-point grid over [0,2].  p in {0,1,2} returns the analytic limiting
// parameterization; other p run a coordinate descent over (log c, log s).
LpFit fit_lp_params(double p);

// Spec for the fitted family (low regime for p < 1, high regime otherwise).
ActivationSpec spec_from_lp_fit(const LpFit& fit, double lambda);

nlohmann::json spec_to_json(const ActivationSpec& spec);
ActivationSpec spec_from_json(const nlohmann::json& j);

}  // namespace lca::costs
