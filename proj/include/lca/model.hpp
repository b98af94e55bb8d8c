#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lca/costs.hpp"

namespace lca::model {

using Groups = costs::Groups;

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  // rows >= 1, cols >= 1, data length rows*cols, all entries finite.
  void validate() const;
};

struct TraceRecord {
  double t_over_tau = 0.0;
  double energy = 0.0;
  double rel_err = std::numeric_limits<double>::quiet_NaN();  // l2 distance to truth / ||truth||
  double gap = std::numeric_limits<double>::quiet_NaN();      // relative duality gap
  double lambda_now = 0.0;
};

struct Solution {
  std::vector<double> a;
  std::vector<TraceRecord> trace;
  bool converged = false;
  double wallclock = 0.0;       // seconds, never part of deterministic outputs
  double simulated_time = 0.0;  // tau units for the analog solver, iterations for digital ones
};

// Observation model.  Columns of phi are normalized to unit l2 norm at
// construction; the scale factors divided out are retained for diagnostics.
// Values are immutable after construction and safe to share across threads.
struct MeasurementProblem {
  DenseMatrix phi;
  std::vector<double> y;
  double lambda = 0.0;
  std::optional<Groups> groups;
  std::optional<std::vector<double>> truth;
  std::vector<double> column_scales;

  static MeasurementProblem create(DenseMatrix phi, std::vector<double> y, double lambda,
                                   std::optional<Groups> groups = std::nullopt,
                                   std::optional<std::vector<double>> truth = std::nullopt);

  std::size_t m() const { return phi.rows; }
  std::size_t n() const { return phi.cols; }
};

// 0.5*||y - phi a||^2 + lambda * C(a), with C and lambda taken from the spec.
double energy(const MeasurementProblem& problem, const costs::ActivationSpec& spec,
              std::span<const double> a);

// ||est - truth||^2 / ||truth||^2
double rel_mse(std::span<const double> est, std::span<const double> truth);
// ||a_t - a_ref|| / ||a_ref||
double rel_dist(std::span<const double> a_t, std::span<const double> a_ref);

// phi^T phi - I; requires unit-norm columns (within 1e-12).
DenseMatrix gram_minus_identity(const DenseMatrix& phi);

// Problem file I/O.  JSON object {"m","n","phi","y","lambda","groups"?,"truth"?}
// with phi stored row-major; reals are written with 17 significant digits.
MeasurementProblem read_problem(const std::string& path);
void write_problem(const std::string& path, const MeasurementProblem& problem);

// Trace CSV: t_over_tau,energy,rel_err,gap,lambda_now; 17-digit reals, "nan"
// for absent fields.
std::string trace_csv(const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace);

// snprintf "%.17g" with non-finite values normalized to "nan"; the shared
// formatting for all deterministic text outputs.
std::string format_real(double v);

}  // namespace lca::model
