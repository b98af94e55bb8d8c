#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lca/baseline.hpp"
#include "lca/costs.hpp"
#include "lca/dynamics.hpp"
#include "lca/model.hpp"

namespace lca::harness {

// Experiment orchestration.  Cells and trials are independent work items
// executed by an OpenMP pool; every instance is seeded through
// derive_stream(seed, trial, cell) and results land in preallocated slots,
// so aggregates are reduced in trial order and outputs are byte-identical
// regardless of thread count or schedule.

enum class Kind { Phase, Converge, Reweight, Activations };

const char* kind_name(Kind k);
Kind kind_from_name(std::string_view name);

struct ExperimentConfig {
  Kind kind = Kind::Phase;
  std::size_t n = 200;
  std::size_t grid = 10;  // cells per axis
  std::array<double, 2> delta_range{0.1, 0.9};
  std::array<double, 2> rho_range{0.1, 0.9};
  std::size_t trials = 5;  // converge defaults to 10, reweight to 15
  std::vector<std::string> solvers{"lca", "fista"};
  std::uint64_t seed = 1;
  double noise_var = 1e-4;
  dynamics::SolverOptions lca_opts;
  baseline::BaselineOptions fista_opts;
  // Re-weighting knobs shared by the dynamic and iterative variants.
  double rw_gamma = 0.01;
  std::optional<double> rw_nu;  // default lambda_rule * gamma, per instance
  double rw_tau_ratio = 10.0;
  std::size_t rw_outer_iters = 4;
  std::string out;  // CSV output path; empty = stdout only
  std::string svg;  // SVG output path; empty = none
  int threads = 0;  // 0 = library default

  void validate() const;
};

// Strict parser: unknown keys are rejected so typos surface as bad config.
ExperimentConfig config_from_json(const nlohmann::json& j);

// ---- phase grids --------------------------------------------------------

struct CellStats {
  std::size_t trials = 0;    // aggregated (non-diverged) trials
  std::size_t failures = 0;  // solver divergences, recorded but not fatal
  double mean_rel_mse = std::numeric_limits<double>::quiet_NaN();
  double mean_energy = std::numeric_limits<double>::quiet_NaN();
  double mean_cross_dist = std::numeric_limits<double>::quiet_NaN();
  double mean_time = std::numeric_limits<double>::quiet_NaN();
};

struct ResultGrid {
  std::vector<double> deltas;
  std::vector<double> rhos;
  std::vector<std::string> solvers;
  std::vector<CellStats> cells;  // [delta][rho][solver]

  CellStats& at(std::size_t di, std::size_t ri, std::size_t si) {
    return cells[(di * rhos.size() + ri) * solvers.size() + si];
  }
  const CellStats& at(std::size_t di, std::size_t ri, std::size_t si) const {
    return cells[(di * rhos.size() + ri) * solvers.size() + si];
  }
};

ResultGrid run_phase(const ExperimentConfig& config);
// delta,rho,solver,trials,mean_rel_mse,mean_energy,mean_cross_dist,mean_time
std::string phase_csv(const ResultGrid& grid);
std::string phase_svg(const ResultGrid& grid);

// ---- convergence study --------------------------------------------------

struct ConvergeRun {
  std::string preset;  // easy / medium / hard
  std::size_t n = 0;
  std::size_t trial = 0;
  std::vector<double> t;         // trace times (tau)
  std::vector<double> rel_dist;  // matching relative distances to truth
  double terminal_rel_dist = 0.0;
  double time_to_2x_terminal = 0.0;  // earliest t with rel_dist <= 2x terminal
  double tau_to_convergence = 0.0;
  bool converged = false;
  double fista_sec_per_iter = 0.0;  // measured wall-clock; reported, never asserted
  std::size_t fista_iters = 0;
};

struct ConvergeResult {
  std::vector<std::string> presets;
  std::vector<std::size_t> sizes;
  std::size_t trials = 0;
  std::vector<ConvergeRun> runs;  // [preset][size][trial]
};

ConvergeResult run_converge(const ExperimentConfig& config);
std::string converge_summary_csv(const ConvergeResult& result);
std::string converge_traces_csv(const ConvergeResult& result);
std::string converge_svg(const ConvergeResult& result);

// ---- re-weighting sweep -------------------------------------------------

struct ReweightTrial {
  double rel_mse = std::numeric_limits<double>::quiet_NaN();
  double time = std::numeric_limits<double>::quiet_NaN();  // tau (iterations for fista inner)
  bool converged = false;
  bool ok = false;
};

struct ReweightResult {
  std::vector<double> rhos;
  std::vector<std::string> variants;
  std::size_t trials = 0;
  std::vector<ReweightTrial> table;  // [rho][variant][trial]

  const ReweightTrial& at(std::size_t ri, std::size_t vi, std::size_t ti) const {
    return table[(ri * variants.size() + vi) * trials + ti];
  }
  ReweightTrial& at(std::size_t ri, std::size_t vi, std::size_t ti) {
    return table[(ri * variants.size() + vi) * trials + ti];
  }
  double mean_rel_mse(std::size_t ri, std::size_t vi) const;
  double median_time(std::size_t ri, std::size_t vi) const;
};

ReweightResult run_reweight(const ExperimentConfig& config);
// rho,variant,trials,mean_rel_mse,median_time
std::string reweight_csv(const ReweightResult& result);
std::string reweight_svg(const ReweightResult& result);

// ---- activation tables ----------------------------------------------------

// family,u,activation,cost_of_activation rows over a uniform u grid.
std::string activations_csv(const std::vector<costs::ActivationSpec>& specs, double u_min,
                            double u_max, double step);

// ---- shared helpers -------------------------------------------------------

// Uniform grid over [lo, hi] with k points (k = 1 gives the midpoint);
// repeated values collapse, so a degenerate range yields a single point.
std::vector<double> axis_points(double lo, double hi, std::size_t k);

double median(std::vector<double> values);

void write_text_file(const std::string& path, const std::string& content);

void set_threads(int threads);

}  // namespace lca::harness
