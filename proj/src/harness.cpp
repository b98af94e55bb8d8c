#include "lca/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "lca/kernels.hpp"
#include "lca/rng.hpp"
#include "lca/svg.hpp"
#include "lca/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lca::harness {

namespace {

using model::MeasurementProblem;
using model::Solution;

const std::vector<std::string> kPhaseSolvers = {"lca", "fista", "lca_reweighted",
                                                "fista_reweighted", "lca_reweighted_iterative"};
const std::vector<std::string> kReweightVariants = {"lca", "fista_reweighted",
                                                    "lca_reweighted_iterative", "lca_reweighted"};

struct Preset {
  const char* name;
  double delta;
  double rho;
};
constexpr Preset kPresets[3] = {{"easy", 0.6, 0.15}, {"medium", 0.5, 0.3}, {"hard", 0.3, 0.6}};
constexpr std::size_t kSizes[3] = {100, 200, 400};

struct RunOutcome {
  bool ok = false;
  Solution sol;
};

RunOutcome run_solver(const std::string& name, const MeasurementProblem& pb,
                      const ExperimentConfig& cfg) {
  RunOutcome out;
  try {
    if (name == "lca") {
      out.sol = dynamics::solve_lca(pb, costs::ActivationSpec::l1(pb.lambda), cfg.lca_opts);
    } else if (name == "fista") {
      out.sol = baseline::solve_fista(pb, {}, cfg.fista_opts);
    } else if (name == "lca_reweighted") {
      const double nu = cfg.rw_nu.value_or(dynamics::lambda_rule(pb) * cfg.rw_gamma);
      out.sol =
          dynamics::solve_lca_reweighted(pb, cfg.lca_opts, cfg.rw_gamma, nu, cfg.rw_tau_ratio);
    } else if (name == "fista_reweighted" || name == "lca_reweighted_iterative") {
      baseline::ReweightIterOptions o;
      o.outer_iters = cfg.rw_outer_iters;
      o.gamma = cfg.rw_gamma;
      o.nu = cfg.rw_nu;
      o.inner = name == "fista_reweighted" ? baseline::InnerSolver::Fista
                                           : baseline::InnerSolver::Lca;
      o.fista = cfg.fista_opts;
      o.lca = cfg.lca_opts;
      out.sol = baseline::solve_reweighted_iterative(pb, o);
    } else {
      throw std::invalid_argument("unknown solver: " + name);
    }
    out.ok = true;
  } catch (const dynamics::DivergenceError&) {
    out.ok = false;  // recorded per cell, not fatal
  }
  return out;
}

void require_known_solvers(const std::vector<std::string>& names) {
  for (const auto& name : names)
    if (std::find(kPhaseSolvers.begin(), kPhaseSolvers.end(), name) == kPhaseSolvers.end())
      throw std::invalid_argument("unknown solver: " + name);
}

// rel-MSE distance between two solutions, ||a - b||^2 / ||b||^2.
double cross_distance(std::span<const double> a, std::span<const double> b) {
  const double denom = kernels::norm_sq(b);
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
  }
  return num / denom;
}

std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t trial, std::size_t row,
                            std::size_t col) {
  return synth::derive_stream(cfg.seed, trial, row, col).stream_id;
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const char* ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument(std::string("config: unknown key \"") + it.key() + "\" in " +
                                  ctx);
  }
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Phase: return "phase";
    case Kind::Converge: return "converge";
    case Kind::Reweight: return "reweight";
    case Kind::Activations: return "activations";
  }
  return "?";
}

Kind kind_from_name(std::string_view name) {
  if (name == "phase") return Kind::Phase;
  if (name == "converge") return Kind::Converge;
  if (name == "reweight") return Kind::Reweight;
  if (name == "activations") return Kind::Activations;
  throw std::invalid_argument("unknown experiment kind: " + std::string(name));
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (grid < 1 || grid >= (1u << 20)) throw std::invalid_argument("config: grid out of range");
  if (trials < 1 || trials >= (1u << 24)) throw std::invalid_argument("config: trials out of range");
  auto check_range = [](const std::array<double, 2>& r, const char* what) {
    if (!(r[0] > 0.0 && r[1] < 1.0 && r[0] <= r[1]))
      throw std::invalid_argument(std::string("config: ") + what + " must be within (0, 1)");
  };
  check_range(delta_range, "delta_range");
  check_range(rho_range, "rho_range");
  if (solvers.empty()) throw std::invalid_argument("config: solvers must be non-empty");
  require_known_solvers(solvers);
  if (!(noise_var >= 0.0)) throw std::invalid_argument("config: noise_var must be >= 0");
  if (!(rw_gamma > 0.0)) throw std::invalid_argument("config: reweight gamma must be positive");
  if (rw_nu && !(*rw_nu > 0.0)) throw std::invalid_argument("config: reweight nu must be positive");
  if (!(rw_tau_ratio > 0.0))
    throw std::invalid_argument("config: reweight tau_ratio must be positive");
  if (rw_outer_iters < 1)
    throw std::invalid_argument("config: reweight outer_iters must be >= 1");
  lca_opts.validate();
  fista_opts.validate();
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  check_keys(j,
             {"kind", "n", "grid", "delta_range", "rho_range", "trials", "solvers", "seed",
              "noise_var", "lca", "fista", "reweight", "out", "svg", "threads"},
             "config");
  ExperimentConfig cfg;
  try {
    cfg.kind = kind_from_name(j.value("kind", "phase"));
    cfg.n = j.value("n", cfg.n);
    cfg.grid = j.value("grid", cfg.grid);
    if (j.contains("delta_range")) cfg.delta_range = j.at("delta_range").get<std::array<double, 2>>();
    if (j.contains("rho_range")) cfg.rho_range = j.at("rho_range").get<std::array<double, 2>>();
    cfg.trials = j.value("trials", cfg.kind == Kind::Converge   ? std::size_t{10}
                                   : cfg.kind == Kind::Reweight ? std::size_t{15}
                                                                : std::size_t{5});
    if (cfg.kind == Kind::Reweight) cfg.solvers = kReweightVariants;
    if (j.contains("solvers")) cfg.solvers = j.at("solvers").get<std::vector<std::string>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.noise_var = j.value("noise_var", cfg.noise_var);
    cfg.out = j.value("out", cfg.out);
    cfg.svg = j.value("svg", cfg.svg);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("lca")) {
      const auto& l = j.at("lca");
      check_keys(l,
                 {"eta", "max_time", "gap_tol", "adaptive", "record_every", "precompute_gram",
                  "stationarity_tol", "continuation"},
                 "config.lca");
      cfg.lca_opts.eta = l.value("eta", cfg.lca_opts.eta);
      cfg.lca_opts.max_time = l.value("max_time", cfg.lca_opts.max_time);
      cfg.lca_opts.gap_tol = l.value("gap_tol", cfg.lca_opts.gap_tol);
      cfg.lca_opts.adaptive = l.value("adaptive", cfg.lca_opts.adaptive);
      cfg.lca_opts.record_every = l.value("record_every", cfg.lca_opts.record_every);
      cfg.lca_opts.precompute_gram = l.value("precompute_gram", cfg.lca_opts.precompute_gram);
      cfg.lca_opts.stationarity_tol = l.value("stationarity_tol", cfg.lca_opts.stationarity_tol);
      if (l.contains("continuation")) {
        const auto& c = l.at("continuation");
        check_keys(c, {"enabled", "decay", "floor", "per_tau"}, "config.lca.continuation");
        cfg.lca_opts.continuation.enabled = c.value("enabled", cfg.lca_opts.continuation.enabled);
        cfg.lca_opts.continuation.decay = c.value("decay", cfg.lca_opts.continuation.decay);
        if (c.contains("floor")) cfg.lca_opts.continuation.floor = c.at("floor").get<double>();
        cfg.lca_opts.continuation.per_tau = c.value("per_tau", cfg.lca_opts.continuation.per_tau);
      }
    }
    if (j.contains("fista")) {
      const auto& f = j.at("fista");
      check_keys(f, {"max_iters", "gap_tol", "step", "acceleration"}, "config.fista");
      cfg.fista_opts.max_iters = f.value("max_iters", cfg.fista_opts.max_iters);
      cfg.fista_opts.gap_tol = f.value("gap_tol", cfg.fista_opts.gap_tol);
      if (f.contains("step")) cfg.fista_opts.step = f.at("step").get<double>();
      cfg.fista_opts.acceleration = f.value("acceleration", cfg.fista_opts.acceleration);
    }
    if (j.contains("reweight")) {
      const auto& r = j.at("reweight");
      check_keys(r, {"gamma", "nu", "tau_ratio", "outer_iters"}, "config.reweight");
      cfg.rw_gamma = r.value("gamma", cfg.rw_gamma);
      if (r.contains("nu")) cfg.rw_nu = r.at("nu").get<double>();
      cfg.rw_tau_ratio = r.value("tau_ratio", cfg.rw_tau_ratio);
      cfg.rw_outer_iters = r.value("outer_iters", cfg.rw_outer_iters);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::vector<double> axis_points(double lo, double hi, std::size_t k) {
  if (k < 1) throw std::invalid_argument("axis_points: need at least one point");
  std::vector<double> pts;
  if (k == 1 || lo == hi) {
    pts.push_back(k == 1 ? 0.5 * (lo + hi) : lo);
    return pts;
  }
  for (std::size_t i = 0; i < k; ++i)
    pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

ResultGrid run_phase(const ExperimentConfig& config) {
  config.validate();
  set_threads(config.threads);

  ResultGrid grid;
  grid.deltas = axis_points(config.delta_range[0], config.delta_range[1], config.grid);
  grid.rhos = axis_points(config.rho_range[0], config.rho_range[1], config.grid);
  grid.solvers = config.solvers;
  const std::size_t D = grid.deltas.size(), R = grid.rhos.size(), S = grid.solvers.size();
  const std::size_t T = config.trials;
  grid.cells.resize(D * R * S);

  // Every cell's parameters are validated up front so the parallel region
  // only ever sees solvable jobs.
  for (std::size_t di = 0; di < D; ++di)
    for (std::size_t ri = 0; ri < R; ++ri)
      synth::ProblemParams{config.n, grid.deltas[di], grid.rhos[ri], config.noise_var, 0}
          .validate();

  struct Slot {
    bool ok = false;
    double rel_mse = 0, energy = 0, cross = 0, time = 0;
    bool has_cross = false;
  };
  std::vector<Slot> slots(D * R * T * S);

  const std::int64_t jobs = static_cast<std::int64_t>(D * R * T);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t di = static_cast<std::size_t>(job) / (R * T);
    const std::size_t ri = (static_cast<std::size_t>(job) / T) % R;
    const std::size_t ti = static_cast<std::size_t>(job) % T;
    synth::ProblemParams params{config.n, grid.deltas[di], grid.rhos[ri], config.noise_var,
                                instance_seed(config, ti, di, ri)};
    const auto pb = synth::generate(params);
    const auto l1 = costs::ActivationSpec::l1(pb.lambda);

    std::vector<RunOutcome> outs(S);
    for (std::size_t si = 0; si < S; ++si) outs[si] = run_solver(grid.solvers[si], pb, config);

    for (std::size_t si = 0; si < S; ++si) {
      Slot& slot = slots[((di * R + ri) * T + ti) * S + si];
      if (!outs[si].ok) continue;
      const auto& sol = outs[si].sol;
      slot.ok = true;
      slot.rel_mse = model::rel_mse(sol.a, *pb.truth);
      slot.energy = model::energy(pb, l1, sol.a);
      slot.time = sol.simulated_time;
      double cross_sum = 0.0;
      std::size_t cross_cnt = 0;
      for (std::size_t sj = 0; sj < S; ++sj) {
        if (sj == si || !outs[sj].ok) continue;
        const double d = cross_distance(sol.a, outs[sj].sol.a);
        if (std::isfinite(d)) {
          cross_sum += d;
          ++cross_cnt;
        }
      }
      if (cross_cnt > 0) {
        slot.cross = cross_sum / static_cast<double>(cross_cnt);
        slot.has_cross = true;
      }
    }
  }

  // Deterministic reduction in trial order.
  for (std::size_t di = 0; di < D; ++di)
    for (std::size_t ri = 0; ri < R; ++ri)
      for (std::size_t si = 0; si < S; ++si) {
        CellStats& cell = grid.at(di, ri, si);
        double mse = 0, energy = 0, cross = 0, time = 0;
        std::size_t cnt = 0, cross_cnt = 0;
        for (std::size_t ti = 0; ti < T; ++ti) {
          const Slot& slot = slots[((di * R + ri) * T + ti) * S + si];
          if (!slot.ok) {
            ++cell.failures;
            continue;
          }
          ++cnt;
          mse += slot.rel_mse;
          energy += slot.energy;
          time += slot.time;
          if (slot.has_cross) {
            cross += slot.cross;
            ++cross_cnt;
          }
        }
        cell.trials = cnt;
        if (cnt > 0) {
          cell.mean_rel_mse = mse / static_cast<double>(cnt);
          cell.mean_energy = energy / static_cast<double>(cnt);
          cell.mean_time = time / static_cast<double>(cnt);
        }
        if (cross_cnt > 0) cell.mean_cross_dist = cross / static_cast<double>(cross_cnt);
      }
  return grid;
}

std::string phase_csv(const ResultGrid& grid) {
  std::string out = "delta,rho,solver,trials,mean_rel_mse,mean_energy,mean_cross_dist,mean_time\n";
  for (std::size_t di = 0; di < grid.deltas.size(); ++di)
    for (std::size_t ri = 0; ri < grid.rhos.size(); ++ri)
      for (std::size_t si = 0; si < grid.solvers.size(); ++si) {
        const CellStats& c = grid.at(di, ri, si);
        out += model::format_real(grid.deltas[di]) + "," + model::format_real(grid.rhos[ri]) +
               "," + grid.solvers[si] + "," + std::to_string(c.trials) + "," +
               model::format_real(c.mean_rel_mse) + "," + model::format_real(c.mean_energy) +
               "," + model::format_real(c.mean_cross_dist) + "," +
               model::format_real(c.mean_time) + "\n";
      }
  return out;
}

std::string phase_svg(const ResultGrid& grid) {
  std::vector<svg::HeatmapPanel> panels;
  for (std::size_t si = 0; si < grid.solvers.size(); ++si) {
    svg::HeatmapPanel p;
    p.title = grid.solvers[si] + " rel MSE";
    p.values.resize(grid.deltas.size() * grid.rhos.size());
    for (std::size_t ri = 0; ri < grid.rhos.size(); ++ri)
      for (std::size_t di = 0; di < grid.deltas.size(); ++di)
        p.values[ri * grid.deltas.size() + di] = grid.at(di, ri, si).mean_rel_mse;
    panels.push_back(std::move(p));
  }
  return svg::heatmap(grid.deltas, grid.rhos, panels, "delta = M/N", "rho = S/M",
                      "compressed-sensing recovery phase grid");
}

ConvergeResult run_converge(const ExperimentConfig& config) {
  config.validate();
  set_threads(config.threads);

  ConvergeResult result;
  for (const auto& p : kPresets) result.presets.push_back(p.name);
  result.sizes.assign(std::begin(kSizes), std::end(kSizes));
  result.trials = config.trials;
  const std::size_t T = config.trials;
  result.runs.resize(std::size_t{9} * T);

  const std::int64_t jobs = static_cast<std::int64_t>(result.runs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t pi = static_cast<std::size_t>(job) / (3 * T);
    const std::size_t ni = (static_cast<std::size_t>(job) / T) % 3;
    const std::size_t ti = static_cast<std::size_t>(job) % T;
    const Preset& preset = kPresets[pi];
    synth::ProblemParams params{kSizes[ni], preset.delta, preset.rho, config.noise_var,
                                instance_seed(config, ti, pi, ni)};
    const auto pb = synth::generate(params);

    ConvergeRun run;
    run.preset = preset.name;
    run.n = kSizes[ni];
    run.trial = ti;
    const auto lca = run_solver("lca", pb, config);
    if (lca.ok) {
      for (const auto& r : lca.sol.trace) {
        run.t.push_back(r.t_over_tau);
        run.rel_dist.push_back(r.rel_err);
      }
      run.terminal_rel_dist = run.rel_dist.empty() ? 0.0 : run.rel_dist.back();
      run.time_to_2x_terminal = run.t.empty() ? 0.0 : run.t.back();
      for (std::size_t k = 0; k < run.t.size(); ++k) {
        if (run.rel_dist[k] <= 2.0 * run.terminal_rel_dist) {
          run.time_to_2x_terminal = run.t[k];
          break;
        }
      }
      run.tau_to_convergence = lca.sol.simulated_time;
      run.converged = lca.sol.converged;
    }
    const auto fista = run_solver("fista", pb, config);
    if (fista.ok) {
      run.fista_iters = static_cast<std::size_t>(fista.sol.simulated_time);
      run.fista_sec_per_iter =
          fista.sol.wallclock / std::max<double>(1.0, fista.sol.simulated_time);
    }
    result.runs[(pi * 3 + ni) * T + ti] = std::move(run);
  }
  return result;
}

std::string converge_summary_csv(const ConvergeResult& result) {
  std::string out =
      "preset,n,trials,median_time_to_2x_terminal,median_tau_to_convergence,"
      "median_terminal_rel_dist,mean_fista_sec_per_iter\n";
  const std::size_t T = result.trials;
  for (std::size_t pi = 0; pi < result.presets.size(); ++pi)
    for (std::size_t ni = 0; ni < result.sizes.size(); ++ni) {
      std::vector<double> t2x, tau, term;
      double sec = 0.0;
      std::size_t sec_cnt = 0;
      for (std::size_t ti = 0; ti < T; ++ti) {
        const auto& run = result.runs[(pi * 3 + ni) * T + ti];
        t2x.push_back(run.time_to_2x_terminal);
        tau.push_back(run.tau_to_convergence);
        term.push_back(run.terminal_rel_dist);
        if (run.fista_iters > 0) {
          sec += run.fista_sec_per_iter;
          ++sec_cnt;
        }
      }
      out += result.presets[pi] + "," + std::to_string(result.sizes[ni]) + "," +
             std::to_string(T) + "," + model::format_real(median(t2x)) + "," +
             model::format_real(median(tau)) + "," + model::format_real(median(term)) + "," +
             model::format_real(sec_cnt ? sec / static_cast<double>(sec_cnt)
                                        : std::numeric_limits<double>::quiet_NaN()) +
             "\n";
    }
  return out;
}

std::string converge_traces_csv(const ConvergeResult& result) {
  std::string out = "preset,n,trial,t_over_tau,rel_dist\n";
  for (const auto& run : result.runs)
    for (std::size_t k = 0; k < run.t.size(); ++k)
      out += run.preset + "," + std::to_string(run.n) + "," + std::to_string(run.trial) + "," +
             model::format_real(run.t[k]) + "," + model::format_real(run.rel_dist[k]) + "\n";
  return out;
}

std::string converge_svg(const ConvergeResult& result) {
  // First trial of every (preset, n) pair, relative distance vs simulated time.
  std::vector<svg::Series> series;
  const std::size_t T = result.trials;
  for (std::size_t pi = 0; pi < result.presets.size(); ++pi)
    for (std::size_t ni = 0; ni < result.sizes.size(); ++ni) {
      const auto& run = result.runs[(pi * 3 + ni) * T];
      svg::Series s;
      s.label = result.presets[pi] + " n=" + std::to_string(result.sizes[ni]);
      s.x = run.t;
      s.y = run.rel_dist;
      series.push_back(std::move(s));
    }
  return svg::line_plot(series, /*log_x=*/true, /*log_y=*/true, "t / tau", "rel dist",
                        "convergence of the analog solver");
}

double ReweightResult::mean_rel_mse(std::size_t ri, std::size_t vi) const {
  double acc = 0.0;
  std::size_t cnt = 0;
  for (std::size_t ti = 0; ti < trials; ++ti) {
    const auto& tr = at(ri, vi, ti);
    if (tr.ok) {
      acc += tr.rel_mse;
      ++cnt;
    }
  }
  return cnt ? acc / static_cast<double>(cnt) : std::numeric_limits<double>::quiet_NaN();
}

double ReweightResult::median_time(std::size_t ri, std::size_t vi) const {
  std::vector<double> v;
  for (std::size_t ti = 0; ti < trials; ++ti) {
    const auto& tr = at(ri, vi, ti);
    if (tr.ok) v.push_back(tr.time);
  }
  return median(std::move(v));
}

ReweightResult run_reweight(const ExperimentConfig& config) {
  config.validate();
  set_threads(config.threads);

  ReweightResult result;
  result.rhos = axis_points(config.rho_range[0], config.rho_range[1], config.grid);
  result.variants = config.solvers;
  result.trials = config.trials;
  const std::size_t R = result.rhos.size(), V = result.variants.size(), T = result.trials;
  result.table.resize(R * V * T);

  for (double rho : result.rhos)
    synth::ProblemParams{config.n, 0.5, rho, config.noise_var, 0}.validate();

  const std::int64_t jobs = static_cast<std::int64_t>(R * T);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t ri = static_cast<std::size_t>(job) / T;
    const std::size_t ti = static_cast<std::size_t>(job) % T;
    synth::ProblemParams params{config.n, 0.5, result.rhos[ri], config.noise_var,
                                instance_seed(config, ti, 0, ri)};
    const auto pb = synth::generate(params);
    for (std::size_t vi = 0; vi < V; ++vi) {
      const auto out = run_solver(result.variants[vi], pb, config);
      ReweightTrial& tr = result.at(ri, vi, ti);
      if (!out.ok) continue;
      tr.ok = true;
      tr.rel_mse = model::rel_mse(out.sol.a, *pb.truth);
      tr.time = out.sol.simulated_time;
      tr.converged = out.sol.converged;
    }
  }
  return result;
}

std::string reweight_csv(const ReweightResult& result) {
  std::string out = "rho,variant,trials,mean_rel_mse,median_time\n";
  for (std::size_t ri = 0; ri < result.rhos.size(); ++ri)
    for (std::size_t vi = 0; vi < result.variants.size(); ++vi) {
      std::size_t cnt = 0;
      for (std::size_t ti = 0; ti < result.trials; ++ti)
        if (result.at(ri, vi, ti).ok) ++cnt;
      out += model::format_real(result.rhos[ri]) + "," + result.variants[vi] + "," +
             std::to_string(cnt) + "," + model::format_real(result.mean_rel_mse(ri, vi)) + "," +
             model::format_real(result.median_time(ri, vi)) + "\n";
    }
  return out;
}

std::string reweight_svg(const ReweightResult& result) {
  std::vector<svg::Series> series;
  for (std::size_t vi = 0; vi < result.variants.size(); ++vi) {
    svg::Series s;
    s.label = result.variants[vi];
    for (std::size_t ri = 0; ri < result.rhos.size(); ++ri) {
      s.x.push_back(result.rhos[ri]);
      s.y.push_back(result.mean_rel_mse(ri, vi));
    }
    series.push_back(std::move(s));
  }
  return svg::line_plot(series, /*log_x=*/false, /*log_y=*/true, "rho = S/M", "mean rel MSE",
                        "re-weighted recovery sweep (delta = 0.5)");
}

std::string activations_csv(const std::vector<costs::ActivationSpec>& specs, double u_min,
                            double u_max, double step) {
  if (!(step > 0.0) || !(u_max >= u_min))
    throw std::invalid_argument("activations_csv: bad grid");
  std::string out = "family,u,activation,cost_of_activation\n";
  const std::size_t count = static_cast<std::size_t>((u_max - u_min) / step + 1e-9) + 1;
  for (const auto& spec : specs) {
    for (std::size_t k = 0; k < count; ++k) {
      const double u = u_min + static_cast<double>(k) * step;
      const double t = costs::activation_scalar(spec, u);
      out += std::string(costs::family_name(spec.family)) + "," + model::format_real(u) + "," +
             model::format_real(t) + "," + model::format_real(costs::scalar_cost(spec, t)) + "\n";
    }
  }
  return out;
}

}  // namespace lca::harness
