// lcasim: sparse-approximation toolkit CLI.
//
// Subcommands: gen, solve, phase, converge, reweight, activations.
// Exit codes: 0 success, 2 bad configuration or input, 3 solver divergence
// (solve mode), 1 unexpected I/O or internal failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lca/baseline.hpp"
#include "lca/costs.hpp"
#include "lca/dynamics.hpp"
#include "lca/harness.hpp"
#include "lca/model.hpp"
#include "lca/synth.hpp"

namespace {

using lca::costs::ActivationSpec;
using lca::costs::Family;

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

// Spec from a family name plus optional JSON parameter payload; approximate
// lp families accept "p" and run the parameter fit.
ActivationSpec spec_from_cli(const std::string& family_name, double lambda,
                             const std::string& params_json) {
  nlohmann::json params = nlohmann::json::object();
  if (!params_json.empty()) {
    try {
      params = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("--params: ") + e.what());
    }
  }
  const Family family = lca::costs::family_from_name(family_name);
  if ((family == Family::ApproxLpLow || family == Family::ApproxLpHigh) &&
      !params.contains("c")) {
    const double p = params.value("p", family == Family::ApproxLpLow ? 0.5 : 1.5);
    return lca::costs::spec_from_lp_fit(lca::costs::fit_lp_params(p), lambda);
  }
  nlohmann::json j{{"family", family_name}, {"lambda", lambda}, {"params", params}};
  return lca::costs::spec_from_json(j);
}

struct ExperimentCli {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out, svg;
  std::optional<int> threads;
  std::optional<std::size_t> n, grid, trials;
};

void add_experiment_flags(CLI::App* cmd, ExperimentCli& cli) {
  cmd->add_option("--config", cli.config_path, "experiment config JSON file");
  cmd->add_option("--seed", cli.seed, "override the experiment seed");
  cmd->add_option("--out", cli.out, "CSV output path");
  cmd->add_option("--svg", cli.svg, "SVG output path");
  cmd->add_option("--threads", cli.threads, "worker thread count (0 = default)");
  cmd->add_option("--n", cli.n, "override the signal length N");
  cmd->add_option("--grid", cli.grid, "override the cells-per-axis grid size");
  cmd->add_option("--trials", cli.trials, "override the trials per cell");
}

lca::harness::ExperimentConfig experiment_config(const ExperimentCli& cli,
                                                 lca::harness::Kind kind) {
  nlohmann::json j = cli.config_path.empty() ? nlohmann::json::object() : load_json(cli.config_path);
  if (!j.contains("kind")) j["kind"] = lca::harness::kind_name(kind);
  auto cfg = lca::harness::config_from_json(j);
  if (cfg.kind != kind)
    throw std::invalid_argument(std::string("config kind mismatch: expected ") +
                                lca::harness::kind_name(kind));
  if (cli.seed) cfg.seed = *cli.seed;
  if (!cli.out.empty()) cfg.out = cli.out;
  if (!cli.svg.empty()) cfg.svg = cli.svg;
  if (cli.threads) cfg.threads = *cli.threads;
  if (cli.n) cfg.n = *cli.n;
  if (cli.grid) cfg.grid = *cli.grid;
  if (cli.trials) cfg.trials = *cli.trials;
  cfg.validate();
  return cfg;
}

int run_gen(const std::string& out, std::size_t n, double delta, double rho, double noise_var,
            std::uint64_t seed) {
  lca::synth::ProblemParams params{n, delta, rho, noise_var, seed};
  const auto problem = lca::synth::generate(params);
  lca::model::write_problem(out, problem);
  std::printf("wrote %s: n=%zu m=%zu s=%zu lambda=%s sampler=box-muller rounding=half-up\n",
              out.c_str(), params.n, params.m(), params.s(),
              lca::model::format_real(problem.lambda).c_str());
  return 0;
}

int run_solve(const std::string& problem_path, const std::string& solver,
              const std::string& family, const std::string& lambda_arg,
              const std::string& params_json, bool continuation, const std::string& trace_path,
              const std::string& out_path, lca::dynamics::SolverOptions lca_opts,
              lca::baseline::BaselineOptions fista_opts) {
  auto problem = lca::model::read_problem(problem_path);
  double lambda = problem.lambda;
  if (lambda_arg == "auto") {
    lambda = lca::dynamics::lambda_rule(problem);
    problem.lambda = lambda;
  } else if (!lambda_arg.empty()) {
    lambda = std::stod(lambda_arg);
    if (!(lambda > 0.0)) throw std::invalid_argument("--lambda must be positive");
    problem.lambda = lambda;
  }
  const auto spec = spec_from_cli(family, lambda, params_json);

  lca::model::Solution sol;
  if (solver == "lca") {
    lca_opts.continuation.enabled = continuation;
    sol = lca::dynamics::solve_lca(problem, spec, lca_opts);
  } else if (solver == "fista") {
    if (!lca::costs::gap_certified(spec.family))
      throw std::invalid_argument("fista solves l1/weighted_l1 costs only");
    sol = lca::baseline::solve_fista(
        problem, spec.family == Family::WeightedL1 ? spec.weights : std::vector<double>{},
        fista_opts);
  } else {
    throw std::invalid_argument("--solver must be lca or fista");
  }

  if (!trace_path.empty()) lca::model::write_trace_csv(trace_path, sol.trace);
  const double energy = lca::model::energy(problem, spec, sol.a);
  std::printf("solver=%s converged=%d time=%s energy=%s", solver.c_str(), sol.converged ? 1 : 0,
              lca::model::format_real(sol.simulated_time).c_str(),
              lca::model::format_real(energy).c_str());
  if (problem.truth)
    std::printf(" rel_mse=%s",
                lca::model::format_real(lca::model::rel_mse(sol.a, *problem.truth)).c_str());
  std::printf("\n");

  if (!out_path.empty()) {
    nlohmann::json j{{"a", sol.a},
                     {"converged", sol.converged},
                     {"simulated_time", sol.simulated_time},
                     {"energy", energy}};
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
    f << j.dump() << "\n";
  }
  return 0;
}

std::vector<ActivationSpec> default_catalog(double lambda) {
  std::vector<ActivationSpec> specs;
  specs.push_back(ActivationSpec::l1(lambda));
  specs.push_back(ActivationSpec::l0(lambda));
  specs.push_back(lca::costs::spec_from_lp_fit(lca::costs::fit_lp_params(0.5), lambda));
  specs.push_back(lca::costs::spec_from_lp_fit(lca::costs::fit_lp_params(1.5), lambda));
  specs.push_back(ActivationSpec::scad(lambda, 3.7));
  specs.push_back(ActivationSpec::transformed_l1(lambda, 2.0));
  specs.push_back(ActivationSpec::huber(lambda, 0.3));
  specs.push_back(ActivationSpec::asib(lambda));
  specs.push_back(ActivationSpec::log_barrier(lambda, 1e6));
  return specs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse approximation via simulated analog dynamics"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic problem file");
  std::size_t gen_n = 200;
  double gen_delta = 0.5, gen_rho = 0.2, gen_noise = 1e-4;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "problem.json";
  gen->add_option("--n", gen_n, "signal length N");
  gen->add_option("--delta", gen_delta, "undersampling ratio M/N");
  gen->add_option("--rho", gen_rho, "sparsity ratio S/M");
  gen->add_option("--noise-var", gen_noise, "measurement noise variance");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--out", gen_out, "output problem JSON path");
  int gen_threads = 0;
  gen->add_option("--threads", gen_threads, "worker thread count (0 = default)");

  // solve
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  std::string solve_problem, solve_solver = "lca", solve_cost = "l1";
  std::string solve_lambda, solve_params, solve_trace, solve_out;
  std::string solve_continuation = "on";
  lca::dynamics::SolverOptions solve_lca_opts;
  lca::baseline::BaselineOptions solve_fista_opts;
  solve->add_option("--problem", solve_problem, "problem JSON path")->required();
  solve->add_option("--solver", solve_solver, "lca or fista");
  solve->add_option("--cost", solve_cost, "cost family name");
  solve->add_option("--lambda", solve_lambda, "threshold override (real or \"auto\")");
  solve->add_option("--params", solve_params, "cost parameters as JSON, e.g. {\"beta\":2}");
  solve->add_option("--continuation", solve_continuation, "on or off");
  solve->add_option("--trace", solve_trace, "trace CSV output path");
  solve->add_option("--out", solve_out, "solution JSON output path");
  solve->add_option("--eta", solve_lca_opts.eta, "Euler step dt/tau");
  solve->add_option("--max-time", solve_lca_opts.max_time, "budget in tau units");
  solve->add_option("--gap-tol", solve_lca_opts.gap_tol, "relative duality gap tolerance");
  int solve_threads = 0;
  solve->add_option("--threads", solve_threads, "worker thread count (0 = default)");

  // experiments
  ExperimentCli phase_cli, converge_cli, reweight_cli;
  auto* phase = app.add_subcommand("phase", "recovery phase grid over (delta, rho)");
  add_experiment_flags(phase, phase_cli);
  auto* converge = app.add_subcommand("converge", "convergence-time study");
  add_experiment_flags(converge, converge_cli);
  auto* reweight = app.add_subcommand("reweight", "re-weighted l1 sweep over rho");
  add_experiment_flags(reweight, reweight_cli);

  // activations
  auto* act = app.add_subcommand("activations", "dump activation/cost tables");
  std::string act_cost = "all", act_params, act_out = "activations.csv";
  double act_lambda = 0.5, act_umin = -3.0, act_umax = 3.0, act_step = 0.01;
  act->add_option("--cost", act_cost, "family name or \"all\"");
  act->add_option("--lambda", act_lambda, "threshold lambda");
  act->add_option("--params", act_params, "cost parameters as JSON");
  act->add_option("--umin", act_umin, "grid start");
  act->add_option("--umax", act_umax, "grid end");
  act->add_option("--step", act_step, "grid step");
  act->add_option("--out", act_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      lca::harness::set_threads(gen_threads);
      return run_gen(gen_out, gen_n, gen_delta, gen_rho, gen_noise, gen_seed);
    }

    if (solve->parsed()) {
      if (solve_continuation != "on" && solve_continuation != "off")
        throw std::invalid_argument("--continuation must be on or off");
      try {
        lca::harness::set_threads(solve_threads);
        return run_solve(solve_problem, solve_solver, solve_cost, solve_lambda, solve_params,
                         solve_continuation == "on", solve_trace, solve_out, solve_lca_opts,
                         solve_fista_opts);
      } catch (const lca::dynamics::DivergenceError& e) {
        std::fprintf(stderr, "error: %s (eta=%g)\n", e.what(), e.eta);
        return 3;
      }
    }

    if (phase->parsed()) {
      const auto cfg = experiment_config(phase_cli, lca::harness::Kind::Phase);
      const auto result = lca::harness::run_phase(cfg);
      const std::string csv = lca::harness::phase_csv(result);
      if (cfg.out.empty())
        std::fputs(csv.c_str(), stdout);
      else
        lca::harness::write_text_file(cfg.out, csv);
      if (!cfg.svg.empty()) lca::harness::write_text_file(cfg.svg, lca::harness::phase_svg(result));
      return 0;
    }

    if (converge->parsed()) {
      const auto cfg = experiment_config(converge_cli, lca::harness::Kind::Converge);
      const auto result = lca::harness::run_converge(cfg);
      const std::string csv = lca::harness::converge_summary_csv(result);
      if (cfg.out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        lca::harness::write_text_file(cfg.out, csv);
        std::string traces_path = cfg.out;
        const auto dot = traces_path.rfind('.');
        traces_path.insert(dot == std::string::npos ? traces_path.size() : dot, "_traces");
        lca::harness::write_text_file(traces_path, lca::harness::converge_traces_csv(result));
      }
      if (!cfg.svg.empty())
        lca::harness::write_text_file(cfg.svg, lca::harness::converge_svg(result));
      return 0;
    }

    if (reweight->parsed()) {
      const auto cfg = experiment_config(reweight_cli, lca::harness::Kind::Reweight);
      const auto result = lca::harness::run_reweight(cfg);
      const std::string csv = lca::harness::reweight_csv(result);
      if (cfg.out.empty())
        std::fputs(csv.c_str(), stdout);
      else
        lca::harness::write_text_file(cfg.out, csv);
      if (!cfg.svg.empty())
        lca::harness::write_text_file(cfg.svg, lca::harness::reweight_svg(result));
      return 0;
    }

    if (act->parsed()) {
      std::vector<ActivationSpec> specs;
      if (act_cost == "all")
        specs = default_catalog(act_lambda);
      else
        specs.push_back(spec_from_cli(act_cost, act_lambda, act_params));
      lca::harness::write_text_file(act_out,
                                    lca::harness::activations_csv(specs, act_umin, act_umax,
                                                                  act_step));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
