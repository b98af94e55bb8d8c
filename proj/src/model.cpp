#include "lca/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lca/kernels.hpp"

namespace lca::model {

void DenseMatrix::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("DenseMatrix: rows and cols must be >= 1");
  if (data.size() != rows * cols)
    throw std::invalid_argument("DenseMatrix: entry count does not match dimensions");
  for (double v : data)
    if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: entries must be finite");
}

MeasurementProblem MeasurementProblem::create(DenseMatrix phi, std::vector<double> y,
                                              double lambda, std::optional<Groups> groups,
                                              std::optional<std::vector<double>> truth) {
  phi.validate();
  if (y.size() != phi.rows) throw std::invalid_argument("problem: y length must equal rows of phi");
  for (double v : y)
    if (!std::isfinite(v)) throw std::invalid_argument("problem: y must be finite");
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw std::invalid_argument("problem: lambda must be positive");
  if (truth && truth->size() != phi.cols)
    throw std::invalid_argument("problem: truth length must equal cols of phi");

  const std::size_t n = phi.cols;
  if (groups) {
    std::vector<char> seen(n, 0);
    for (const auto& g : *groups) {
      if (g.empty()) throw std::invalid_argument("problem: groups must be non-empty");
      for (std::size_t idx : g) {
        if (idx >= n) throw std::invalid_argument("problem: group index out of range");
        if (seen[idx]) throw std::invalid_argument("problem: groups must be disjoint");
        seen[idx] = 1;
      }
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j]) throw std::invalid_argument("problem: groups must cover every index");
  }

  // Normalize columns, keeping the applied scales.  Columns already unit
  // within 1e-12 are left untouched so round trips through files are stable.
  std::vector<double> scales(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < phi.rows; ++i) sq += phi(i, j) * phi(i, j);
    const double nrm = std::sqrt(sq);
    if (nrm == 0.0) throw std::invalid_argument("problem: phi has a zero column");
    if (std::abs(nrm - 1.0) > 1e-12) {
      for (std::size_t i = 0; i < phi.rows; ++i) phi(i, j) /= nrm;
      scales[j] = nrm;
    }
  }

  MeasurementProblem p;
  p.phi = std::move(phi);
  p.y = std::move(y);
  p.lambda = lambda;
  p.groups = std::move(groups);
  p.truth = std::move(truth);
  p.column_scales = std::move(scales);
  return p;
}

double energy(const MeasurementProblem& problem, const costs::ActivationSpec& spec,
              std::span<const double> a) {
  if (a.size() != problem.n()) throw std::invalid_argument("energy: coefficient length mismatch");
  std::vector<double> r(problem.m());
  kernels::matvec(problem.phi.data, problem.m(), problem.n(), a, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = problem.y[i] - r[i];
  const Groups* groups = problem.groups ? &*problem.groups : nullptr;
  const double value =
      0.5 * kernels::norm_sq(r) + costs::penalty_value(spec, a, groups);
  if (!std::isfinite(value)) throw std::domain_error("energy: non-finite value");
  return value;
}

double rel_mse(std::span<const double> est, std::span<const double> truth) {
  if (est.size() != truth.size()) throw std::invalid_argument("rel_mse: length mismatch");
  const double denom = kernels::norm_sq(truth);
  if (denom == 0.0) throw std::domain_error("rel_mse: zero reference vector");
  double num = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double d = est[i] - truth[i];
    num += d * d;
  }
  return num / denom;
}

double rel_dist(std::span<const double> a_t, std::span<const double> a_ref) {
  if (a_t.size() != a_ref.size()) throw std::invalid_argument("rel_dist: length mismatch");
  const double denom = kernels::norm(a_ref);
  if (denom == 0.0) throw std::domain_error("rel_dist: zero reference vector");
  double num = 0.0;
  for (std::size_t i = 0; i < a_t.size(); ++i) {
    const double d = a_t[i] - a_ref[i];
    num += d * d;
  }
  return std::sqrt(num) / denom;
}

DenseMatrix gram_minus_identity(const DenseMatrix& phi) {
  phi.validate();
  for (std::size_t j = 0; j < phi.cols; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < phi.rows; ++i) sq += phi(i, j) * phi(i, j);
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-12)
      throw std::invalid_argument("gram_minus_identity: columns must have unit norm");
  }
  DenseMatrix g(phi.cols, phi.cols);
  g.data = kernels::gram_minus_identity(phi.data, phi.rows, phi.cols);
  return g;
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_array(std::string& out, std::span<const double> v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  out += ']';
}

}  // namespace

void write_problem(const std::string& path, const MeasurementProblem& problem) {
  std::string out;
  out.reserve(32 + 20 * (problem.phi.data.size() + problem.y.size()));
  out += "{\"m\":" + std::to_string(problem.m());
  out += ",\"n\":" + std::to_string(problem.n());
  out += ",\"lambda\":" + format_real(problem.lambda);
  out += ",\"phi\":";
  append_array(out, problem.phi.data);
  out += ",\"y\":";
  append_array(out, problem.y);
  if (problem.groups) {
    out += ",\"groups\":[";
    for (std::size_t g = 0; g < problem.groups->size(); ++g) {
      if (g) out += ',';
      out += '[';
      const auto& idx = (*problem.groups)[g];
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(idx[k]);
      }
      out += ']';
    }
    out += ']';
  }
  if (problem.truth) {
    out += ",\"truth\":";
    append_array(out, *problem.truth);
  }
  out += "}\n";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << out;
  if (!f) throw std::runtime_error("write failed: " + path);
}

MeasurementProblem read_problem(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open problem file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("problem file " + path + ": " + e.what());
  }
  const std::size_t m = j.at("m").get<std::size_t>();
  const std::size_t n = j.at("n").get<std::size_t>();
  DenseMatrix phi(m, n);
  phi.data = j.at("phi").get<std::vector<double>>();
  std::optional<Groups> groups;
  if (j.contains("groups")) groups = j.at("groups").get<Groups>();
  std::optional<std::vector<double>> truth;
  if (j.contains("truth")) truth = j.at("truth").get<std::vector<double>>();
  return MeasurementProblem::create(std::move(phi), j.at("y").get<std::vector<double>>(),
                                    j.at("lambda").get<double>(), std::move(groups),
                                    std::move(truth));
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::string out = "t_over_tau,energy,rel_err,gap,lambda_now\n";
  for (const auto& r : trace) {
    out += format_real(r.t_over_tau);
    out += ',';
    out += format_real(r.energy);
    out += ',';
    out += format_real(r.rel_err);
    out += ',';
    out += format_real(r.gap);
    out += ',';
    out += format_real(r.lambda_now);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << trace_csv(trace);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace lca::model
