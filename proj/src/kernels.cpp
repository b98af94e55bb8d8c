#include "lca/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>

namespace lca::kernels {

void matvec_serial(std::span<const double> a, std::size_t rows, std::size_t cols,
                   std::span<const double> x, std::span<double> y) {
  assert(a.size() == rows * cols && x.size() == cols && y.size() == rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  assert(a.size() == rows * cols && x.size() == cols && y.size() == rows);
  const std::int64_t m = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
}

void matvec_t_serial(std::span<const double> a, std::size_t rows, std::size_t cols,
                     std::span<const double> x, std::span<double> y) {
  assert(a.size() == rows * cols && x.size() == rows && y.size() == cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows; ++i) acc += a[i * cols + j] * x[i];
    y[j] = acc;
  }
}

void matvec_t(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y) {
  assert(a.size() == rows * cols && x.size() == rows && y.size() == cols);
  const std::int64_t n = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows; ++i) acc += a[i * cols + static_cast<std::size_t>(j)] * x[i];
    y[static_cast<std::size_t>(j)] = acc;
  }
}

namespace {

// Column inner products for one row i of the Gram matrix; j runs over i..cols-1.
inline void gram_row(std::span<const double> a, std::size_t rows, std::size_t cols,
                     std::size_t i, double* g) {
  for (std::size_t j = i; j < cols; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rows; ++k) acc += a[k * cols + i] * a[k * cols + j];
    g[i * cols + j] = (i == j) ? acc - 1.0 : acc;
  }
}

}  // namespace

std::vector<double> gram_minus_identity_serial(std::span<const double> a,
                                               std::size_t rows, std::size_t cols) {
  assert(a.size() == rows * cols);
  std::vector<double> g(cols * cols, 0.0);
  for (std::size_t i = 0; i < cols; ++i) gram_row(a, rows, cols, i, g.data());
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = i + 1; j < cols; ++j) g[j * cols + i] = g[i * cols + j];
  return g;
}

std::vector<double> gram_minus_identity(std::span<const double> a,
                                        std::size_t rows, std::size_t cols) {
  assert(a.size() == rows * cols);
  std::vector<double> g(cols * cols, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) gram_row(a, rows, cols, static_cast<std::size_t>(i), g.data());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < cols; ++j)
      g[j * cols + static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i) * cols + j];
  return g;
}

double spectral_norm_sq(std::span<const double> a, std::size_t rows, std::size_t cols,
                        std::size_t max_iters, double tol) {
  std::vector<double> v(cols, 1.0), av(rows), w(cols);
  double lambda = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    matvec(a, rows, cols, v, av);
    matvec_t(a, rows, cols, av, w);
    const double vv = norm_sq(v);
    if (vv == 0.0) return 0.0;
    const double next = dot(v, w) / vv;
    const double wn = norm(w);
    if (wn == 0.0) return 0.0;
    for (std::size_t j = 0; j < cols; ++j) v[j] = w[j] / wn;
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) return next;
    lambda = next;
  }
  return lambda;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm_sq(std::span<const double> x) { return dot(x, x); }

double norm(std::span<const double> x) { return std::sqrt(norm_sq(x)); }

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace lca::kernels
