#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lca::kernels {

// Dense row-major linear-algebra kernels.
//
// Every kernel comes in two flavours: a plain serial reference (suffix
// `_serial`) and an OpenMP variant of the same name without the suffix.
// The parallel variants split work across independent output elements and
// each element is accumulated in index order, exactly as in the serial
// reference, so the results are bitwise identical for any thread count.
// The solvers call the unsuffixed variants; the serial references are kept
// for tests and the kernel benchmark.

// y = A x, A is rows x cols.
void matvec_serial(std::span<const double> a, std::size_t rows, std::size_t cols,
                   std::span<const double> x, std::span<double> y);
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

// y = A^T x, A is rows x cols.
void matvec_t_serial(std::span<const double> a, std::size_t rows, std::size_t cols,
                     std::span<const double> x, std::span<double> y);
void matvec_t(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y);

// G = A^T A - I, cols x cols.  The upper triangle is computed and mirrored,
// so the result is exactly symmetric entry-for-entry.
std::vector<double> gram_minus_identity_serial(std::span<const double> a,
                                               std::size_t rows, std::size_t cols);
std::vector<double> gram_minus_identity(std::span<const double> a,
                                        std::size_t rows, std::size_t cols);

// Largest eigenvalue of A^T A (the squared spectral norm of A), by power
// iteration started from the all-ones vector.  Deterministic.
double spectral_norm_sq(std::span<const double> a, std::size_t rows, std::size_t cols,
                        std::size_t max_iters = 200, double tol = 1e-10);

double dot(std::span<const double> x, std::span<const double> y);
double norm_sq(std::span<const double> x);
double norm(std::span<const double> x);
double max_abs(std::span<const double> x);

}  // namespace lca::kernels
