// Kernel benchmark: serial reference vs OpenMP variants across problem
// sizes, plus the end-to-end solver step cost.  Timing only; the bitwise
// equality of the two paths is asserted in tests/test_kernels.cpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "lca/kernels.hpp"
#include "lca/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace k = lca::kernels;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
  fn();  // warmup
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%-22s %10s %12s %12s %8s\n", "kernel", "size", "serial[us]", "parallel[us]",
              "speedup");

  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{100, 200},
                      {200, 400},
                      {400, 800},
                      {1000, 2000}}) {
    lca::synth::Rng rng(1, 1);
    std::vector<double> a(m * n);
    for (double& v : a) v = rng.normal();
    std::vector<double> x(n), y(m), xt(n);
    for (double& v : x) v = rng.normal();
    for (double& v : y) v = rng.normal();

    const int reps = m >= 1000 ? 20 : 200;
    const double mv_s = time_of([&] { k::matvec_serial(a, m, n, x, y); }, reps);
    const double mv_p = time_of([&] { k::matvec(a, m, n, x, y); }, reps);
    std::printf("%-22s %4zux%-5zu %12.2f %12.2f %7.2fx\n", "matvec", m, n, mv_s * 1e6,
                mv_p * 1e6, mv_s / mv_p);

    const double mvt_s = time_of([&] { k::matvec_t_serial(a, m, n, y, xt); }, reps);
    const double mvt_p = time_of([&] { k::matvec_t(a, m, n, y, xt); }, reps);
    std::printf("%-22s %4zux%-5zu %12.2f %12.2f %7.2fx\n", "matvec_t", m, n, mvt_s * 1e6,
                mvt_p * 1e6, mvt_s / mvt_p);

    const int gram_reps = m >= 1000 ? 1 : 5;
    const double g_s = time_of([&] { (void)k::gram_minus_identity_serial(a, m, n); }, gram_reps);
    const double g_p = time_of([&] { (void)k::gram_minus_identity(a, m, n); }, gram_reps);
    std::printf("%-22s %4zux%-5zu %12.2f %12.2f %7.2fx\n", "gram_minus_identity", m, n, g_s * 1e6,
                g_p * 1e6, g_s / g_p);
  }
  return 0;
}
