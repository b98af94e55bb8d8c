#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "lca/kernels.hpp"
#include "lca/rng.hpp"
#include "lca/synth.hpp"

namespace s = lca::synth;

TEST_CASE("dimension rounding is half-up and validated") {
  s::ProblemParams p{100, 0.5, 0.2, 1e-4, 1};
  CHECK(p.m() == 50);
  CHECK(p.s() == 10);
  s::ProblemParams q{10, 0.25, 0.5, 1e-4, 1};
  CHECK(q.m() == 3);  // round(2.5) half-up
  CHECK(q.s() == 2);  // round(1.5) half-up
  CHECK_NOTHROW(q.validate());
  s::ProblemParams bad{100, 0.5, 0.001, 1e-4, 1};  // S rounds to zero
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  s::ProblemParams bad2{100, 0.0, 0.5, 1e-4, 1};
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("generated instances have unit columns and exact support size") {
  const auto pb = s::generate({100, 0.5, 0.2, 1e-4, 7});
  CHECK(pb.m() == 50);
  CHECK(pb.n() == 100);
  for (std::size_t j = 0; j < pb.n(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < pb.m(); ++i) sq += pb.phi(i, j) * pb.phi(i, j);
    CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-12);
  }
  REQUIRE(pb.truth.has_value());
  std::size_t nnz = 0;
  for (double v : *pb.truth)
    if (v != 0.0) ++nnz;
  CHECK(nnz == 10);
  CHECK(pb.lambda > 0.0);
}

TEST_CASE("noise-free single-spike instances reproduce y exactly") {
  std::vector<double> truth;
  const auto pb = s::generate({50, 0.4, 0.05, 0.0, 3}, &truth);
  std::vector<double> yhat(pb.m());
  lca::kernels::matvec(pb.phi.data, pb.m(), pb.n(), truth, yhat);
  for (std::size_t i = 0; i < pb.m(); ++i) CHECK(yhat[i] == pb.y[i]);
}

TEST_CASE("generation is bitwise deterministic") {
  const auto a = s::generate({64, 0.5, 0.25, 1e-4, 1234});
  const auto b = s::generate({64, 0.5, 0.25, 1e-4, 1234});
  CHECK(a.phi.data == b.phi.data);
  CHECK(a.y == b.y);
  CHECK(*a.truth == *b.truth);
  CHECK(a.lambda == b.lambda);
  const auto other = s::generate({64, 0.5, 0.25, 1e-4, 1235});
  CHECK(a.y != other.y);
}

TEST_CASE("derive_stream is stable and collision free") {
  const auto s1 = s::derive_stream(42, 0, 0, 0);
  const auto s2 = s::derive_stream(42, 0, 0, 0);
  CHECK(s1.stream_id == s2.stream_id);
  CHECK(s::derive_stream(42, 1, 0, 0).stream_id != s1.stream_id);
  CHECK(s::derive_stream(42, 0, 1, 0).stream_id != s1.stream_id);
  CHECK(s::derive_stream(42, 0, 0, 1).stream_id != s1.stream_id);

  std::set<std::uint64_t> seen;
  for (std::uint64_t trial = 0; trial < 100; ++trial)
    for (std::uint64_t row = 0; row < 10; ++row)
      for (std::uint64_t col = 0; col < 10; ++col)
        seen.insert(s::derive_stream(7, trial, row, col).stream_id);
  CHECK(seen.size() == 10000);
  CHECK_THROWS_AS(s::derive_stream(1, 1ull << 24, 0, 0), std::invalid_argument);
}

TEST_CASE("column coherence stays away from degeneracy") {
  const auto pb = s::generate({200, 0.5, 0.2, 1e-4, 11});
  const auto g = lca::kernels::gram_minus_identity(pb.phi.data, pb.m(), pb.n());
  double max_off = 0.0;
  for (std::size_t i = 0; i < pb.n(); ++i)
    for (std::size_t j = 0; j < pb.n(); ++j)
      if (i != j) max_off = std::max(max_off, std::abs(g[i * pb.n() + j]));
  CHECK(max_off < 0.6);
  CHECK(max_off > 0.0);
}

TEST_CASE("normal sampler statistics") {
  lca::synth::Rng rng(2024, 13);
  const std::size_t n = 100000;
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);  // within 5 percent
}

TEST_CASE("uniform_below is in range and unbiased enough") {
  lca::synth::Rng rng(5, 5);
  std::vector<std::size_t> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const std::size_t v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (std::size_t c : counts) CHECK(std::abs(static_cast<double>(c) - 10000.0) < 500.0);
}
