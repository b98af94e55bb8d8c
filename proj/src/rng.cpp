#include "lca/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lca::synth {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t cell_row, std::uint64_t cell_col) {
  if (trial >= (1ull << 24) || cell_row >= (1ull << 20) || cell_col >= (1ull << 20))
    throw std::invalid_argument("derive_stream: trial/cell index out of packing range");
  const std::uint64_t packed = (trial << 40) | (cell_row << 20) | cell_col;
  // packed -> stream_id is a composition of bijections, so distinct
  // (trial, cell) always yield distinct stream ids for a fixed seed.
  return RngStream{seed, mix64(packed * kGolden + 1u) ^ mix64(seed + kGolden)};
}

Rng::Rng(RngStream stream) : state_(mix64(stream.seed) ^ mix64(stream.stream_id + kGolden)) {}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  const std::uint64_t span = static_cast<std::uint64_t>(n);
  const std::uint64_t reject_above =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
  std::uint64_t v = next_u64();
  while (v > reject_above) v = next_u64();
  return static_cast<std::size_t>(v % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 1 - uniform() lies in (0, 1], keeping the log argument positive.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace lca::synth
