#pragma once

#include <cstdint>
#include <cstddef>

namespace lca::synth {

// Counter-based pseudo-random streams.  A stream is fully determined by
// (seed, stream_id); the generator is the splitmix64 sequence, which is a
// bijective 64-bit mixer over an additive counter, so streams are cheap to
// derive and reproducible across platforms.  Normal variates use the
// trigonometric Box-Muller transform (the sampling method is recorded in
// experiment metadata as "box-muller").

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

// Injective map from (seed, trial, cell) to a stream.  trial must be below
// 2^24 and row/col below 2^20 so the packed index is unique; the mapping is
// fixed and must not change between releases, since recorded experiment
// outputs depend on it.
RngStream derive_stream(std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t cell_row, std::uint64_t cell_col);

class Rng {
 public:
  explicit Rng(RngStream stream);
  Rng(std::uint64_t seed, std::uint64_t stream_id) : Rng(RngStream{seed, stream_id}) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  // Uniform on {0, ..., n-1}, unbiased (rejection sampling).
  std::size_t uniform_below(std::size_t n);
  // Standard normal via Box-Muller; pairs are generated together and the
  // second variate is cached inside the stream.
  double normal();

 private:
  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lca::synth
