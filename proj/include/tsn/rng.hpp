#pragma once

#include <cstdint>
#include <random>

#include "tsn/normal.hpp"

namespace tsn {

/// Identifies one reproducible random substream. Distinct (base_seed,
/// stream_index) pairs give independent sequences; identical pairs give
/// bit-identical ones, regardless of which thread consumes them.
struct RngStream {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  /// Stream for the same base with a shifted index.
  RngStream substream(std::uint64_t offset) const {
    return {base_seed, stream_index + offset};
  }
};

/// Per-stream generator. Uniforms come straight off the engine bits and
/// normal variates through the inverse CDF, so sequences do not depend on
/// library-specific distribution internals.
class Rng {
 public:
  explicit Rng(RngStream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(stream.base_seed),
                      static_cast<std::uint32_t>(stream.base_seed >> 32),
                      static_cast<std::uint32_t>(stream.stream_index),
                      static_cast<std::uint32_t>(stream.stream_index >> 32)};
    engine_.seed(seq);
  }

  /// Uniform draw strictly inside (0,1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return std_normal_quantile(uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsn
