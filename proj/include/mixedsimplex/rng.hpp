#pragma once

// Counter-based random numbers (Philox-4x32-10). A stream is identified by
// (seed, stream id); draws advance a 64-bit block counter. Substreams give
// independent, reproducible chunks for parallel Monte Carlo.

#include <array>
#include <cstdint>
#include <limits>

namespace mixedsimplex {

class RngState {
 public:
  using result_type = std::uint32_t;

  explicit RngState(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Independent generator for chunk `id` of this stream.
  RngState substream(std::uint64_t id) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  unsigned used_ = 4;
};

}  // namespace mixedsimplex
