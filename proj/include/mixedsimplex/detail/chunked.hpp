#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "mixedsimplex/rng.hpp"

namespace mixedsimplex::detail {

inline constexpr std::size_t kChunk = 4096;

/// Generates n values, chunk c drawing from rng.substream(c). The result is
/// independent of how many threads run the chunks.
template <class T, class Fn>
std::vector<T> chunked_generate(std::size_t n, const RngState& rng, Fn&& draw) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<T>> parts(chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      RngState local = rng.substream(c);
      const std::size_t count = std::min(kChunk, n - c * kChunk);
      parts[c].reserve(count);
      for (std::size_t i = 0; i < count; ++i) parts[c].push_back(draw(local));
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(chunks, std::max(1U, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& part : parts)
    for (auto& v : part) out.push_back(std::move(v));
  return out;
}

}  // namespace mixedsimplex::detail
