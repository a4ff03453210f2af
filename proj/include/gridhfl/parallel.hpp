#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gridhfl {

/// Worker count used when a caller passes 0.
inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(begin, end, chunk) over contiguous chunks of [0, count). Chunk k
/// always covers the same range for a given (count, jobs), so callers that
/// concatenate per-chunk results in chunk order get deterministic output.
template <class Body>
void parallel_chunks(std::size_t count, unsigned jobs, Body&& body) {
  if (jobs == 0) jobs = default_jobs();
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  if (chunks == 1) {
    body(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t k = 0; k < chunks; ++k) {
    const std::size_t begin = count * k / chunks, end = count * (k + 1) / chunks;
    workers.emplace_back([&body, begin, end, k] { body(begin, end, k); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace gridhfl
