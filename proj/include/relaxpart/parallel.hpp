#ifndef RELAXPART_PARALLEL_HPP
#define RELAXPART_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace relaxpart {

/// Thread cap from RELAXPART_THREADS (0 or unset = hardware concurrency).
inline std::size_t threads_from_environment() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("RELAXPART_THREADS")) {
    try {
      requested = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// handled by exactly one chunk, so per-index results do not depend on the
/// thread count.
template <typename Body>
void parallel_chunks(std::size_t n, std::size_t threads, std::size_t min_chunk, Body&& body) {
  const std::size_t chunks = std::min(threads, std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
  if (chunks <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(chunks - 1);
  const std::size_t step = (n + chunks - 1) / chunks;
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t begin = std::min(n, c * step);
    const std::size_t end = std::min(n, begin + step);
    workers.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(std::size_t{0}, std::min(n, step));
}

}  // namespace relaxpart

#endif  // RELAXPART_PARALLEL_HPP
