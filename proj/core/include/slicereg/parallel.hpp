#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace slicereg {

/// Runs fn(block) for block in [0, n_blocks) on up to `threads` workers. The
/// block decomposition is fixed by the caller, so each block writes its own
/// result slot and reductions over blocks in index order are identical for
/// every thread count.
inline void parallel_blocks(std::size_t n_blocks, int threads,
                            const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b);
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n_blocks);
  std::vector<std::jthread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
}

}  // namespace slicereg
