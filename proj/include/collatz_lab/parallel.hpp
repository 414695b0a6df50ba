#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace collatz_lab {

/// Splits [lo, hi] into fixed-size chunks, runs `work(chunk_lo, chunk_hi)` on
/// up to `threads` workers, and returns the per-chunk results in chunk order.
/// Chunk boundaries depend only on the range, so a caller that folds the
/// results left to right gets the same answer for every worker count.
template <class Result, class Work>
std::vector<Result> map_chunks(std::uint64_t lo, std::uint64_t hi, unsigned threads,
                               Work&& work, std::uint64_t chunk = 1024) {
  if (hi < lo) return {};
  const std::uint64_t span = hi - lo;
  const std::size_t chunks = static_cast<std::size_t>(span / chunk + 1);
  std::vector<Result> results(chunks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= chunks) return;
      const std::uint64_t first = lo + i * chunk;
      const std::uint64_t last = std::min(hi, first + (chunk - 1));
      try {
        results[i] = work(first, last);
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace collatz_lab
