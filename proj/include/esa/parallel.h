#ifndef ESA_PARALLEL_H_
#define ESA_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace esa {

// Number of chunks ParallelChunks splits `n` items into for `threads` workers.
inline size_t ChunkCount(size_t n, int threads) {
  size_t workers = threads < 1 ? 1 : static_cast<size_t>(threads);
  return std::max<size_t>(1, std::min(n, workers));
}

// Calls fn(chunk, begin, end) for contiguous ranges covering [0, n), one
// range per worker. Chunk boundaries depend only on (n, threads); callers that
// merge per-chunk results in chunk order get schedule-independent output.
// The first exception thrown by a worker is rethrown on the calling thread.
inline void ParallelChunks(
    size_t n, int threads,
    const std::function<void(size_t, size_t, size_t)>& fn) {
  size_t chunks = ChunkCount(n, threads);
  size_t per_chunk = (n + chunks - 1) / chunks;
  if (chunks == 1) {
    fn(0, 0, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (size_t c = 0; c < chunks; ++c) {
    size_t begin = std::min(n, c * per_chunk);
    size_t end = std::min(n, begin + per_chunk);
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

// Calls fn(i) for every i in [0, n).
inline void ParallelFor(size_t n, int threads,
                        const std::function<void(size_t)>& fn) {
  ParallelChunks(n, threads, [&](size_t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace esa

#endif  // ESA_PARALLEL_H_
