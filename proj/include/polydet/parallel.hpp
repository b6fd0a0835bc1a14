#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polydet {

/// Splits an index range into fixed chunks and runs them on a small pool of
/// threads. Chunk boundaries depend only on (count, chunk), so any work that
/// writes results by index is independent of the worker count.
class Scheduler {
 public:
  explicit Scheduler(unsigned threads = 1, std::size_t chunk = 0)
      : threads_(threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads), chunk_(chunk) {}

  unsigned threads() const { return threads_; }
  std::size_t chunk() const { return chunk_; }

  /// Calls fn(begin, end) over [0, count). The first exception (lowest chunk
  /// index) is rethrown after all workers stop.
  template <typename Fn>
  void for_chunks(std::size_t count, Fn&& fn) const {
    if (count == 0) return;
    const std::size_t chunk = chunk_ != 0 ? chunk_ : std::max<std::size_t>(1, count / (4 * threads_) + 1);
    const std::size_t nchunks = (count + chunk - 1) / chunk;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads_, nchunks));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::size_t error_chunk = nchunks;
    std::exception_ptr error;

    auto body = [&] {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::size_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        try {
          fn(c * chunk, std::min(count, (c + 1) * chunk));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (c < error_chunk) {
            error_chunk = c;
            error = std::current_exception();
          }
          failed = true;
        }
      }
    };

    if (workers <= 1) {
      body();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers - 1);
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
      body();
    }
    if (error) std::rethrow_exception(error);
  }

  template <typename Fn>
  void for_each(std::size_t count, Fn&& fn) const {
    for_chunks(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }

 private:
  unsigned threads_;
  std::size_t chunk_;
};

}  // namespace polydet
