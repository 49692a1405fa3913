#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace localmass {

/// 0 selects std::thread::hardware_concurrency().
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for every i in [0, count), spread over `threads` workers.
/// body must only write to per-index state. If any call throws, the exception
/// of the lowest failing index is rethrown once all workers have stopped, so
/// the reported failure does not depend on scheduling.
template <typename Body>
void for_each_replica(std::uint64_t count, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::uint64_t error_index = count;
  std::atomic<std::uint64_t> stop_after{count};

  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count || i > stop_after.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
          stop_after.store(i, std::memory_order_relaxed);
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace localmass
