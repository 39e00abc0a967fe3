#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hierperc::detail {

inline unsigned resolve_threads(unsigned requested, std::uint64_t work) {
  unsigned threads = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(work, 1));
  return threads;
}

// Results land at their replicate index, so the output is identical for any
// thread count. The first exception thrown by a worker is rethrown.
template <class Result, class Fn>
std::vector<Result> run_replicates(std::uint64_t count, unsigned threads, Fn fn) {
  std::vector<Result> out(count);
  const unsigned workers = resolve_threads(threads, count);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace hierperc::detail
