#ifndef XORCOMM_PARALLEL_HPP
#define XORCOMM_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace xorcomm {

/// Worker count: XORCOMM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("XORCOMM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

/// Splits [0, total) into contiguous blocks and runs fn(begin, end, block)
/// on up to `workers` threads. Block boundaries depend only on `total` and
/// `workers`. The first exception thrown by any block is rethrown.
template <class Fn>
void parallel_blocks(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
  if (workers == 1) {
    fn(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  threads.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace xorcomm

#endif  // XORCOMM_PARALLEL_HPP
