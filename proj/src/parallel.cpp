#include "apsp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace apsp {

unsigned worker_threads() {
  static const unsigned cached = [] {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("APSP_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
  }();
  return cached;
}

namespace detail {

void parallel_for_impl(std::size_t begin, std::size_t end,
                       void (*body)(std::size_t, void*), void* ctx) {
  if (begin >= end) return;
  const std::size_t count = end - begin;
  const unsigned threads = worker_threads();
  if (threads <= 1 || count < 2) {
    for (std::size_t i = begin; i < end; ++i) body(i, ctx);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= end || failed.load(std::memory_order_relaxed)) break;
      try {
        body(i, ctx);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn =
      static_cast<unsigned>(std::min<std::size_t>(threads - 1, count - 1));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace apsp
