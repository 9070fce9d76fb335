#pragma once

#include <cstddef>
#include <cstdint>

namespace apsp {

// Number of worker threads to use. Reads APSP_THREADS once (0 or unset =
// hardware concurrency), clamped to at least 1.
unsigned worker_threads();

namespace detail {
void parallel_for_impl(std::size_t begin, std::size_t end,
                       void (*body)(std::size_t, void*), void* ctx);
}

// Runs body(i) for i in [begin, end). Iterations must be independent; writes
// from distinct iterations must not alias. Falls back to a serial loop when
// only one thread is available or the range is small.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, F&& body) {
  auto thunk = [](std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
  detail::parallel_for_impl(begin, end, thunk, &body);
}

}  // namespace apsp
