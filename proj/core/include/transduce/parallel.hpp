#pragma once

#include <cstddef>
#include <functional>

namespace transduce {

/// Thread count from TRANSDUCE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
int default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers, each owning one
/// contiguous chunk. threads <= 0 selects default_thread_count(). The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace transduce
