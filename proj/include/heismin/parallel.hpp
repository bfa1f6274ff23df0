#pragma once

#include <cstddef>
#include <functional>

namespace heismin {

/// Worker count: HEISMIN_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads, each taking
/// a contiguous block. Results written by index are deterministic. The
/// exception thrown for the smallest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace heismin
