#pragma once

#include <cstddef>
#include <functional>

namespace symrig {

/// Worker count: SYMRIG_NUM_THREADS if set and positive, else the hardware concurrency.
int thread_count();

/// Runs body(0..n-1) across worker threads. Each index is visited exactly once; the first
/// exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symrig
