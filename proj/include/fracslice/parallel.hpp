#pragma once

#include <cstddef>
#include <functional>

namespace fracslice {

/// Worker count: hardware concurrency, capped by FRACSLICE_THREADS when set.
unsigned thread_count();

/// Runs fn(0..n-1) on up to thread_count() threads with static chunking.
/// Callers write results by index, so output never depends on scheduling.
/// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fracslice
