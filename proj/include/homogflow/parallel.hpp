#pragma once

#include <cstddef>
#include <functional>

namespace homogflow {

/// Worker cap: HOMOGFLOW_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs task(0) ... task(count - 1) on up to worker_count() threads. The first
/// exception thrown by a task (lowest index) is rethrown after all finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace homogflow
