#pragma once

#include <cstddef>
#include <functional>

namespace mfs {

/// Worker threads used by parallel_for: $MFS_THREADS when set, otherwise
/// the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on worker_count() threads. Each index runs
/// exactly once; callers write to slot i of a preallocated buffer and reduce
/// in index order afterwards, so results do not depend on the schedule.
/// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mfs
