#pragma once

#include <cstddef>
#include <functional>

namespace schatten {

// Worker count: SCHATTEN_WORKERS if set, otherwise the hardware concurrency.
int default_worker_count();

// Runs job(0) .. job(count - 1) on up to `workers` threads. Jobs must write only to their own
// slot of any shared output, so results never depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job, int workers = 0);

}  // namespace schatten
