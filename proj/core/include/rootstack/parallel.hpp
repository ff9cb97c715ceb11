#pragma once

#include <cstddef>
#include <functional>

namespace rootstack {

// Worker count: ROOTSTACK_GW_THREADS when set to a positive integer,
// otherwise the hardware concurrency (at least 1).
std::size_t worker_threads();

// Runs body(i) for i in [0, count) on up to worker_threads() threads.
// Exceptions from any index are rethrown (the lowest index wins) after all
// workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rootstack
