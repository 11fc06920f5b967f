#pragma once

#include <cstddef>
#include <functional>

namespace zmc {

// Worker count: hardware concurrency, capped by ZMC_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n) on worker_count() threads. Each index is
// handled exactly once; callers write results into preallocated slots so the
// output order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zmc
