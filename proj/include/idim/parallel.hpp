#pragma once

#include <cstddef>
#include <functional>

namespace idim {

/// Worker count: hardware concurrency, capped by INTRINSIC_DIM_THREADS when set.
std::size_t worker_count();

/// Calls body(i) for every i in [0, n) on up to worker_count() threads.
/// Callers write results into pre-sized slots so output never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace idim
