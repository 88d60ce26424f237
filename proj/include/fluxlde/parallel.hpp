#pragma once

#include <cstddef>
#include <functional>

namespace fluxlde {

/// Worker count: FLUXLDE_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index is visited exactly
/// once; results must be written to per-index slots so output never depends on scheduling.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fluxlde
