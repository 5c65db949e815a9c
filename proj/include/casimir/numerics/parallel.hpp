#pragma once

#include <cstddef>
#include <functional>

namespace casimir::numerics {

/// Number of worker threads the library may use. Reads CASIMIR_THREADS once;
/// falls back to the hardware concurrency.
unsigned worker_threads();

/// Override the worker count (0 restores the environment/hardware default).
void set_worker_threads(unsigned n);

/// Calls body(i) for i in [0, n). Work may be spread over worker threads;
/// callers write results into slot i so the outcome does not depend on
/// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace casimir::numerics
