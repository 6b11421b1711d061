#pragma once

#include <cstddef>
#include <functional>

namespace omegak {

/// Process-wide cap on worker threads. 0 restores the default
/// (OMEGAK_THREADS, else hardware concurrency).
void set_worker_cap(int cap);
int worker_count();

/// Runs body(i) for every i in [0, count) on up to worker_count() threads.
/// Callers write results into slot i, so the outcome never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace omegak
