#pragma once

#include <cstddef>
#include <functional>

namespace sec {

// SEC_WORKERS environment override if set and >= 1, else hardware concurrency.
int default_workers();

// Runs fn(i) for every i in [0, n).  Workers claim indices from a shared
// atomic counter; callers write results into slot i of a pre-sized buffer, so
// assembled output is identical for any worker count.  The first exception
// thrown by a task is rethrown here after all workers stop.
void run_tasks(size_t n, int workers, const std::function<void(size_t)>& fn);

}  // namespace sec
