#pragma once

#include <cstddef>
#include <functional>

namespace almsq {

// Worker count used by data-parallel loops: ALMSQ_THREADS if set and positive,
// otherwise std::thread::hardware_concurrency(), at least 1.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads (0 = worker_count()).
// Work items are claimed dynamically; callers write results into slot i so the
// merged output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace almsq
