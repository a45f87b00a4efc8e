#pragma once

#include <cstddef>
#include <functional>

namespace dpde {

/// Global worker cap: DPDE_THREADS environment variable if set and positive,
/// otherwise hardware concurrency. Always >= 1.
unsigned max_threads();
void set_max_threads(unsigned n);

/// Runs chunk(begin, end) over a static partition of [0, n) on `threads`
/// threads (the calling thread included). threads <= 1 runs inline.
/// Callers must only touch disjoint state per index, which keeps results
/// independent of the schedule.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& chunk);

} // namespace dpde
