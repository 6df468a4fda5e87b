#pragma once

#include <cstddef>
#include <functional>

namespace logbesov {

// Worker count used by the internal loops. Initialized from LOGBESOV_THREADS
// on first use; set_threads overrides it (0 restores the environment value).
int thread_count();
void set_threads(int n);

// Runs body(begin, end) over a static partition of [0, n). Partitions are
// contiguous and assigned by index, so any per-chunk partial results can be
// combined in a fixed order by the caller.
// Ranges shorter than min_grain run inline on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_grain = 4096);

}  // namespace logbesov
