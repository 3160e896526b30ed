#ifndef SQUEEZE_PARALLEL_HPP
#define SQUEEZE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace squeeze {

/// thread budget: min(hardware_concurrency, SQUEEZE_THREADS if set); >= 1
int thread_budget();

// Chunked parallel loop over [0, n).  The body must be a pure function of the
// index writing only to its own slot, so results are identical for any thread
// count; reductions stay with the caller, which runs them in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace squeeze

#endif
