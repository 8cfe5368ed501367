#ifndef SMALELAB_PARALLEL_HPP_
#define SMALELAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace smalelab {

/// Runs fn(0) ... fn(count - 1) on up to `jobs` threads. Each index is run
/// exactly once; callers write results into per-index slots so the merged
/// outcome does not depend on scheduling. The first exception thrown by any
/// task is rethrown after all workers have joined.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace smalelab

#endif  // SMALELAB_PARALLEL_HPP_
