#pragma once

#include <cstddef>
#include <functional>

namespace ild {

// Worker count actually used for a request; 0 or negative means "all cores".
int resolve_threads(int requested);

// Runs fn(i) for i in [begin, end) on a static block partition. Results must
// be written to disjoint, preallocated slots so the outcome is independent of
// the worker count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t begin, std::size_t end, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace ild
