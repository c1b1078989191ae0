#pragma once

#include <cstddef>
#include <functional>

namespace mgk {

/// Worker count: MGK_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Each index writes only its own outputs, so the
// result does not depend on scheduling. Calls made from inside a worker run
// serially. If any call throws, the exception from the lowest index is
// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mgk
