#pragma once

#include <functional>

namespace mgoe {

// Runs fn(0..count-1) on up to `threads` workers pulling indices from a
// shared atomic counter. Each index writes only its own output slot, so
// results do not depend on the worker count. The first exception thrown by
// any worker is rethrown on the calling thread after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

} // namespace mgoe
