#pragma once

#include <cstddef>
#include <functional>

namespace relsym {

// Worker count from RELSYM_THREADS (default: hardware concurrency, at least 1).
unsigned thread_count();

// Calls body(begin, end) on contiguous chunks of [0, n). Chunks are disjoint,
// so bodies that write only to their own range give results independent of
// the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace relsym
