#pragma once

#include <cstddef>
#include <functional>

namespace mdn {

// Process-wide worker pool.  parallel_for hands out indices dynamically;
// callers make every index an independent, fixed-order computation, so
// results never depend on the thread count.  Operation counts gathered by
// workers are folded into the calling thread's tally before returning.
void set_thread_count(std::size_t n);
std::size_t thread_count();
// MDNEWTON_THREADS if set to a positive integer, else 1.
std::size_t default_thread_count();

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

}  // namespace mdn
