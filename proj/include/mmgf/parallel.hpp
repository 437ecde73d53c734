#pragma once

#include <cstddef>
#include <functional>

namespace mmgf {

// Process-wide worker count for all kernels (also applied to Eigen's
// internal parallelization). 0 restores the hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(begin, end) over a disjoint cover of [0, n). Each index is
// handled by exactly one worker, so any per-index reduction keeps its
// sequential summation order regardless of the worker count. Nested
// calls run inline on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mmgf
