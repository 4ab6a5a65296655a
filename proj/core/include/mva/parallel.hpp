#ifndef MVA_PARALLEL_HPP
#define MVA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mva {

// Runs fn(i) for every i in [0, n). Indices are partitioned into contiguous
// chunks across worker threads; each index is computed exactly as in a
// sequential loop, so results are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// 0 restores the hardware default. Applies process-wide.
void set_max_threads(unsigned n);
unsigned max_threads();

} // namespace mva

#endif
