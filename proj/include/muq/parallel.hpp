#ifndef MUQ_PARALLEL_HPP
#define MUQ_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace muq {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items
// must be independent; results must not depend on the schedule.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

} // namespace muq

#endif
