#ifndef HZLAB_PARALLEL_HPP
#define HZLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hzlab {

/// Worker cap for parallel_for. 0 means hardware concurrency.
void set_thread_count(int threads);
int thread_count();

/// Runs fn over disjoint [begin, end) chunks of [0, n). Results must be
/// written to disjoint locations; chunking is static so runs are
/// reproducible for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace hzlab

#endif
