#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace frostnet {

// Worker count used by parallel_for. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls fn(b) for every b in [0, n_blocks). Blocks are handed out dynamically,
// so fn must only write to storage owned by its block.
void parallel_for(std::size_t n_blocks, const std::function<void(std::size_t)>& fn);

// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}

// Sums term(i) for i in [0, n). The index range is cut into fixed blocks of
// block_size, each block is summed serially, and the block partials are
// combined with pairwise_sum. The partition does not depend on the thread
// count, so the result is bit-identical for any number of workers.
double blocked_sum(std::size_t n, std::size_t block_size,
                   const std::function<double(std::size_t, std::size_t)>& block_fn);

}  // namespace frostnet
