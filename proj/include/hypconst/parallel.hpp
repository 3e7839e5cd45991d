#pragma once

#include <cstdint>
#include <functional>

namespace hypconst {

// Worker count: HYPCONST_THREADS when set (clamped to >= 1), otherwise the
// hardware concurrency.
int thread_budget();

// Max-reduction over [0, n) split into contiguous blocks, one per worker.
// chunk_max(begin, end) returns the maximum over its block. The reduction
// is associative and commutative, so the result does not depend on the
// partitioning.
double parallel_max(std::int64_t n, double init,
                    const std::function<double(std::int64_t, std::int64_t)>&
                        chunk_max);

// Same splitting for side-effect loops writing to disjoint slots.
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace hypconst
