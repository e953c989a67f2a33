#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace qjl {

/// Parallel map over [0, count) writing into caller-owned slots; the work split
/// depends on the thread count but each item's result does not, so downstream
/// fixed-tree reductions stay thread-count independent.
void parallel_for(long count, const std::function<void(long)>& fn, int threads = 0);

/// Deterministic pairwise summation (fixed reduction tree independent of thread count).
double pairwise_sum(const std::vector<double>& v);

/// Adjustable global default used when ops are called with threads = 0.
void set_default_threads(int t);
int default_threads();

}  // namespace qjl
