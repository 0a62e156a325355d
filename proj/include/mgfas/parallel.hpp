#pragma once

#include <vector>

namespace mgfas {

/// Number of OpenMP threads the kernels will use.
int thread_count();
/// Sets the OpenMP thread count for subsequent kernels (n < 1 leaves it unchanged).
void set_thread_count(int n);

/// Pairwise sum of a vector of partial sums. The result depends only on the
/// order of `parts`, never on the number of worker threads.
double pairwise_sum(const std::vector<double>& parts);

} // namespace mgfas
