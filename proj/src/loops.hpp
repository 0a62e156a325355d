#pragma once

// Internal loop helpers shared by the parallel kernels.

#include "mgfas/grid.hpp"
#include "mgfas/parallel.hpp"

#include <vector>

namespace mgfas::detail {

/// Calls body(j, k) for every active (j, k) row of `f`, in parallel.
template <class Body>
void parallel_rows(const Field& f, Body&& body) {
    const int j0 = f.active_begin(1), j1 = f.active_end(1);
    const int k0 = f.active_begin(2), k1 = f.active_end(2);
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = k0; k < k1; ++k)
        for (int j = j0; j < j1; ++j)
            body(j, k);
}

/// Deterministic reduction: row_sum(j, k) is evaluated per active row (in
/// parallel), then rows are combined pairwise in row order.
template <class RowSum>
double reduce_rows(const Field& f, RowSum&& row_sum) {
    const int j0 = f.active_begin(1), j1 = f.active_end(1);
    const int k0 = f.active_begin(2), k1 = f.active_end(2);
    const int nj = j1 - j0;
    std::vector<double> parts(static_cast<std::size_t>(nj) * static_cast<std::size_t>(k1 - k0));
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = k0; k < k1; ++k)
        for (int j = j0; j < j1; ++j)
            parts[static_cast<std::size_t>(k - k0) * nj + (j - j0)] = row_sum(j, k);
    return pairwise_sum(parts);
}

} // namespace mgfas::detail
