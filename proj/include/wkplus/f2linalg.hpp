#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wkplus {

// Dense GF(2) rows as bitmasks, low bit = column 0.
inline int f2_rank(std::vector<uint64_t> rows) {
    int rank = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        uint64_t r = rows[i];
        if (r == 0) continue;
        int pivot = std::countr_zero(r);
        ++rank;
        for (size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j] >> pivot & 1) rows[j] ^= r;
    }
    return rank;
}

// Basis of {c : sum over i in c of row_i = 0}, returned as bitmasks over row
// indices. Rows are augmented with identity tags and eliminated.
inline std::vector<uint64_t> f2_left_kernel(const std::vector<uint64_t>& rows, int ncols) {
    const size_t n = rows.size();
    if (ncols + n > 64) throw std::invalid_argument("f2_left_kernel: too many rows + columns");
    std::vector<uint64_t> work(n);
    for (size_t i = 0; i < n; ++i) work[i] = rows[i] | (1ull << (ncols + i));
    const uint64_t matrix_mask = ncols == 0 ? 0 : ((1ull << ncols) - 1);
    size_t done = 0;
    for (int col = 0; col < ncols; ++col) {
        size_t pivot = n;
        for (size_t i = done; i < n; ++i)
            if (work[i] >> col & 1) {
                pivot = i;
                break;
            }
        if (pivot == n) continue;
        std::swap(work[done], work[pivot]);
        for (size_t i = 0; i < n; ++i)
            if (i != done && (work[i] >> col & 1)) work[i] ^= work[done];
        ++done;
    }
    std::vector<uint64_t> kernel;
    for (size_t i = 0; i < n; ++i)
        if ((work[i] & matrix_mask) == 0) kernel.push_back(work[i] >> ncols);
    return kernel;
}

}  // namespace wkplus
