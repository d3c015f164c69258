#include "marsem/linalg.hpp"

namespace marsem {

std::size_t rational_rank(RatMatrix rows) {
    if (rows.empty()) return 0;
    const std::size_t m = rows.size();
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rat p = rows[rank][col];
        for (std::size_t i = rank + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            const Rat f = rows[i][col] / p;
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace marsem
