#include "odo/linalg.hpp"

namespace odo {

MPoly bareiss_det(Matrix<MPoly> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw ContractError("determinant of a non-square matrix");
    if (n == 0) return MPoly(1);
    MPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MPoly();
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = t.divide_exact(prev);
                if (!q) throw ContractError("fraction-free elimination produced an inexact quotient");
                m[i][j] = std::move(*q);
            }
            m[i][k] = MPoly();
        }
        prev = m[k][k];
    }
    MPoly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

}  // namespace odo
