#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "odo/errors.hpp"
#include "odo/mpoly.hpp"
#include "odo/ratfunc.hpp"
#include "odo/rational.hpp"

namespace odo {

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Field operations used by the generic elimination routines.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational inverse(const Rational& x) { return 1 / x; }
    static void normalize(Rational&) {}
    static std::size_t cost(const Rational& x) { return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2); }
};

template <>
struct FieldOps<RatFunc> {
    static bool is_zero(const RatFunc& x) { return x.is_zero(); }
    static RatFunc inverse(const RatFunc& x) { return x.inverse(); }
    static void normalize(RatFunc& x) { x.reduce(); }
    static std::size_t cost(const RatFunc& x) { return x.num().size() * 4 + x.den().size(); }
};

/// Reduced row echelon form; `pivots[r]` is the pivot column of row r.
template <class K>
struct Echelon {
    Matrix<K> rows;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination of the first `cols` columns (extra columns are
/// carried along).  Pivots are chosen by smallest cost among candidate rows.
template <class K>
Echelon<K> rref(Matrix<K> m, std::size_t cols) {
    using Ops = FieldOps<K>;
    Echelon<K> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::optional<std::size_t> best;
        for (std::size_t i = r; i < m.size(); ++i) {
            if (Ops::is_zero(m[i][c])) continue;
            if (!best || Ops::cost(m[i][c]) < Ops::cost(m[*best][c])) best = i;
        }
        if (!best) continue;
        std::swap(m[r], m[*best]);
        K inv = Ops::inverse(m[r][c]);
        for (std::size_t j = c; j < m[r].size(); ++j) {
            if (Ops::is_zero(m[r][j])) continue;
            m[r][j] *= inv;
            Ops::normalize(m[r][j]);
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || Ops::is_zero(m[i][c])) continue;
            K factor = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j) {
                if (Ops::is_zero(m[r][j])) continue;
                m[i][j] -= factor * m[r][j];
                Ops::normalize(m[i][j]);
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

/// Solution set of A x = b: empty, or particular + span(kernel).
template <class K>
struct LinearSolution {
    bool consistent = false;
    std::vector<K> particular;
    std::vector<std::vector<K>> kernel;

    bool unique() const { return consistent && kernel.empty(); }
};

template <class K>
std::vector<std::vector<K>> kernel_from_echelon(const Echelon<K>& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(cols, K(0));
        v[free] = K(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// A has `cols` columns; b has A.size() entries.
template <class K>
LinearSolution<K> solve(const Matrix<K>& a, const std::vector<K>& b, std::size_t cols) {
    if (a.size() != b.size()) throw ContractError("right-hand side length does not match the matrix");
    Matrix<K> aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != cols) throw ContractError("ragged matrix");
        std::vector<K> row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Echelon<K> e = rref(std::move(aug), cols + 1);
    LinearSolution<K> s;
    if (!e.pivots.empty() && e.pivots.back() == cols) return s;
    s.consistent = true;
    s.particular.assign(cols, K(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.rows[r][cols];
    s.kernel = kernel_from_echelon(e, cols);
    return s;
}

template <class K>
std::vector<std::vector<K>> kernel(const Matrix<K>& a, std::size_t cols) {
    return kernel_from_echelon(rref(a, cols), cols);
}

template <class K>
std::size_t rank(const Matrix<K>& a, std::size_t cols) {
    return rref(a, cols).pivots.size();
}

/// Determinant over Q[Theta] by fraction-free (Bareiss) elimination.
MPoly bareiss_det(Matrix<MPoly> m);

}  // namespace odo
