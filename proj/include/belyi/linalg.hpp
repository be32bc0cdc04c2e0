#pragma once

// Dense matrices of ring elements: Bareiss fraction-free determinants,
// exact nullspaces over fields, and a numeric rank/nullspace for complex
// matrices.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/multipoly.hpp"
#include "belyi/ratfunc.hpp"

namespace belyi {

template <class R>
using Matrix = std::vector<std::vector<R>>;

/// A homogeneous linear system: rows of coefficients for named unknowns.
template <class R>
struct LinearSystem {
    Matrix<R> rows;
    std::vector<std::string> unknowns;
};

template <class R>
void check_rectangular(const Matrix<R>& m) {
    for (const auto& row : m)
        if (row.size() != m.front().size()) throw std::invalid_argument("matrix rows differ in length");
}

/// Exact division in the ring, needed by Bareiss.
inline QPoly ring_exact_div(const QPoly& a, const QPoly& b) {
    auto q = exact_divide(a, b);
    if (!q) throw ArithmeticError("Bareiss step not exact");
    return *q;
}
template <Field F>
F ring_exact_div(const F& a, const F& b) {
    return a / b;
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
template <class R>
R det_fraction_free(Matrix<R> m) {
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    check_rectangular(m);
    if (m.front().size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    R prev = one_like(m[0][0]);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            size_t p = k + 1;
            while (p < n && is_zero(m[p][k])) ++p;
            if (p == n) return zero_like(m[0][0]);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) m[i][j] = ring_exact_div(R(m[i][j] * m[k][k] - m[i][k] * m[k][j]), prev);
            m[i][k] = zero_like(prev);
        }
        prev = m[k][k];
    }
    R d = m[n - 1][n - 1];
    return sign < 0 ? R(-d) : d;
}

template <class R>
R det_fraction_free(const LinearSystem<R>& s) {
    return det_fraction_free(s.rows);
}

/// Basis of {v : M v = 0} over a field, by reduced row echelon form. Free
/// unknowns are set to 1 one at a time.
template <Field F>
std::vector<std::vector<F>> solve_nullspace(Matrix<F> m, size_t ncols) {
    check_rectangular(m);
    if (!m.empty()) ncols = m.front().size();
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < m.size(); ++col) {
        size_t p = row;
        while (p < m.size() && is_zero(m[p][col])) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        F inv = one_like(m[row][col]) / m[row][col];
        for (auto& v : m[row]) v = v * inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || is_zero(m[i][col])) continue;
            F factor = m[i][col];
            for (size_t j = 0; j < ncols; ++j) m[i][j] = m[i][j] - factor * m[row][j];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<std::vector<F>> basis;
    F like = m.empty() ? F(0) : m[0][0];
    for (size_t free = 0; free < ncols; ++free) {
        bool is_pivot = false;
        for (int pc : pivot_col) is_pivot = is_pivot || pc == static_cast<int>(free);
        if (is_pivot) continue;
        std::vector<F> v(ncols, zero_like(like));
        v[free] = one_like(like);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<size_t>(pivot_col[r])] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <Field F>
std::vector<std::vector<F>> solve_nullspace(const LinearSystem<F>& s) {
    return solve_nullspace(s.rows, s.unknowns.size());
}

/// Numeric rank by Gaussian elimination with partial pivoting; entries
/// below `tol` times the largest entry count as zero.
size_t numeric_rank(Matrix<Complex> m, const BigFloat& tol);

/// Numeric kernel vectors (same pivoting), normalized so the largest
/// component is 1.
std::vector<std::vector<Complex>> numeric_nullspace(Matrix<Complex> m, const BigFloat& tol);

/// Solves the square system M v = b (partial pivoting).
std::vector<Complex> numeric_solve(Matrix<Complex> m, std::vector<Complex> b);

}  // namespace belyi
