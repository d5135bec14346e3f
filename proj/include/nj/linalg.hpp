#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nj/rational.hpp"

namespace nj {

/// Dense rational matrix, row-major.
using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix q_identity(std::size_t n) {
    QMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMatrix q_transpose(const QMatrix& a) {
    if (a.empty()) return {};
    QMatrix t(a[0].size(), std::vector<Rational>(a.size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/// In-place reduced row echelon form; returns the pivot column indices.
inline std::vector<std::size_t> q_rref(QMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[row]);
        const Rational inv = rat_inv(a[row][col]);
        for (auto& v : a[row]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int q_rank(QMatrix a) { return static_cast<int>(q_rref(a).size()); }

/// Basis of the right kernel {v : A v = 0}, each vector scaled so its first
/// nonzero entry is 1.
inline std::vector<std::vector<Rational>> q_kernel(QMatrix a) {
    std::vector<std::vector<Rational>> basis;
    if (a.empty() || a[0].empty()) return basis;
    const std::size_t cols = a[0].size();
    const auto pivots = q_rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        for (auto& x : v) {
            if (x != 0) {
                const Rational inv = rat_inv(x);
                for (auto& y : v) y *= inv;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational q_det(QMatrix a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("q_det: matrix not square");
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && a[sel][col] == 0) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(a[sel], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rational inv = rat_inv(a[col][col]);
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    return det;
}

/// Exact inverse; nullopt when singular.
inline std::optional<QMatrix> q_inverse(const QMatrix& m) {
    const std::size_t n = m.size();
    QMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("q_inverse: matrix not square");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    const auto pivots = q_rref(aug);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
    QMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

inline std::vector<Rational> q_apply(const QMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

} // namespace nj
