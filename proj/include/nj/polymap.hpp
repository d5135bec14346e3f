#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "nj/linalg.hpp"
#include "nj/polynomial.hpp"

namespace nj {

/// Ordered sequence of n polynomials in n variables.
struct PolynomialMap {
    int n = 0;
    std::vector<Polynomial> components;

    PolynomialMap() = default;
    PolynomialMap(int n_, std::vector<Polynomial> comps) : n(n_), components(std::move(comps)) {
        if (n < 2) throw std::invalid_argument("PolynomialMap: dimension must be >= 2");
        if (static_cast<int>(components.size()) != n)
            throw std::invalid_argument("PolynomialMap: component count != n");
        for (const auto& c : components)
            if (c.ambient() != n)
                throw std::invalid_argument("PolynomialMap: component ambient mismatch");
    }

    const Polynomial& operator[](int i) const {
        return components[static_cast<std::size_t>(i - 1)];
    }
    Polynomial& operator[](int i) { return components[static_cast<std::size_t>(i - 1)]; }

    bool operator==(const PolynomialMap& o) const { return n == o.n && components == o.components; }
    bool operator!=(const PolynomialMap& o) const { return !(*this == o); }
};

inline PolynomialMap identity_map(int n) {
    std::vector<Polynomial> comps;
    for (int i = 1; i <= n; ++i) comps.push_back(Polynomial::variable(i, n));
    return PolynomialMap(n, std::move(comps));
}

inline PolynomialMap zero_map(int n) {
    return PolynomialMap(n, std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(n)));
}

inline bool is_identity(const PolynomialMap& f) { return f == identity_map(f.n); }

/// F = X + H.
inline PolynomialMap plus_identity(const PolynomialMap& h) {
    PolynomialMap f = h;
    for (int i = 1; i <= f.n; ++i) f[i] += Polynomial::variable(i, f.n);
    return f;
}

/// H = F - X.
inline PolynomialMap minus_identity(const PolynomialMap& f) {
    PolynomialMap h = f;
    for (int i = 1; i <= h.n; ++i) h[i] -= Polynomial::variable(i, h.n);
    return h;
}

/// Exact composition (F o G)(X) = F(G(X)).
inline PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g) {
    if (f.n != g.n) throw std::invalid_argument("compose: dimension mismatch");
    std::map<int, Polynomial> assignments;
    for (int i = 1; i <= g.n; ++i) assignments.emplace(i, g[i]);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(f.n));
    for (int i = 1; i <= f.n; ++i) comps.push_back(substitute(f[i], assignments));
    return PolynomialMap(f.n, std::move(comps));
}

inline std::vector<Rational> eval(const PolynomialMap& f, const std::vector<Rational>& point) {
    std::vector<Rational> out;
    out.reserve(f.components.size());
    for (const auto& c : f.components) out.push_back(eval(c, point));
    return out;
}

/// Square matrix of polynomials. `ambient` is the variable count of the
/// entries and may exceed `size` (e.g. with an adjoined variable T).
struct PolyMatrix {
    int size = 0;
    int ambient = 0;
    std::vector<std::vector<Polynomial>> entries;

    PolyMatrix() = default;
    PolyMatrix(int size_, int ambient_)
      : size(size_), ambient(ambient_),
        entries(static_cast<std::size_t>(size_),
                std::vector<Polynomial>(static_cast<std::size_t>(size_), Polynomial(ambient_))) {
        if (size < 1) throw std::invalid_argument("PolyMatrix: size must be >= 1");
    }

    const Polynomial& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
    Polynomial& at(int i, int j) {
        return entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }

    bool is_zero() const {
        for (const auto& row : entries)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }

    bool operator==(const PolyMatrix& o) const {
        return size == o.size && ambient == o.ambient && entries == o.entries;
    }
};

inline PolyMatrix identity_matrix(int size, int ambient) {
    PolyMatrix m(size, ambient);
    for (int i = 1; i <= size; ++i) m.at(i, i) = Polynomial::one(ambient);
    return m;
}

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size != b.size || a.ambient != b.ambient)
        throw std::invalid_argument("mat_mul: shape mismatch");
    PolyMatrix r(a.size, a.ambient);
    for (int i = 1; i <= a.size; ++i)
        for (int k = 1; k <= a.size; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 1; j <= a.size; ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return r;
}

inline PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size != b.size || a.ambient != b.ambient)
        throw std::invalid_argument("mat_add: shape mismatch");
    PolyMatrix r = a;
    for (int i = 1; i <= a.size; ++i)
        for (int j = 1; j <= a.size; ++j) r.at(i, j) += b.at(i, j);
    return r;
}

inline PolyMatrix mat_scale(const PolyMatrix& a, const Polynomial& s) {
    PolyMatrix r = a;
    for (auto& row : r.entries)
        for (auto& e : row) e = e * s;
    return r;
}

/// Determinant by cofactor expansion, memoized over column subsets.
/// Exact; intended for desk-scale sizes (n <= 8 or so).
inline Polynomial det_cofactor(const PolyMatrix& m) {
    const int n = m.size;
    if (n > 31) throw std::invalid_argument("det_cofactor: matrix too large");
    std::unordered_map<std::uint32_t, Polynomial> memo;
    const std::uint32_t full = n == 31 ? 0x7fffffffu : ((1u << n) - 1u);
    // det of the submatrix on rows (n - popcount(mask)) .. n-1 and the
    // column set `mask`.
    auto rec = [&](auto&& self, std::uint32_t mask) -> Polynomial {
        if (mask == 0) return Polynomial::one(m.ambient);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int remaining = 0;
        for (std::uint32_t t = mask; t; t &= t - 1) ++remaining;
        const int row = n - remaining; // 0-based
        Polynomial acc(m.ambient);
        int sign = 1;
        for (int col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            const Polynomial& e = m.entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (!e.is_zero()) {
                Polynomial sub = self(self, mask & ~(1u << col));
                acc += sign > 0 ? e * sub : -(e * sub);
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, full);
}

inline Polynomial mat_trace(const PolyMatrix& m) {
    Polynomial t(m.ambient);
    for (int i = 1; i <= m.size; ++i) t += m.at(i, i);
    return t;
}

/// Rational matrix of the degree-1 part of each component of F.
inline QMatrix linear_part(const PolynomialMap& f) {
    QMatrix m(static_cast<std::size_t>(f.n), std::vector<Rational>(static_cast<std::size_t>(f.n), Rational(0)));
    for (int i = 1; i <= f.n; ++i) {
        for (const auto& [mono, c] : f[i].terms()) {
            if (mono.total_degree() != 1) continue;
            for (int j = 0; j < f.n; ++j)
                if (mono.exponents[static_cast<std::size_t>(j)] == 1)
                    m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = c;
        }
    }
    return m;
}

} // namespace nj
