#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nj {

/// Power product x1^e1 * ... * xn^en. The ambient variable count is the
/// length of the exponent vector.
struct Monomial {
    std::vector<std::uint32_t> exponents;

    Monomial() = default;
    explicit Monomial(int n) : exponents(static_cast<std::size_t>(n), 0) {
        if (n < 1) throw std::invalid_argument("Monomial: ambient dimension must be >= 1");
    }

    int ambient() const { return static_cast<int>(exponents.size()); }

    /// Exponent of x_index (1-based).
    std::uint32_t exp(int index) const { return exponents[static_cast<std::size_t>(index - 1)]; }

    bool is_unit() const {
        for (auto e : exponents)
            if (e != 0) return false;
        return true;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto e : exponents) d += e;
        return d;
    }

    Monomial operator*(const Monomial& other) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exponents.size(); ++i) r.exponents[i] += other.exponents[i];
        return r;
    }

    bool operator==(const Monomial& other) const { return exponents == other.exponents; }
};

/// Canonical term order: compare the x2-degree first, then the x1-degree,
/// then x3, x4, ... left to right. Restricted to k[x1,x2] this is the
/// y-major lexicographic order used by the leading-term machinery.
/// Returns <0, 0, >0.
inline int cmp_monomial(const Monomial& a, const Monomial& b) {
    const int n = a.ambient();
    auto cmp_at = [&](int idx0) -> int {
        const auto ea = a.exponents[static_cast<std::size_t>(idx0)];
        const auto eb = b.exponents[static_cast<std::size_t>(idx0)];
        return ea < eb ? -1 : (ea > eb ? 1 : 0);
    };
    if (n >= 2) {
        if (int c = cmp_at(1)) return c;
        if (int c = cmp_at(0)) return c;
        for (int i = 2; i < n; ++i)
            if (int c = cmp_at(i)) return c;
        return 0;
    }
    return n == 1 ? cmp_at(0) : 0;
}

/// Comparator putting the greatest (leading) monomial first.
struct MonomialDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return cmp_monomial(a, b) > 0; }
};

} // namespace nj
