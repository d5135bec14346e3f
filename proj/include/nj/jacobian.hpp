#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nj/errors.hpp"
#include "nj/linalg.hpp"
#include "nj/polymap.hpp"

namespace nj {

inline PolyMatrix jacobian_matrix(const PolynomialMap& h) {
    PolyMatrix j(h.n, h.n);
    for (int i = 1; i <= h.n; ++i)
        for (int k = 1; k <= h.n; ++k) j.at(i, k) = derive(h[i], k);
    return j;
}

/// Least k <= size with J^k = 0, or nullopt when J is not nilpotent.
inline std::optional<int> nilpotency_index(const PolyMatrix& j) {
    if (j.is_zero()) return 1;
    PolyMatrix p = j;
    for (int k = 2; k <= j.size; ++k) {
        p = mat_mul(p, j);
        if (p.is_zero()) return k;
    }
    return std::nullopt;
}

/// True iff J^n = 0 exactly (n = matrix size).
inline bool is_nilpotent_power(const PolyMatrix& j) { return nilpotency_index(j).has_value(); }

/// I + T*J with T adjoined as the extra variable x_{ambient+1}.
inline PolyMatrix char_matrix(const PolyMatrix& j) {
    const int na = j.ambient + 1;
    const Polynomial t = Polynomial::variable(na, na);
    PolyMatrix d = identity_matrix(j.size, na);
    for (int i = 1; i <= j.size; ++i)
        for (int k = 1; k <= j.size; ++k) d.at(i, k) += extend_ambient(j.at(i, k), na) * t;
    return d;
}

/// Coefficients of T^1..T^n in det(I + T*J), as polynomials in the
/// original variables. J is nilpotent iff all of them vanish.
inline std::vector<Polynomial> char_coefficients(const PolyMatrix& j) {
    const Polynomial d = det_cofactor(char_matrix(j));
    std::vector<Polynomial> coeffs;
    coeffs.reserve(static_cast<std::size_t>(j.size));
    for (int k = 1; k <= j.size; ++k)
        coeffs.push_back(contract_ambient(
            coeff_in_var(d, j.ambient + 1, static_cast<unsigned>(k)), j.ambient));
    return coeffs;
}

inline bool is_nilpotent_char(const PolyMatrix& j) {
    for (const auto& c : char_coefficients(j))
        if (!c.is_zero()) return false;
    return true;
}

/// Shape metadata of H = (u(x,y), u2(x,y,x3), ..., u_{n-1}(x,y,x_n), u_n(x,y)):
/// r is the first index >= 3 whose component is free of x_{r+1} (r = n when
/// none smaller exists), so u_i depends on x_{i+1} for all 2 <= i <= r-1.
struct StructuredShape {
    int n = 0;
    int r = 0;
    bool u_y_zero = false;
    bool u2_x3_zero = false;
};

/// Checks the structured shape and returns its metadata; throws shape_error
/// naming the offending component and variable otherwise.
inline StructuredShape validate_structured_shape(const PolynomialMap& h) {
    const int n = h.n;
    if (n < 3) throw shape_error("structured shape requires n >= 3, got n = " + std::to_string(n));
    auto check_support = [&](int comp, const std::set<int>& allowed) {
        for (int v : support(h[comp])) {
            if (!allowed.count(v))
                throw shape_error("component " + std::to_string(comp) +
                                      " depends on forbidden variable " + var_name(v),
                                  comp, v);
        }
    };
    check_support(1, {1, 2});
    check_support(n, {1, 2});
    for (int i = 2; i <= n - 1; ++i) check_support(i, {1, 2, i + 1});

    StructuredShape s;
    s.n = n;
    s.u_y_zero = !uses_var(h[1], 2);
    s.u2_x3_zero = !uses_var(h[2], 3);
    s.r = n;
    for (int i = 3; i <= n - 1; ++i) {
        if (!uses_var(h[i], i + 1)) {
            s.r = i;
            break;
        }
    }
    return s;
}

/// det(I + T*JH) computed through the structured determinant recursion
///   d_n = a1 b2 - a2 b1 + sum_{k=2}^{n-1} (-c2)...(-ck) (a1 b_{k+1} - b1 a_{k+1})
/// where column 1 of I + T*JH is (a1..an)^t, column 2 is (b1..bn)^t and
/// c_i = T * d(u_i)/d(x_{i+1}). Returns a polynomial with T adjoined as
/// x_{n+1}; it must equal the generic cofactor determinant.
inline Polynomial structured_char_recursion(const PolynomialMap& h) {
    validate_structured_shape(h);
    const int n = h.n;
    const int na = n + 1;
    const Polynomial t = Polynomial::variable(na, na);
    auto lift = [&](const Polynomial& p) { return extend_ambient(p, na); };

    std::vector<Polynomial> a, b; // 1-based: a[i], b[i]
    a.assign(static_cast<std::size_t>(n + 1), Polynomial(na));
    b.assign(static_cast<std::size_t>(n + 1), Polynomial(na));
    for (int i = 1; i <= n; ++i) {
        a[static_cast<std::size_t>(i)] = lift(derive(h[i], 1)) * t;
        b[static_cast<std::size_t>(i)] = lift(derive(h[i], 2)) * t;
    }
    a[1] += Polynomial::one(na);
    b[2] += Polynomial::one(na);

    Polynomial d = a[1] * b[2] - a[2] * b[1];
    Polynomial prefix = Polynomial::one(na); // (-c2)...(-ck)
    for (int k = 2; k <= n - 1; ++k) {
        const Polynomial ck = lift(derive(h[k], k + 1)) * t;
        prefix = prefix * (-ck);
        d += prefix * (a[1] * b[static_cast<std::size_t>(k + 1)] -
                       b[1] * a[static_cast<std::size_t>(k + 1)]);
    }
    return d;
}

/// The n residual polynomials whose simultaneous vanishing is equivalent to
/// nilpotency of JH for structured H:
///   (1) u_x + u2_y
///   (2) u_x u2_y - u_y u2_x - u2_{x3} u3_y
///   (i) u2_{x3}...u_{i-1}_{x_i} (u_x u_i_y - u_y u_i_x - u_i_{x_{i+1}} u_{i+1}_y)
/// for i = 3..n, with u_{n+1} := 0.
inline std::vector<Polynomial> nilpotency_equations(const PolynomialMap& h) {
    validate_structured_shape(h);
    const int n = h.n;
    const Polynomial ux = derive(h[1], 1);
    const Polynomial uy = derive(h[1], 2);
    std::vector<Polynomial> res;
    res.reserve(static_cast<std::size_t>(n));
    res.push_back(ux + derive(h[2], 2));
    auto inner = [&](int i) {
        Polynomial v = ux * derive(h[i], 2) - uy * derive(h[i], 1);
        if (i < n) v -= derive(h[i], i + 1) * derive(h[i + 1], 2);
        return v;
    };
    res.push_back(inner(2));
    Polynomial prefix = Polynomial::one(n); // u2_{x3} ... u_{i-1}_{x_i}
    for (int i = 3; i <= n; ++i) {
        prefix = prefix * derive(h[i - 1], i);
        res.push_back(prefix * inner(i));
    }
    return res;
}

inline bool is_nilpotent_equations(const PolynomialMap& h) {
    for (const auto& r : nilpotency_equations(h))
        if (!r.is_zero()) return false;
    return true;
}

enum class NilpotencyMethod { power, char_coeffs, equations };

inline bool is_nilpotent(const PolynomialMap& h, NilpotencyMethod method) {
    switch (method) {
        case NilpotencyMethod::power: return is_nilpotent_power(jacobian_matrix(h));
        case NilpotencyMethod::char_coeffs: return is_nilpotent_char(jacobian_matrix(h));
        case NilpotencyMethod::equations: return is_nilpotent_equations(h);
    }
    throw std::logic_error("is_nilpotent: bad method");
}

struct DependenceResult {
    int rank = 0;
    /// Basis of {v : sum_i v_i * p_i = 0}, first nonzero entry of each
    /// vector scaled to 1.
    std::vector<std::vector<Rational>> kernel;
};

/// Rank of the coefficient matrix (rows = polynomials, columns = monomials
/// in canonical order) plus the exact linear dependence relations among the
/// polynomials.
inline DependenceResult linear_dependence_rank(const std::vector<Polynomial>& polys) {
    DependenceResult out;
    if (polys.empty()) return out;
    std::map<Monomial, std::size_t, MonomialDesc> columns;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) columns.emplace(m, 0);
    std::size_t idx = 0;
    for (auto& [m, col] : columns) col = idx++;
    QMatrix a(polys.size(), std::vector<Rational>(std::max<std::size_t>(idx, 1), Rational(0)));
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto& [m, c] : polys[i].terms()) a[i][columns[m]] = c;
    out.rank = q_rank(a);
    out.kernel = q_kernel(q_transpose(a));
    return out;
}

/// Flattens the rows of a polynomial matrix for dependence analysis.
inline std::vector<Polynomial> matrix_rows_as_vectors(const PolyMatrix& m) {
    // Rows become single polynomials over a widened ambient so that entries
    // in different columns can never share a monomial.
    const int wide = m.ambient * m.size;
    std::vector<Polynomial> rows;
    rows.reserve(static_cast<std::size_t>(m.size));
    for (int i = 1; i <= m.size; ++i) {
        Polynomial row(wide);
        for (int j = 1; j <= m.size; ++j) {
            for (const auto& [mono, c] : m.at(i, j).terms()) {
                Monomial shifted(wide);
                for (int v = 0; v < m.ambient; ++v)
                    shifted.exponents[static_cast<std::size_t>((j - 1) * m.ambient + v)] =
                        mono.exponents[static_cast<std::size_t>(v)];
                row.add_term(shifted, c);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace nj
