#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "nj/errors.hpp"
#include "nj/family.hpp"
#include "nj/polymap.hpp"

namespace nj {

/// Deterministic random source: identical seeds give identical streams on
/// every platform (mt19937_64 is bit-exact; bounded draws use plain modulo).
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::mt19937_64 eng;

    std::uint64_t below(std::uint64_t k) { return k ? eng() % k : 0; }
    int int_in(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool chance(int num, int den) { return static_cast<int>(below(static_cast<std::uint64_t>(den))) < num; }

    /// Coefficient uniform over {-3..3}.
    Rational coeff() { return Rational(int_in(-3, 3)); }
    Rational nonzero_coeff() {
        for (;;) {
            Rational c = coeff();
            if (c != 0) return c;
        }
    }
};

/// Random univariate polynomial of degree <= cap (possibly zero).
inline Polynomial random_univariate(int cap, Rng& rng) {
    Polynomial p(1);
    for (int k = 0; k <= cap; ++k) {
        const Rational c = rng.coeff();
        if (c == 0) continue;
        Monomial m(1);
        m.exponents[0] = static_cast<std::uint32_t>(k);
        p.add_term(m, c);
    }
    return p;
}

inline NicePoly random_nice(int degree, Rng& rng) {
    NicePoly np;
    np.coeffs.assign(static_cast<std::size_t>(degree + 1), Rational(0));
    for (int k = 0; k <= degree - 2; ++k) np.coeffs[static_cast<std::size_t>(k)] = rng.coeff();
    np.coeffs[static_cast<std::size_t>(degree)] = rng.nonzero_coeff();
    return np;
}

/// Sparse random polynomial in the given variables (1-based indices).
inline Polynomial random_poly_in(int n, const std::vector<int>& vars, int max_deg, int max_terms,
                                 Rng& rng) {
    Polynomial p(n);
    const int terms = rng.int_in(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m(n);
        int budget = rng.int_in(0, max_deg);
        for (int v : vars) {
            if (budget <= 0) break;
            const int e = rng.int_in(0, budget);
            m.exponents[static_cast<std::size_t>(v - 1)] += static_cast<std::uint32_t>(e);
            budget -= e;
        }
        p.add_term(m, rng.coeff());
    }
    return p;
}

/// Random valid main-case parameters. Degree caps for a and the b_i follow
/// the cascaded constancy conditions (deg b_i <= min(r - i, m - i) over
/// levels m > i with d_m >= 2), so validation almost always passes on the
/// first draw; validate_params is still consulted, with bounded retries.
inline FamilyParams random_main_params(int n, int deg_cap, Rng& rng, int max_tries = 64) {
    if (n < 3) throw std::invalid_argument("random_main_params: n must be >= 3");
    const int dcap = std::max(1, deg_cap);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        const int r = rng.int_in(3, n);
        std::vector<int> d(static_cast<std::size_t>(r), 1);
        d[1] = 2;
        for (int i = 2; i <= r - 1; ++i) d[static_cast<std::size_t>(i)] = rng.int_in(1, dcap);

        auto b_cap = [&](int i) {
            int cap = r - i;
            for (int m = i + 1; m <= r - 1; ++m)
                if (d[static_cast<std::size_t>(m)] >= 2) cap = std::min(cap, m - i);
            return std::min(cap, dcap);
        };

        MainParams mp;
        mp.r = r;
        {
            Polynomial p(1);
            const int dp = rng.int_in(1, dcap);
            for (int k = 0; k <= dp - 1; ++k) {
                const Rational c = rng.coeff();
                if (c == 0) continue;
                Monomial m(1);
                m.exponents[0] = static_cast<std::uint32_t>(k);
                p.add_term(m, c);
            }
            Monomial m(1);
            m.exponents[0] = static_cast<std::uint32_t>(dp);
            p.add_term(m, rng.nonzero_coeff());
            mp.p = p;
        }
        mp.a = random_univariate(b_cap(1), rng);
        for (int i = 2; i <= r - 1; ++i) {
            MainLevel lv;
            lv.i = i;
            lv.P = random_nice(d[static_cast<std::size_t>(i)], rng);
            lv.b = random_univariate(b_cap(i), rng);
            mp.levels.push_back(std::move(lv));
        }
        mp.b_r = rng.coeff();

        FamilyParams params;
        params.n = n;
        params.data = std::move(mp);
        for (int i = r + 1; i <= n; ++i) {
            std::vector<int> vars{1, 2};
            if (i < n) vars.push_back(i + 1);
            if (rng.chance(3, 4)) params.free.push_back({i, random_poly_in(n, vars, dcap, 3, rng)});
        }
        try {
            validate_params(params);
            return params;
        } catch (const validation_error&) {
            continue;
        }
    }
    throw validation_error("random_main_params: no valid draw within retry budget", "sampling");
}

inline FamilyParams random_cor1_params(int n, int deg_cap, Rng& rng) {
    Cor1Params cp;
    cp.lambda1 = rng.coeff();
    cp.lambda2 = rng.coeff();
    cp.c1 = rng.coeff();
    cp.c2 = rng.coeff();
    cp.f = random_univariate(std::max(1, deg_cap), rng);
    FamilyParams params;
    params.n = n;
    params.data = std::move(cp);
    for (int i = 3; i <= n; ++i) {
        std::vector<int> vars{1, 2};
        if (i < n) vars.push_back(i + 1);
        if (rng.chance(2, 3)) params.free.push_back({i, random_poly_in(n, vars, deg_cap, 3, rng)});
    }
    return params;
}

inline FamilyParams random_cor2_params(int n, int deg_cap, Rng& rng) {
    Cor2Params cp;
    cp.u = rng.coeff();
    cp.r = rng.int_in(3, n);
    const int dcap = std::max(1, deg_cap);
    for (int i = 2; i <= cp.r - 1; ++i) {
        // u_i(x, x_{i+1}) with a guaranteed x_{i+1} dependence
        Polynomial ui = random_poly_in(n, {1, i + 1}, dcap, 3, rng);
        ui += Polynomial::variable(i + 1, n) * rng.nonzero_coeff();
        if (!uses_var(ui, i + 1))
            ui += Polynomial::variable(i + 1, n);
        cp.chain.emplace_back(i, ui);
    }
    cp.u_r = random_poly_in(n, {1}, dcap, 3, rng);
    FamilyParams params;
    params.n = n;
    params.data = std::move(cp);
    for (int i = cp.r + 1; i <= n; ++i) {
        std::vector<int> vars{1, 2};
        if (i < n) vars.push_back(i + 1);
        if (rng.chance(2, 3)) params.free.push_back({i, random_poly_in(n, vars, deg_cap, 3, rng)});
    }
    return params;
}

/// Adds a random shape-preserving term to one component, so the result is
/// still structured but (generically) no longer nilpotent.
inline PolynomialMap perturb_structured(const PolynomialMap& h, Rng& rng) {
    PolynomialMap out = h;
    const int n = h.n;
    const int i = rng.int_in(1, n);
    std::vector<int> vars{1, 2};
    if (i >= 2 && i <= n - 1) vars.push_back(i + 1);
    Polynomial bump = random_poly_in(n, vars, 2, 2, rng);
    if (bump.is_zero()) bump = Polynomial::variable(static_cast<std::size_t>(rng.below(2)) ? 2 : 1, n);
    out[i] += bump;
    return out;
}

} // namespace nj
