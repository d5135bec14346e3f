#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nj/errors.hpp"
#include "nj/jacobian.hpp"
#include "nj/parse.hpp"
#include "nj/polymap.hpp"

namespace nj {

/// Univariate polynomial of degree d >= 1 whose T^{d-1} coefficient is zero,
/// stored as coefficients of T^0..T^d.
struct NicePoly {
    std::vector<Rational> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rational leading() const { return coeffs.empty() ? Rational(0) : coeffs.back(); }

    Polynomial to_polynomial() const {
        Polynomial p(1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            Monomial m(1);
            m.exponents[0] = static_cast<std::uint32_t>(k);
            p.add_term(m, coeffs[k]);
        }
        return p;
    }

    /// Throws validation_error("nice") unless this is a nice polynomial.
    void check(const std::string& where) const {
        if (degree() < 1)
            throw validation_error(where + ": degree must be >= 1", "nice");
        if (leading() == 0)
            throw validation_error(where + ": leading coefficient is zero", "nice");
        if (coeffs[static_cast<std::size_t>(degree() - 1)] != 0)
            throw validation_error(where + ": coefficient of T^" + std::to_string(degree() - 1) +
                                       " must be zero",
                                   "nice");
    }
};

/// One inner level of the main family: the nice polynomial P_i and the shift
/// b_i(x) entering through x_{i+1} + b_i(x)/(d_i p_{d_i}).
struct MainLevel {
    int i = 0;
    NicePoly P;
    Polynomial b{1}; // in x, ambient 1
};

struct MainParams {
    Polynomial p{1}; // in T, deg >= 1
    Polynomial a{1}; // in x
    int r = 0;
    std::vector<MainLevel> levels; // exactly i = 2..r-1, ascending
    Rational b_r = 0;              // terminal scalar
};

struct Cor1Params {
    Rational lambda1 = 0, lambda2 = 0, c1 = 0, c2 = 0;
    Polynomial f{1}; // in T
};

struct Cor2Params {
    Rational u = 0; // constant first component
    int r = 0;
    std::vector<std::pair<int, Polynomial>> chain; // u_i(x, x_{i+1}), i = 2..r-1, ambient n
    Polynomial u_r{1};                             // in x only, ambient n
};

/// Unconstrained component beyond the terminal index.
struct FreeComponent {
    int i = 0;
    Polynomial u{1}; // ambient n
};

enum class FamilyCase { cor1, cor2, main };

/// Full parameter record for one classified nilpotent family member.
struct FamilyParams {
    int n = 0;
    std::variant<MainParams, Cor1Params, Cor2Params> data;
    std::vector<FreeComponent> free;

    FamilyCase family_case() const {
        if (std::holds_alternative<MainParams>(data)) return FamilyCase::main;
        if (std::holds_alternative<Cor1Params>(data)) return FamilyCase::cor1;
        return FamilyCase::cor2;
    }
    const MainParams& main() const { return std::get<MainParams>(data); }
    const Cor1Params& cor1() const { return std::get<Cor1Params>(data); }
    const Cor2Params& cor2() const { return std::get<Cor2Params>(data); }
};

inline const char* to_string(FamilyCase c) {
    switch (c) {
        case FamilyCase::cor1: return "cor1";
        case FamilyCase::cor2: return "cor2";
        case FamilyCase::main: return "main";
    }
    return "?";
}

/// Constants derived from validated main-case parameters. All index vectors
/// are 1-based (entry 0 unused); by convention d_1 = 2, L_1 = 1, l_r = 0 and
/// b_1 = a.
struct DerivedConstants {
    FamilyCase family_case = FamilyCase::main;
    int n = 0, r = 0, s = 0;
    int n_big = 0;              // number of indices i in 1..r-1 with d_i >= 2
    std::vector<int> d;         // d[1..r-1]
    std::vector<Rational> l;    // l[2..r-1], l[r] = 0
    std::vector<Rational> L;    // L[1] = 1, L[2..r-1]
    std::vector<Polynomial> b;  // ambient 1: b[1] = a, b[2..r-1], b[r] = const b_r
    std::vector<std::vector<Polynomial>> c; // c[i] = derived u-basis coefficients of level i, i = 2..r

    /// gamma_{k,t} = 1/(L_{s-1+t-1} * ... * L_{s-1+t-k}), 1 <= k <= t <= r-s+1.
    Rational gamma(int k, int t) const {
        Rational g = 1;
        for (int m = 1; m <= k; ++m) {
            g *= rat_inv(L[static_cast<std::size_t>(s - 1 + t - m)]);
        }
        return g;
    }
};

namespace detail {

inline void trim_trailing_zeros(std::vector<Polynomial>& cs) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

/// The u-basis coefficients of level m+1 from level m's data:
///   c_{m+1,1}   = -b_m' / (d_m p_{d_m})
///   c_{m+1,j+1} = -c_{m,j}' / ((j+1) d_m p_{d_m})
inline std::vector<Polynomial> next_c_list(const std::vector<Polynomial>& cs, const Polynomial& b_m,
                                           int d_m, const Rational& p_dm) {
    const Rational D = Rational(d_m) * p_dm;
    std::vector<Polynomial> next(cs.size() + 1, Polynomial(1));
    next[0] = -derive(b_m, 1) / D;
    for (std::size_t j = 0; j < cs.size(); ++j)
        next[j + 1] = -derive(cs[j], 1) / (Rational(static_cast<int>(j) + 2) * D);
    trim_trailing_zeros(next);
    return next;
}

inline void check_free_support(int n, const FreeComponent& fc, int r_boundary) {
    if (fc.i <= r_boundary || fc.i > n)
        throw validation_error("free component index " + std::to_string(fc.i) +
                                   " out of range (" + std::to_string(r_boundary + 1) + ".." +
                                   std::to_string(n) + ")",
                               "range");
    if (fc.u.ambient() != n)
        throw validation_error("free component u" + std::to_string(fc.i) + " has wrong ambient",
                               "range");
    for (int v : support(fc.u)) {
        const bool ok = v == 1 || v == 2 || (fc.i < n && v == fc.i + 1);
        if (!ok)
            throw validation_error("free component u" + std::to_string(fc.i) +
                                       " depends on forbidden variable " + var_name(v),
                                   "shape");
    }
}

} // namespace detail

/// Checks every family condition and returns the derived constants.
/// Violations raise validation_error with the violated condition named.
inline DerivedConstants validate_params(const FamilyParams& params) {
    const int n = params.n;
    if (n < 3) throw validation_error("n must be >= 3", "range");
    DerivedConstants dc;
    dc.family_case = params.family_case();
    dc.n = n;

    if (params.family_case() == FamilyCase::cor1) {
        const auto& cp = params.cor1();
        if (cp.f.ambient() != 1)
            throw validation_error("f must be univariate", "range");
        for (const auto& fc : params.free) detail::check_free_support(n, fc, 2);
        return dc;
    }

    if (params.family_case() == FamilyCase::cor2) {
        const auto& cp = params.cor2();
        if (cp.r < 3 || cp.r > n)
            throw validation_error("r = " + std::to_string(cp.r) + " out of range [3, " +
                                       std::to_string(n) + "]",
                                   "range");
        if (static_cast<int>(cp.chain.size()) != cp.r - 2)
            throw validation_error("chain must list u_i for i = 2.." + std::to_string(cp.r - 1),
                                   "range");
        for (std::size_t k = 0; k < cp.chain.size(); ++k) {
            const int i = cp.chain[k].first;
            const Polynomial& ui = cp.chain[k].second;
            if (i != static_cast<int>(k) + 2)
                throw validation_error("chain entries must be ascending from i = 2", "range");
            if (ui.ambient() != n)
                throw validation_error("chain u" + std::to_string(i) + " has wrong ambient",
                                       "range");
            for (int v : support(ui))
                if (v != 1 && v != i + 1)
                    throw validation_error("u" + std::to_string(i) +
                                               " must depend only on x and " + var_name(i + 1),
                                           "shape");
            if (!uses_var(ui, i + 1))
                throw validation_error("u" + std::to_string(i) + " must depend on " +
                                           var_name(i + 1),
                                       "chain");
        }
        if (cp.u_r.ambient() != n)
            throw validation_error("u_r has wrong ambient", "range");
        for (int v : support(cp.u_r))
            if (v != 1)
                throw validation_error("u_r must depend only on x", "shape");
        for (const auto& fc : params.free) detail::check_free_support(n, fc, cp.r);
        dc.r = cp.r;
        return dc;
    }

    const auto& mp = params.main();
    const int r = mp.r;
    if (r < 3 || r > n)
        throw validation_error("r = " + std::to_string(r) + " out of range [3, " +
                                   std::to_string(n) + "]",
                               "range");
    auto pd = degree_in(mp.p, 1);
    if (!pd || *pd < 1) throw validation_error("p must have degree >= 1", "degree");
    if (static_cast<int>(mp.levels.size()) != r - 2)
        throw validation_error("levels must list i = 2.." + std::to_string(r - 1), "range");

    dc.r = r;
    dc.d.assign(static_cast<std::size_t>(r), 0);
    dc.l.assign(static_cast<std::size_t>(r + 1), Rational(0));
    dc.L.assign(static_cast<std::size_t>(r), Rational(0));
    dc.b.assign(static_cast<std::size_t>(r + 1), Polynomial(1));
    dc.c.assign(static_cast<std::size_t>(r + 1), {});
    dc.d[1] = 2;
    dc.L[1] = 1;
    dc.b[1] = mp.a;
    dc.b[static_cast<std::size_t>(r)] = Polynomial::constant(mp.b_r, 1);
    dc.l[static_cast<std::size_t>(r)] = 0;

    for (std::size_t k = 0; k < mp.levels.size(); ++k) {
        const auto& lv = mp.levels[k];
        if (lv.i != static_cast<int>(k) + 2)
            throw validation_error("levels must be ascending from i = 2", "range");
        lv.P.check("P" + std::to_string(lv.i));
        if (lv.b.ambient() != 1)
            throw validation_error("b" + std::to_string(lv.i) + " must be univariate", "range");
        dc.d[static_cast<std::size_t>(lv.i)] = lv.P.degree();
        dc.l[static_cast<std::size_t>(lv.i)] = lv.P.leading();
        dc.L[static_cast<std::size_t>(lv.i)] = Rational(lv.P.degree()) * lv.P.leading();
        dc.b[static_cast<std::size_t>(lv.i)] = lv.b;
    }

    // Walk the derived u-basis coefficient lists level by level, checking
    // the constancy conditions as they bind.
    std::vector<Polynomial> cs{-derive(mp.a, 1)};
    detail::trim_trailing_zeros(cs);
    dc.c[2] = cs;
    for (int m = 2; m <= r - 1; ++m) {
        const char* cond = m == 2 ? "(a)" : (m == r - 1 ? "(c)" : "(b)");
        if (dc.d[static_cast<std::size_t>(m)] >= 2) {
            for (std::size_t j = 0; j < cs.size(); ++j)
                if (!derive(cs[j], 1).is_zero())
                    throw validation_error(
                        "d" + std::to_string(m) + " >= 2 requires c'_{" + std::to_string(m) + "," +
                            std::to_string(j + 1) + "} = 0" +
                            (m == 2 ? " (equivalently a''(x) = 0)" : ""),
                        cond);
        }
        if (m == r - 1) {
            for (std::size_t j = 0; j < cs.size(); ++j)
                if (!is_constant(derive(cs[j], 1)))
                    throw validation_error("terminal level requires c'_{" + std::to_string(m) +
                                               "," + std::to_string(j + 1) + "} constant",
                                           "(c)");
            if (!is_constant(derive(dc.b[static_cast<std::size_t>(m)], 1)))
                throw validation_error("terminal level requires b'_{" + std::to_string(m) +
                                           "} constant",
                                       "(c)");
        }
        cs = detail::next_c_list(cs, dc.b[static_cast<std::size_t>(m)],
                                 dc.d[static_cast<std::size_t>(m)],
                                 dc.l[static_cast<std::size_t>(m)]);
        dc.c[static_cast<std::size_t>(m) + 1] = cs;
    }

    dc.s = 2;
    for (int i = r; i >= 2; --i) {
        if (dc.d[static_cast<std::size_t>(i - 1)] >= 2) {
            dc.s = i;
            break;
        }
    }
    for (int i = 1; i <= r - 1; ++i)
        if (dc.d[static_cast<std::size_t>(i)] >= 2) ++dc.n_big;

    for (const auto& fc : params.free) detail::check_free_support(n, fc, r);
    return dc;
}

namespace detail {

inline std::vector<Polynomial> free_components(const FamilyParams& params) {
    std::vector<Polynomial> comps(static_cast<std::size_t>(params.n + 1), Polynomial(params.n));
    for (const auto& fc : params.free) comps[static_cast<std::size_t>(fc.i)] = fc.u;
    return comps;
}

} // namespace detail

/// H = (l2 f(l1 x + l2 y) + c1, -l1 f(l1 x + l2 y) + c2, u3, ..., un) with
/// the second component free of x3; JH is nilpotent for any free tail.
inline PolynomialMap build_cor1(const FamilyParams& params) {
    if (params.family_case() != FamilyCase::cor1)
        throw std::invalid_argument("build_cor1: params are not the cor1 case");
    validate_params(params);
    const auto& cp = params.cor1();
    const int n = params.n;
    const Polynomial arg = Polynomial::variable(1, n) * cp.lambda1 +
                           Polynomial::variable(2, n) * cp.lambda2;
    const Polynomial fg = compose_univariate(cp.f, arg);
    auto tail = detail::free_components(params);
    std::vector<Polynomial> comps;
    comps.push_back(fg * cp.lambda2 + Polynomial::constant(cp.c1, n));
    comps.push_back(-(fg * cp.lambda1) + Polynomial::constant(cp.c2, n));
    for (int i = 3; i <= n; ++i) comps.push_back(tail[static_cast<std::size_t>(i)]);
    return PolynomialMap(n, std::move(comps));
}

/// H with constant first component and y-free chain up to the terminal
/// index; JH is nilpotent for any free tail.
inline PolynomialMap build_cor2(const FamilyParams& params) {
    if (params.family_case() != FamilyCase::cor2)
        throw std::invalid_argument("build_cor2: params are not the cor2 case");
    validate_params(params);
    const auto& cp = params.cor2();
    const int n = params.n;
    auto tail = detail::free_components(params);
    std::vector<Polynomial> comps;
    comps.push_back(Polynomial::constant(cp.u, n));
    for (const auto& [i, ui] : cp.chain) comps.push_back(ui);
    comps.push_back(cp.u_r);
    for (int i = cp.r + 1; i <= n; ++i) comps.push_back(tail[static_cast<std::size_t>(i)]);
    return PolynomialMap(n, std::move(comps));
}

/// The main construction:
///   u   = p(y + a(x))
///   u_i = sum_j c_{i,j}(x) u^j + P_i(x_{i+1} + b_i(x)/(d_i p_{d_i}))   (2 <= i <= r-1)
///   u_r = sum_j c_{r,j}(x) u^j + b_r
/// where the c-lists are the derived ones (c_{2,1} = -a', then the level
/// recursion). Components beyond r are the free tail.
inline PolynomialMap build_main(const FamilyParams& params) {
    if (params.family_case() != FamilyCase::main)
        throw std::invalid_argument("build_main: params are not the main case");
    const DerivedConstants dc = validate_params(params);
    const auto& mp = params.main();
    const int n = params.n;
    const int r = mp.r;

    const Polynomial x1 = Polynomial::variable(1, n);
    const Polynomial u = compose_univariate(mp.p, Polynomial::variable(2, n) + extend_ambient(mp.a, n));

    // Powers of u on demand.
    std::vector<Polynomial> u_pow{Polynomial::one(n), u};
    auto u_to = [&](std::size_t j) -> const Polynomial& {
        while (u_pow.size() <= j) u_pow.push_back(u_pow.back() * u);
        return u_pow[j];
    };
    auto bracket_sum = [&](const std::vector<Polynomial>& cs) {
        Polynomial acc(n);
        for (std::size_t j = 0; j < cs.size(); ++j)
            acc += extend_ambient(cs[j], n) * u_to(j + 1);
        return acc;
    };

    std::vector<Polynomial> comps;
    comps.push_back(u);
    for (const auto& lv : mp.levels) {
        const Rational D = Rational(lv.P.degree()) * lv.P.leading();
        const Polynomial beta = lv.b / D; // ambient 1
        const Polynomial arg = Polynomial::variable(lv.i + 1, n) + extend_ambient(beta, n);
        comps.push_back(bracket_sum(dc.c[static_cast<std::size_t>(lv.i)]) +
                        compose_univariate(lv.P.to_polynomial(), arg));
    }
    comps.push_back(bracket_sum(dc.c[static_cast<std::size_t>(r)]) +
                    Polynomial::constant(mp.b_r, n));
    auto tail = detail::free_components(params);
    for (int i = r + 1; i <= n; ++i) comps.push_back(tail[static_cast<std::size_t>(i)]);
    return PolynomialMap(n, std::move(comps));
}

inline PolynomialMap build_family(const FamilyParams& params) {
    switch (params.family_case()) {
        case FamilyCase::cor1: return build_cor1(params);
        case FamilyCase::cor2: return build_cor2(params);
        case FamilyCase::main: return build_main(params);
    }
    throw std::logic_error("build_family: bad case");
}

namespace detail {

/// Expands w in k[x,y] (ambient n) as sum_j e_j(x) u^j, where u has
/// y-degree N and constant leading y-coefficient pN. The expansion is
/// unique because u contains y; failure means the map is not in the family.
inline std::vector<Polynomial> u_adic_expand(Polynomial w, const Polynomial& u, int N,
                                             const Rational& pN, const std::string& where) {
    std::vector<Polynomial> e;
    auto set_e = [&](std::size_t j, Polynomial v) {
        if (e.size() <= j) e.resize(j + 1, Polynomial(1));
        e[j] = std::move(v);
    };
    const Polynomial x1n = Polynomial::variable(1, w.ambient());
    while (!w.is_zero()) {
        for (int v : support(w))
            if (v > 2)
                throw family_error(where + ": expansion in powers of u hit variable " +
                                   var_name(v));
        auto m = degree_in(w, 2);
        if (!m || *m == 0) {
            set_e(0, contract_ambient(w, 1));
            return e;
        }
        if (*m % N != 0)
            throw family_error(where + ": y-degree " + std::to_string(*m) +
                               " is not a multiple of deg_y(u) = " + std::to_string(N));
        const std::size_t j = static_cast<std::size_t>(*m / N);
        const Polynomial ej =
            contract_ambient(coeff_in_var(w, 2, static_cast<unsigned>(*m)), 1) /
            rat_pow(pN, static_cast<unsigned>(j));
        set_e(j, ej);
        w -= extend_ambient(ej, w.ambient()) * pow(u, static_cast<unsigned>(j));
        auto m2 = degree_in(w, 2);
        if (m2 && *m2 >= *m)
            throw family_error(where + ": expansion in powers of u does not terminate");
    }
    return e;
}

} // namespace detail

/// Reads the main-case parameters off a concrete structured map and
/// verifies them by exact rebuild. Preconditions: H structured, JH
/// nilpotent, u_y != 0 and u2_{x3} != 0 (the caller checks nilpotency).
/// Normalization: a(0) = 0, with the constant absorbed into p; the b_i are
/// pinned exactly by the niceness of the P_i and are recovered verbatim.
inline FamilyParams recover_params(const PolynomialMap& h) {
    const StructuredShape shape = validate_structured_shape(h);
    if (shape.u_y_zero) throw family_error("recover_params: requires u_y != 0");
    if (shape.u2_x3_zero) throw family_error("recover_params: requires u2_{x3} != 0");
    const int n = h.n;
    const int r = shape.r;
    const Polynomial& u = h[1];

    const int N = *degree_in(u, 2);
    const Polynomial pN_poly = coeff_in_var(u, 2, static_cast<unsigned>(N));
    if (!is_constant(pN_poly))
        throw family_error("recover_params: leading y-coefficient of u is not constant");
    const Rational pN = pN_poly.constant_term();

    // a(x) = (coeff_{y^{N-1}}(u) - its value at x = 0) / (N pN); then
    // p(T) = u(0, T) carries the absorbed constant.
    const Polynomial g1 = contract_ambient(coeff_in_var(u, 2, static_cast<unsigned>(N - 1)), 1);
    const Polynomial a =
        (g1 - Polynomial::constant(g1.constant_term(), 1)) / (Rational(N) * pN);
    std::map<int, Polynomial> to_T{{1, Polynomial(1)}, {2, Polynomial::variable(1, 1)}};
    const Polynomial p = substitute(u, to_T);

    MainParams mp;
    mp.p = p;
    mp.a = a;
    mp.r = r;
    for (int i = 2; i <= r - 1; ++i) {
        const std::string where = "component " + std::to_string(i);
        const Polynomial& ui = h[i];
        const int d = *degree_in(ui, i + 1);
        const Polynomial top = coeff_in_var(ui, i + 1, static_cast<unsigned>(d));
        if (!is_constant(top))
            throw family_error("recover_params: " + where + ": coefficient of " +
                               var_name(i + 1) + "^" + std::to_string(d) + " is not constant");
        const Rational pd = top.constant_term();

        MainLevel lv;
        lv.i = i;
        Polynomial w(n);
        if (d == 1) {
            lv.P.coeffs = {Rational(0), pd};
            w = coeff_in_var(ui, i + 1, 0);
        } else {
            const Polynomial bpoly = coeff_in_var(ui, i + 1, static_cast<unsigned>(d - 1));
            for (int v : support(bpoly))
                if (v != 1)
                    throw family_error("recover_params: " + where + ": coefficient of " +
                                       var_name(i + 1) + "^" + std::to_string(d - 1) +
                                       " involves " + var_name(v));
            lv.b = contract_ambient(bpoly, 1);
            const Polynomial beta = lv.b / (Rational(d) * pd);
            std::vector<Rational> pc(static_cast<std::size_t>(d + 1), Rational(0));
            pc[static_cast<std::size_t>(d)] = pd;
            // Recover the lower P-coefficients from the top down; each must
            // come out constant.
            for (int k = d - 2; k >= 1; --k) {
                Polynomial obs = contract_ambient(coeff_in_var(ui, i + 1, static_cast<unsigned>(k)), 1);
                for (int m = k + 1; m <= d; ++m) {
                    const Rational binom(factorial(static_cast<unsigned>(m)),
                                         factorial(static_cast<unsigned>(k)) *
                                             factorial(static_cast<unsigned>(m - k)));
                    obs -= (pc[static_cast<std::size_t>(m)] * binom) *
                           pow(beta, static_cast<unsigned>(m - k));
                }
                if (!is_constant(obs))
                    throw family_error("recover_params: " + where + ": coefficient of T^" +
                                       std::to_string(k) + " of P" + std::to_string(i) +
                                       " is not constant");
                pc[static_cast<std::size_t>(k)] = obs.constant_term();
            }
            lv.P.coeffs = pc; // T^0 entry patched below from the expansion
            Polynomial p_low(n);
            for (int m = 1; m <= d; ++m)
                p_low += Polynomial::constant(pc[static_cast<std::size_t>(m)], n) *
                         pow(extend_ambient(beta, n), static_cast<unsigned>(m));
            w = coeff_in_var(ui, i + 1, 0) - p_low;
        }
        auto e = detail::u_adic_expand(w, u, N, pN, "recover_params: " + where);
        if (!e.empty()) {
            if (d == 1) {
                lv.b = e[0];
            } else {
                if (!is_constant(e[0]))
                    throw family_error("recover_params: " + where +
                                       ": constant term of P" + std::to_string(i) +
                                       " came out non-constant");
                lv.P.coeffs[0] = e[0].constant_term();
            }
        }
        mp.levels.push_back(std::move(lv));
    }

    // Terminal component: pure bracket plus a scalar.
    auto e = detail::u_adic_expand(h[r], u, N, pN, "recover_params: component " + std::to_string(r));
    if (!e.empty()) {
        if (!is_constant(e[0]))
            throw family_error("recover_params: component " + std::to_string(r) +
                               ": x-part is not a constant");
        mp.b_r = e[0].constant_term();
    }

    FamilyParams params;
    params.n = n;
    params.data = std::move(mp);
    for (int i = r + 1; i <= n; ++i)
        if (!h[i].is_zero()) params.free.push_back({i, h[i]});

    try {
        validate_params(params);
    } catch (const validation_error& err) {
        throw family_error(std::string("recover_params: recovered parameters invalid: ") +
                           err.what());
    }
    const PolynomialMap rebuilt = build_main(params);
    for (int i = 1; i <= n; ++i)
        if (rebuilt[i] != h[i])
            throw family_error("recover_params: rebuild mismatch at component " +
                               std::to_string(i) + " (map is outside the classified family)");
    return params;
}

} // namespace nj
