#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nj/errors.hpp"
#include "nj/family.hpp"
#include "nj/jacobian.hpp"
#include "nj/linalg.hpp"
#include "nj/polymap.hpp"

namespace nj {

/// (x_1, ..., x_{i-1}, x_i + a, x_{i+1}, ..., x_n) with a free of x_i.
struct ElementaryFactor {
    int i = 0;
    Polynomial a{1};
};

/// X + c.
struct TranslationFactor {
    std::vector<Rational> c;
};

/// X -> M X with M invertible over the rationals.
struct LinearFactor {
    QMatrix m;
};

using Factor = std::variant<ElementaryFactor, TranslationFactor, LinearFactor>;

inline Factor make_elementary(int i, Polynomial a) {
    if (i < 1 || i > a.ambient())
        throw std::invalid_argument("make_elementary: target index out of range");
    if (uses_var(a, i))
        throw std::invalid_argument("make_elementary: shift polynomial contains its target " +
                                    var_name(i));
    return ElementaryFactor{i, std::move(a)};
}

inline Factor make_translation(std::vector<Rational> c) { return TranslationFactor{std::move(c)}; }

inline Factor make_linear(QMatrix m) {
    if (q_det(m) == 0) throw std::invalid_argument("make_linear: singular matrix");
    return LinearFactor{std::move(m)};
}

inline PolynomialMap factor_to_map(const Factor& f, int n) {
    PolynomialMap map = identity_map(n);
    if (const auto* e = std::get_if<ElementaryFactor>(&f)) {
        map[e->i] += extend_ambient(e->a, n);
    } else if (const auto* t = std::get_if<TranslationFactor>(&f)) {
        if (static_cast<int>(t->c.size()) != n)
            throw std::invalid_argument("translation factor has wrong dimension");
        for (int i = 1; i <= n; ++i)
            map[i] += Polynomial::constant(t->c[static_cast<std::size_t>(i - 1)], n);
    } else {
        const auto& lin = std::get<LinearFactor>(f);
        if (static_cast<int>(lin.m.size()) != n)
            throw std::invalid_argument("linear factor has wrong dimension");
        for (int i = 1; i <= n; ++i) {
            Polynomial row(n);
            for (int j = 1; j <= n; ++j)
                row += Polynomial::variable(j, n) *
                       lin.m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            map[i] = row;
        }
    }
    return map;
}

inline Factor invert_factor(const Factor& f) {
    if (const auto* e = std::get_if<ElementaryFactor>(&f)) return ElementaryFactor{e->i, -e->a};
    if (const auto* t = std::get_if<TranslationFactor>(&f)) {
        std::vector<Rational> neg;
        neg.reserve(t->c.size());
        for (const auto& v : t->c) neg.push_back(-v);
        return TranslationFactor{std::move(neg)};
    }
    const auto& lin = std::get<LinearFactor>(f);
    auto inv = q_inverse(lin.m);
    if (!inv) throw inversion_error("invert_factor: singular linear factor");
    return LinearFactor{std::move(*inv)};
}

/// Ordered list of atomic invertible factors; composition is left to right,
/// i.e. compose_factors({f, g}) = f o g.
struct FactorSequence {
    int n = 0;
    std::vector<Factor> factors;

    bool elementary_only() const {
        for (const auto& f : factors)
            if (!std::holds_alternative<ElementaryFactor>(f)) return false;
        return true;
    }
};

inline PolynomialMap compose_factors(const FactorSequence& seq) {
    PolynomialMap acc = identity_map(seq.n);
    for (const auto& f : seq.factors) acc = compose(acc, factor_to_map(f, seq.n));
    return acc;
}

/// Reverse order of factor inverses, so that
/// compose(seq) o compose(invert(seq)) = identity.
inline FactorSequence invert_factor_sequence(const FactorSequence& seq) {
    FactorSequence out;
    out.n = seq.n;
    out.factors.reserve(seq.factors.size());
    for (auto it = seq.factors.rbegin(); it != seq.factors.rend(); ++it)
        out.factors.push_back(invert_factor(*it));
    return out;
}

inline bool verify_inverse(const PolynomialMap& f, const PolynomialMap& g) {
    if (f.n != g.n) throw std::invalid_argument("verify_inverse: dimension mismatch");
    const PolynomialMap id = identity_map(f.n);
    return compose(f, g) == id && compose(g, f) == id;
}

struct DecomposeOptions {
    /// Re-check the bookkeeping invariant
    /// inverse(left) o current o inverse(right) = F after every step, plus
    /// the intermediate component identities. Expensive; meant for tests.
    bool verify_steps = false;
};

namespace detail {

struct DecomposeSession {
    explicit DecomposeSession(const PolynomialMap& f, DecomposeOptions opts)
      : original(f), current(f), options(opts), n(f.n) {}

    const PolynomialMap& original;
    PolynomialMap current;
    DecomposeOptions options;
    int n;
    std::vector<Factor> left, right; // in order of application

    void apply_left(Factor f) {
        current = compose(factor_to_map(f, n), current);
        left.push_back(std::move(f));
        check_bookkeeping();
    }
    void apply_right(Factor f) {
        current = compose(current, factor_to_map(f, n));
        right.push_back(std::move(f));
        check_bookkeeping();
    }

    void check_bookkeeping() const {
        if (!options.verify_steps) return;
        PolynomialMap m = current;
        for (auto it = left.rbegin(); it != left.rend(); ++it)
            m = compose(factor_to_map(invert_factor(*it), n), m);
        for (auto it = right.rbegin(); it != right.rend(); ++it)
            m = compose(m, factor_to_map(invert_factor(*it), n));
        if (m != original)
            throw std::logic_error("decompose: bookkeeping invariant violated");
    }

    FactorSequence finish() const {
        if (!is_identity(current))
            throw std::logic_error("decompose: did not reach the identity map");
        FactorSequence seq;
        seq.n = n;
        for (const auto& f : left) seq.factors.push_back(invert_factor(f));
        for (auto it = right.rbegin(); it != right.rend(); ++it)
            seq.factors.push_back(invert_factor(*it));
        return seq;
    }
};

/// The bracket polynomial of component r - tau after tau removal steps:
///   sum_{k=1}^{r-s-tau+1} (-1)^k gamma_{k,r-s-tau+1}
///       sum_{m=k}^{k+tau} (1/m!) b_{r-tau-k}^{(m)}(x) u^m
inline Polynomial bracket_term(const DerivedConstants& dc, int tau, const Polynomial& u) {
    const int n = u.ambient();
    const int top = dc.r - dc.s - tau + 1;
    Polynomial acc(n);
    std::vector<Polynomial> u_pow{Polynomial::one(n), u};
    auto u_to = [&](int j) -> const Polynomial& {
        while (static_cast<int>(u_pow.size()) <= j) u_pow.push_back(u_pow.back() * u);
        return u_pow[static_cast<std::size_t>(j)];
    };
    for (int k = 1; k <= top; ++k) {
        const Rational sign_gamma = (k % 2 ? Rational(-1) : Rational(1)) * dc.gamma(k, top);
        Polynomial bk = dc.b[static_cast<std::size_t>(dc.r - tau - k)];
        for (int d = 0; d < k; ++d) bk = derive(bk, 1); // b^{(k)}
        for (int m = k; m <= k + tau; ++m) {
            if (m > k)
                bk = derive(bk, 1); // raise to b^{(m)}
            if (bk.is_zero()) continue;
            const Rational coeff = sign_gamma / Rational(factorial(static_cast<unsigned>(m)));
            acc += (extend_ambient(bk, n) * coeff) * u_to(m);
        }
    }
    return acc;
}

inline void peel_descending_left(DecomposeSession& s, int from, int down_to) {
    for (int i = from; i >= down_to; --i) {
        Polynomial resid = s.current[i] - Polynomial::variable(i, s.n);
        if (resid.is_zero()) continue;
        s.apply_left(make_elementary(i, -resid));
    }
}

inline void cor1_flow(DecomposeSession& s) {
    const int n = s.n;
    const PolynomialMap h = minus_identity(s.current);
    const Polynomial& u = h[1];
    const Polynomial& u2 = h[2];
    const Rational c1 = u.constant_term();
    const Rational c2 = u2.constant_term();
    const Polynomial u0 = u - Polynomial::constant(c1, n);
    const Polynomial u20 = u2 - Polynomial::constant(c2, n);

    Rational lambda1 = 0, lambda2 = 0;
    Polynomial f(1);
    std::map<int, Polynomial> at_x_axis{{1, Polynomial::variable(1, 1)}, {2, Polynomial(1)}};
    std::map<int, Polynomial> at_y_axis{{1, Polynomial(1)}, {2, Polynomial::variable(1, 1)}};
    if (!u0.is_zero()) {
        // u - c1 = f(rho x + y) with lambda2 normalized to 1.
        lambda2 = 1;
        const Polynomial ux = derive(u0, 1), uy = derive(u0, 2);
        if (uy.is_zero())
            throw family_error("decompose: first component is not of the u2_{x3} = 0 family form");
        // rho = u0_x / u0_y must be a constant ratio.
        Rational rho = 0;
        if (!ux.is_zero()) {
            const auto& [m0, cx] = *ux.terms().begin();
            const Rational cy = uy.coeff(m0);
            if (cy == 0)
                throw family_error("decompose: gradient of u is not proportional to a constant");
            rho = cx / cy;
        }
        if (ux != uy * rho)
            throw family_error("decompose: u_x is not a constant multiple of u_y");
        lambda1 = rho;
        f = substitute(u0, at_y_axis); // u0(0, T)
        const Polynomial g = Polynomial::variable(1, n) * lambda1 + Polynomial::variable(2, n);
        if (compose_univariate(f, g) != u0)
            throw family_error("decompose: u is not of the form f(l1 x + l2 y) + c1");
        if (u20 != -(u0 * rho))
            throw family_error("decompose: u2 does not match -l1 f(l1 x + l2 y) + c2");
    } else if (!u20.is_zero()) {
        // u constant forces lambda2 = 0: u2 - c2 = -f(x).
        lambda1 = 1;
        for (int v : support(u20))
            if (v != 1)
                throw family_error("decompose: with constant u, u2 must depend on x only");
        f = -substitute(u20, at_x_axis);
    }

    if (c1 != 0 || c2 != 0) {
        std::vector<Rational> shift(static_cast<std::size_t>(n), Rational(0));
        shift[0] = -c1;
        shift[1] = -c2;
        s.apply_left(make_translation(std::move(shift)));
    }
    if (!f.is_zero()) {
        if (lambda1 == 0) {
            // component 1 = x + f(y): one elementary step
            s.apply_left(make_elementary(1, -compose_univariate(f, Polynomial::variable(2, n))));
        } else if (lambda2 == 0) {
            // component 2 = y - f(x)
            s.apply_left(make_elementary(2, compose_univariate(f, Polynomial::variable(1, n))));
        } else {
            // conjugate by S = (l1 x + l2 y, y, x3, ..., xn)
            QMatrix sm = q_identity(static_cast<std::size_t>(n));
            sm[0][0] = lambda1;
            sm[0][1] = lambda2;
            const Factor S = make_linear(sm);
            s.apply_left(S);
            s.apply_right(invert_factor(S));
            // now component 2 = y - l1 f(x)
            s.apply_left(make_elementary(
                2, compose_univariate(f, Polynomial::variable(1, n)) * lambda1));
        }
    }
    if (s.current[1] != Polynomial::variable(1, n) || s.current[2] != Polynomial::variable(2, n))
        throw std::logic_error("decompose: head components not reduced to the identity");
    peel_descending_left(s, n, 3);
}

inline void cor2_flow(DecomposeSession& s, const StructuredShape& shape) {
    const int n = s.n;
    const int r = shape.r;
    const PolynomialMap h = minus_identity(s.current);
    if (!is_constant(h[1]))
        throw family_error("decompose: u_y = 0 with nilpotent JH requires constant u");
    for (int i = 2; i <= r; ++i)
        if (uses_var(h[i], 2))
            throw family_error("decompose: component " + std::to_string(i) +
                               " must be free of y when u_y = 0");
    if (!h[1].is_zero()) s.apply_left(make_elementary(1, -h[1]));
    peel_descending_left(s, r, 2);
    peel_descending_left(s, n, r + 1);
}

/// One reduction round of the main family: strips brackets from the top
/// components, rewrites the s-level shift, and hands back a map with the
/// same head and a shorter chain.
inline void main_flow_round(DecomposeSession& s) {
    const int n = s.n;
    const PolynomialMap h = minus_identity(s.current);
    const FamilyParams params = recover_params(h);
    const DerivedConstants dc = validate_params(params);
    const auto& mp = params.main();
    const int r = dc.r, sidx = dc.s;
    const Polynomial u = h[1];
    const Polynomial F1 = s.current[1];
    const Polynomial x1 = Polynomial::variable(1, n);

    // Components beyond r: peel descending with right factors (their
    // residuals only involve x, y and higher coordinates).
    for (int i = n; i >= r + 1; --i) {
        Polynomial resid = s.current[i] - Polynomial::variable(i, n);
        if (resid.is_zero()) continue;
        s.apply_right(make_elementary(i, -resid));
    }

    // Strip the bracket of component r-t+1 at step t.
    for (int t = 1; t <= r - sidx; ++t) {
        const int target = r - t + 1;
        Polynomial B = bracket_term(dc, t - 1, u);
        if (t == 1) B += Polynomial::constant(mp.b_r, n);
        if (!B.is_zero()) s.apply_right(make_elementary(target, -B));
        if (s.options.verify_steps) {
            // component r-t must now read x_{r-t} + [u_{r-t}] + b_{r-t}(F1) + l_{r-t} x_{r-t+1}
            Polynomial expect = Polynomial::variable(r - t, n) + bracket_term(dc, t, u) +
                                compose_univariate(dc.b[static_cast<std::size_t>(r - t)], F1) +
                                Polynomial::variable(r - t + 1, n) *
                                    dc.l[static_cast<std::size_t>(r - t)];
            if (s.current[r - t] != expect)
                throw std::logic_error("decompose: step identity violated at component " +
                                       std::to_string(r - t));
        }
    }

    if (s.options.verify_steps) {
        // Taylor identity: b_{s-1}(F1) = sum_{k=0}^{r-s+1} (1/k!) b_{s-1}^{(k)}(x) u^k.
        Polynomial lhs = compose_univariate(dc.b[static_cast<std::size_t>(sidx - 1)], F1);
        Polynomial rhs(n);
        Polynomial bk = dc.b[static_cast<std::size_t>(sidx - 1)];
        Polynomial upow = Polynomial::one(n);
        for (int k = 0; k <= r - sidx + 1; ++k) {
            rhs += (extend_ambient(bk, n) / Rational(factorial(static_cast<unsigned>(k)))) * upow;
            bk = derive(bk, 1);
            upow = upow * u;
        }
        if (lhs != rhs) throw std::logic_error("decompose: Taylor identity violated");
    }

    // Rewrite level s and clear the b_j(F1) offsets (left factors in x1 only).
    {
        const Rational Ls1 = dc.L[static_cast<std::size_t>(sidx - 1)];
        const Polynomial bs1 = dc.b[static_cast<std::size_t>(sidx - 1)];
        Polynomial shift = compose_univariate(bs1, x1) / Ls1 -
                           compose_univariate(dc.b[static_cast<std::size_t>(sidx)], x1);
        if (!shift.is_zero()) s.apply_left(make_elementary(sidx, shift));
        for (int j = sidx + 1; j <= r - 1; ++j) {
            Polynomial bj = compose_univariate(dc.b[static_cast<std::size_t>(j)], x1);
            if (!bj.is_zero()) s.apply_left(make_elementary(j, -bj));
        }
    }

    // Kill the linear tails l_j x_{j+1}, descending so the higher component
    // is already a pure coordinate.
    for (int j = r - 1; j >= sidx; --j) {
        const Rational lj = dc.l[static_cast<std::size_t>(j)];
        if (lj == 0) continue;
        s.apply_left(make_elementary(j, -(Polynomial::variable(j + 1, n) * lj)));
    }

    if (sidx == 2) {
        // current = (x + p(y + a(x)), y + a(x), x3, ..., xn)
        if (!mp.a.is_zero()) s.apply_right(make_elementary(2, -compose_univariate(mp.a, x1)));
        s.apply_left(make_elementary(1, -compose_univariate(mp.p, Polynomial::variable(2, n))));
        return;
    }

    // Recursive case: expose the reduced map (u, ..., u_{s-2}, [u_{s-1}], 0, ..., 0).
    const Rational Ls1 = dc.L[static_cast<std::size_t>(sidx - 1)];
    Polynomial shift = compose_univariate(dc.b[static_cast<std::size_t>(sidx - 1)], x1) / Ls1;
    if (!shift.is_zero()) s.apply_right(make_elementary(sidx, -shift));
    const NicePoly& Ps1 = mp.levels[static_cast<std::size_t>(sidx - 3)].P; // level s-1
    s.apply_left(make_elementary(
        sidx - 1, -compose_univariate(Ps1.to_polynomial(), Polynomial::variable(sidx, n))));
}

} // namespace detail

/// Factors F = X + H (H structured, JH nilpotent, H classified) into atomic
/// invertible factors whose left-to-right composition equals F exactly.
/// Affine (translation/linear) factors appear only in the u2_{x3} = 0 flow;
/// everything else is elementary.
inline FactorSequence decompose(const PolynomialMap& f, DecomposeOptions options = {}) {
    detail::DecomposeSession s(f, options);
    for (int round = 0;; ++round) {
        if (is_identity(s.current)) break;
        if (round > 2 * f.n + 4) throw std::logic_error("decompose: no progress");
        const PolynomialMap h = minus_identity(s.current);
        const StructuredShape shape = validate_structured_shape(h);
        if (round == 0 && !is_nilpotent_char(jacobian_matrix(h)))
            throw family_error("decompose: JH is not nilpotent");
        if (shape.u2_x3_zero) {
            detail::cor1_flow(s);
        } else if (shape.u_y_zero) {
            detail::cor2_flow(s, shape);
        } else {
            detail::main_flow_round(s);
        }
    }
    FactorSequence seq = s.finish();
    if (compose_factors(seq) != f)
        throw std::logic_error("decompose: factor sequence does not recompose to F");
    return seq;
}

namespace detail {

inline Polynomial substitute_trunc(const Polynomial& p, const std::vector<Polynomial>& repl,
                                   unsigned bound) {
    const int n = static_cast<int>(repl.size());
    const int src_n = p.ambient();
    auto rec = [&](auto&& self, const Polynomial& q, int var) -> Polynomial {
        if (q.is_zero()) return Polynomial(n);
        while (var <= src_n && !uses_var(q, var)) ++var;
        if (var > src_n) return Polynomial::constant(q.constant_term(), n);
        const auto m = degree_in(q, var);
        Polynomial acc = self(self, coeff_in_var(q, var, static_cast<unsigned>(*m)), var + 1);
        const Polynomial& base = repl[static_cast<std::size_t>(var - 1)];
        for (int k = *m - 1; k >= 0; --k) {
            acc = mul_trunc(acc, base, bound);
            Polynomial slice = coeff_in_var(q, var, static_cast<unsigned>(k));
            if (!slice.is_zero()) acc += self(self, slice, var + 1);
        }
        return acc;
    };
    return rec(rec, p, 1);
}

} // namespace detail

/// Inverse of F by a degree-graded Newton update G <- G - L^{-1}(F o G - X)
/// with truncation at degree_bound (default (deg F)^(n-1)). Succeeds only
/// when the residual closes to zero as exact polynomials; otherwise reports
/// that the bound was exhausted.
inline PolynomialMap formal_inverse(const PolynomialMap& f,
                                    std::optional<unsigned> degree_bound = std::nullopt) {
    const int n = f.n;
    const std::vector<Rational> zero_pt(static_cast<std::size_t>(n), Rational(0));
    const std::vector<Rational> c = eval(f, zero_pt);
    const QMatrix L = linear_part(f);
    const auto Linv = q_inverse(L);
    if (!Linv) throw inversion_error("formal_inverse: linear part of F - F(0) is singular");

    unsigned bound;
    if (degree_bound) {
        bound = *degree_bound;
    } else {
        int df = 1;
        for (const auto& comp : f.components) {
            auto d = total_degree(comp);
            if (d && *d > df) df = *d;
        }
        double est = 1;
        for (int k = 0; k < n - 1; ++k) est *= df;
        bound = est > 1u << 20 ? (1u << 20) : static_cast<unsigned>(est);
    }

    // Affine start G0 = L^{-1}(X - c).
    PolynomialMap g = identity_map(n);
    for (int i = 1; i <= n; ++i) {
        Polynomial gi(n);
        for (int j = 1; j <= n; ++j) {
            const Rational& lij = (*Linv)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            if (lij == 0) continue;
            gi += (Polynomial::variable(j, n) -
                   Polynomial::constant(c[static_cast<std::size_t>(j - 1)], n)) *
                  lij;
        }
        g[i] = gi;
    }

    const PolynomialMap id = identity_map(n);
    for (unsigned iter = 0; iter <= bound + 1; ++iter) {
        std::vector<Polynomial> residual;
        residual.reserve(static_cast<std::size_t>(n));
        bool zero = true;
        for (int i = 1; i <= n; ++i) {
            Polynomial ri = detail::substitute_trunc(f[i], g.components, bound) -
                            Polynomial::variable(i, n);
            zero = zero && ri.is_zero();
            residual.push_back(std::move(ri));
        }
        if (zero) {
            if (compose(f, g) != id)
                throw inversion_error(
                    "formal_inverse: truncation bound " + std::to_string(bound) +
                    " reached without polynomial closure (the bound may be raised)");
            if (compose(g, f) != id)
                throw std::logic_error("formal_inverse: one-sided inverse"); // impossible over Q
            return g;
        }
        for (int i = 1; i <= n; ++i) {
            Polynomial update(n);
            for (int j = 1; j <= n; ++j) {
                const Rational& lij = (*Linv)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                if (lij == 0) continue;
                update += residual[static_cast<std::size_t>(j - 1)] * lij;
            }
            g[i] = truncate(g[i] - update, bound);
        }
    }
    throw inversion_error("formal_inverse: no closure within degree bound " +
                          std::to_string(bound));
}

} // namespace nj
