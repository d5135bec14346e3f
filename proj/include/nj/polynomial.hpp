#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nj/monomial.hpp"
#include "nj/rational.hpp"

namespace nj {

/// Sparse multivariate polynomial over the rationals, in canonical form:
/// no zero coefficients, no duplicate monomials, terms kept in the canonical
/// descending order so equal polynomials have identical representations.
/// Values are immutable in spirit: every operation returns a fresh value.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialDesc>;

    explicit Polynomial(int n = 1) : n_(n) {
        if (n < 1) throw std::invalid_argument("Polynomial: ambient dimension must be >= 1");
    }

    static Polynomial zero(int n) { return Polynomial(n); }

    static Polynomial constant(const Rational& c, int n) {
        Polynomial p(n);
        if (c != 0) p.terms_.emplace(Monomial(n), c);
        return p;
    }

    static Polynomial one(int n) { return constant(1, n); }

    /// x_index as a polynomial (index is 1-based).
    static Polynomial variable(int index, int n) {
        if (index < 1 || index > n)
            throw std::invalid_argument("Polynomial::variable: index out of range");
        Polynomial p(n);
        Monomial m(n);
        m.exponents[static_cast<std::size_t>(index - 1)] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static Polynomial monomial(const Monomial& m, const Rational& c, int n) {
        Polynomial p(n);
        p.add_term(m, c);
        return p;
    }

    int ambient() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        if (m.ambient() != n_)
            throw std::invalid_argument("Polynomial::add_term: monomial ambient mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coeff(Monomial(n_)); }

    bool operator==(const Polynomial& other) const {
        return n_ == other.n_ && terms_ == other.terms_;
    }
    bool operator!=(const Polynomial& other) const { return !(*this == other); }

    Polynomial operator-() const {
        Polynomial r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& other) {
        check_same_ambient(other);
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        check_same_ambient(other);
        for (const auto& [m, c] : other.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        return multiply(a, b, nullptr);
    }

    /// Product with all monomials of total degree > *bound dropped
    /// (bound == nullptr: exact product).
    static Polynomial multiply(const Polynomial& a, const Polynomial& b, const unsigned* bound);

    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        Polynomial r(a.n_);
        if (s == 0) return r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }

    friend Polynomial operator/(const Polynomial& a, const Rational& s) {
        if (s == 0) throw std::invalid_argument("Polynomial: division by zero scalar");
        return a * rat_inv(s);
    }

  private:
    void check_same_ambient(const Polynomial& other) const {
        if (n_ != other.n_)
            throw std::invalid_argument("Polynomial: ambient dimension mismatch (" +
                                        std::to_string(n_) + " vs " + std::to_string(other.n_) +
                                        ")");
    }

    int n_;
    TermMap terms_;
};

inline Polynomial Polynomial::multiply(const Polynomial& a, const Polynomial& b,
                                       const unsigned* bound) {
    a.check_same_ambient(b);
    Polynomial r(a.n_);
    if (a.terms_.empty() || b.terms_.empty()) return r;

    // Fast path: pack exponent vectors into one 64-bit key so monomial
    // products become integer additions accumulated in a hash map.
    const std::size_t nv = static_cast<std::size_t>(a.n_);
    std::vector<std::uint64_t> max_sum(nv, 0);
    auto scan = [&](const Polynomial& p, std::vector<std::uint64_t>& mx) {
        mx.assign(nv, 0);
        for (const auto& [m, c] : p.terms_)
            for (std::size_t i = 0; i < nv; ++i)
                mx[i] = std::max<std::uint64_t>(mx[i], m.exponents[i]);
    };
    std::vector<std::uint64_t> mxa, mxb;
    scan(a, mxa);
    scan(b, mxb);
    unsigned bits = 1;
    for (std::size_t i = 0; i < nv; ++i) {
        max_sum[i] = mxa[i] + mxb[i];
        while ((max_sum[i] >> bits) != 0) ++bits;
    }
    if (bits * nv <= 64) {
        // Clear denominators so the accumulation runs over the integers;
        // each output coefficient is normalized exactly once at the end.
        auto pack = [&](const Polynomial& p, Integer& den,
                        std::vector<std::pair<std::uint64_t, Integer>>& out,
                        std::vector<std::uint32_t>& deg) {
            den = 1;
            for (const auto& [m, c] : p.terms_) den = boost::multiprecision::lcm(den, denominator(c));
            out.reserve(p.terms_.size());
            deg.reserve(p.terms_.size());
            for (const auto& [m, c] : p.terms_) {
                std::uint64_t key = 0;
                for (std::size_t i = 0; i < nv; ++i)
                    key |= static_cast<std::uint64_t>(m.exponents[i]) << (i * bits);
                out.emplace_back(key, numerator(c) * (den / denominator(c)));
                deg.push_back(m.total_degree());
            }
        };
        Integer den_a, den_b;
        std::vector<std::pair<std::uint64_t, Integer>> pa, pb;
        std::vector<std::uint32_t> da, db;
        pack(a, den_a, pa, da);
        pack(b, den_b, pb, db);
        std::unordered_map<std::uint64_t, Integer> acc;
        acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), 1u << 20));
        for (std::size_t ia = 0; ia < pa.size(); ++ia) {
            for (std::size_t ib = 0; ib < pb.size(); ++ib) {
                if (bound && da[ia] + db[ib] > *bound) continue;
                acc[pa[ia].first + pb[ib].first] += pa[ia].second * pb[ib].second;
            }
        }
        const Integer den = den_a * den_b;
        const std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
        for (auto& [key, c] : acc) {
            if (c == 0) continue;
            Monomial m(a.n_);
            for (std::size_t i = 0; i < nv; ++i)
                m.exponents[i] = static_cast<std::uint32_t>((key >> (i * bits)) & mask);
            r.terms_.emplace(std::move(m), Rational(c, den));
        }
        return r;
    }

    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (bound && ma.total_degree() + mb.total_degree() > *bound) continue;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

inline Polynomial pow(const Polynomial& p, unsigned k) {
    Polynomial r = Polynomial::one(p.ambient());
    Polynomial b = p;
    for (; k; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

/// Formal partial derivative with respect to x_var (1-based).
inline Polynomial derive(const Polynomial& p, int var) {
    if (var < 1 || var > p.ambient())
        throw std::invalid_argument("derive: variable index out of range");
    Polynomial r(p.ambient());
    const std::size_t idx = static_cast<std::size_t>(var - 1);
    for (const auto& [m, c] : p.terms()) {
        const auto e = m.exponents[idx];
        if (e == 0) continue;
        Monomial dm = m;
        dm.exponents[idx] = e - 1;
        r.add_term(dm, c * Rational(e));
    }
    return r;
}

inline bool uses_var(const Polynomial& p, int var) {
    const std::size_t idx = static_cast<std::size_t>(var - 1);
    for (const auto& [m, c] : p.terms())
        if (m.exponents[idx] != 0) return true;
    return false;
}

/// Set of variable indices (1-based) actually appearing in p.
inline std::set<int> support(const Polynomial& p) {
    std::set<int> vars;
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < m.ambient(); ++i)
            if (m.exponents[static_cast<std::size_t>(i)] != 0) vars.insert(i + 1);
    return vars;
}

inline bool is_constant(const Polynomial& p) {
    return p.is_zero() || (p.term_count() == 1 && p.terms().begin()->first.is_unit());
}

/// Degree in x_var; nullopt is the "-infinity" degree of the zero polynomial.
inline std::optional<int> degree_in(const Polynomial& p, int var) {
    if (var < 1 || var > p.ambient())
        throw std::invalid_argument("degree_in: variable index out of range");
    if (p.is_zero()) return std::nullopt;
    std::uint32_t d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.exp(var));
    return static_cast<int>(d);
}

inline std::optional<int> total_degree(const Polynomial& p) {
    if (p.is_zero()) return std::nullopt;
    std::uint32_t d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.total_degree());
    return static_cast<int>(d);
}

/// Coefficient of x_var^k: the unique q free of x_var with
/// p = sum_k coeff_in_var(p, var, k) * x_var^k.
inline Polynomial coeff_in_var(const Polynomial& p, int var, unsigned k) {
    if (var < 1 || var > p.ambient())
        throw std::invalid_argument("coeff_in_var: variable index out of range");
    Polynomial r(p.ambient());
    const std::size_t idx = static_cast<std::size_t>(var - 1);
    for (const auto& [m, c] : p.terms()) {
        if (m.exponents[idx] != k) continue;
        Monomial q = m;
        q.exponents[idx] = 0;
        r.add_term(q, c);
    }
    return r;
}

/// Substitutes x_i -> assignments[i] (1-based keys). All replacement
/// polynomials must share one ambient dimension, which becomes the ambient
/// of the result; unassigned variables map to themselves.
/// Evaluation is multivariate Horner, variable by variable, so every
/// multiplication pairs the accumulated value with one (small) replacement.
inline Polynomial substitute(const Polynomial& p, const std::map<int, Polynomial>& assignments) {
    int target_n = p.ambient();
    if (!assignments.empty()) {
        target_n = assignments.begin()->second.ambient();
        for (const auto& [i, q] : assignments)
            if (q.ambient() != target_n)
                throw std::invalid_argument("substitute: replacement ambient mismatch");
    }
    std::map<int, Polynomial> repl; // replacements for variables present in p
    auto replacement = [&](int var) -> const Polynomial& {
        auto it = repl.find(var);
        if (it != repl.end()) return it->second;
        auto as = assignments.find(var);
        if (as != assignments.end()) return repl.emplace(var, as->second).first->second;
        if (var > target_n)
            throw std::invalid_argument("substitute: unassigned variable x" + std::to_string(var) +
                                        " beyond result ambient");
        return repl.emplace(var, Polynomial::variable(var, target_n)).first->second;
    };
    const int src_n = p.ambient();
    auto rec = [&](auto&& self, const Polynomial& q, int var) -> Polynomial {
        if (q.is_zero()) return Polynomial(target_n);
        while (var <= src_n && !uses_var(q, var)) ++var;
        if (var > src_n) return Polynomial::constant(q.constant_term(), target_n);
        const auto m = degree_in(q, var);
        Polynomial acc = self(self, coeff_in_var(q, var, static_cast<unsigned>(*m)), var + 1);
        const Polynomial& base = replacement(var);
        for (int k = *m - 1; k >= 0; --k) {
            acc = acc * base;
            Polynomial slice = coeff_in_var(q, var, static_cast<unsigned>(k));
            if (!slice.is_zero()) acc += self(self, slice, var + 1);
        }
        return acc;
    };
    return rec(rec, p, 1);
}

/// Reinterprets p in a larger ambient dimension (new variables unused).
inline Polynomial extend_ambient(const Polynomial& p, int n) {
    if (n < p.ambient()) throw std::invalid_argument("extend_ambient: cannot shrink");
    Polynomial r(n);
    for (const auto& [m, c] : p.terms()) {
        Monomial q(n);
        std::copy(m.exponents.begin(), m.exponents.end(), q.exponents.begin());
        r.add_term(q, c);
    }
    return r;
}

/// Drops unused trailing variables; requires them to be absent from p.
inline Polynomial contract_ambient(const Polynomial& p, int n) {
    if (n > p.ambient()) throw std::invalid_argument("contract_ambient: cannot grow");
    Polynomial r(n);
    for (const auto& [m, c] : p.terms()) {
        for (int i = n; i < m.ambient(); ++i)
            if (m.exponents[static_cast<std::size_t>(i)] != 0)
                throw std::invalid_argument("contract_ambient: variable x" + std::to_string(i + 1) +
                                            " still present");
        Monomial q(n);
        std::copy(m.exponents.begin(), m.exponents.begin() + n, q.exponents.begin());
        r.add_term(q, c);
    }
    return r;
}

inline Rational eval(const Polynomial& p, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != p.ambient())
        throw std::invalid_argument("eval: point dimension mismatch");
    Rational total = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (int i = 0; i < m.ambient(); ++i) {
            const auto e = m.exponents[static_cast<std::size_t>(i)];
            if (e != 0) t *= rat_pow(point[static_cast<std::size_t>(i)], e);
        }
        total += t;
    }
    return total;
}

/// Horner evaluation of a univariate polynomial at a polynomial argument.
inline Polynomial compose_univariate(const Polynomial& uni, const Polynomial& arg) {
    if (uni.ambient() != 1)
        throw std::invalid_argument("compose_univariate: first argument must be univariate");
    const int n = arg.ambient();
    auto d = degree_in(uni, 1);
    Polynomial r(n);
    if (!d) return r;
    for (int k = *d; k >= 0; --k) {
        Rational ck = uni.coeff([&] {
            Monomial m(1);
            m.exponents[0] = static_cast<std::uint32_t>(k);
            return m;
        }());
        r = r * arg + Polynomial::constant(ck, n);
    }
    return r;
}

/// Coefficients c0..cd of a univariate polynomial (zero polynomial -> {0}).
inline std::vector<Rational> univariate_coeffs(const Polynomial& p) {
    if (p.ambient() != 1) throw std::invalid_argument("univariate_coeffs: not univariate");
    auto d = degree_in(p, 1);
    std::vector<Rational> out(static_cast<std::size_t>(d ? *d + 1 : 1), Rational(0));
    for (const auto& [m, c] : p.terms()) out[m.exponents[0]] = c;
    return out;
}

// --- truncated arithmetic (used by the power-series inverse) ---

inline Polynomial truncate(const Polynomial& p, unsigned max_total_degree) {
    Polynomial r(p.ambient());
    for (const auto& [m, c] : p.terms())
        if (m.total_degree() <= max_total_degree) r.add_term(m, c);
    return r;
}

inline Polynomial mul_trunc(const Polynomial& a, const Polynomial& b, unsigned bound) {
    return Polynomial::multiply(a, b, &bound);
}

// --- printing ---

inline std::string var_name(int index) {
    if (index == 1) return "x";
    if (index == 2) return "y";
    return "x" + std::to_string(index);
}

/// Canonical textual form; parse(to_string(p)) == p.
inline std::string to_string(const Polynomial& p, const std::string& uni_name = "") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational a = negative ? Rational(-c) : c;
        std::string vars;
        for (int i = 0; i < m.ambient(); ++i) {
            const auto e = m.exponents[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += uni_name.empty() ? var_name(i + 1) : uni_name;
            if (e > 1) vars += "^" + std::to_string(e);
        }
        if (vars.empty()) {
            out += to_string(a);
        } else if (a == 1) {
            out += vars;
        } else {
            out += to_string(a) + "*" + vars;
        }
    }
    return out;
}

// --- the two-variable leading-term machinery ---

/// A term x^x_degree * y^y_degree under the y-major lexicographic order:
/// t1 > t2 iff y1 > y2, or y1 = y2 and x1 > x2.
struct LexTerm {
    std::uint32_t x_degree = 0;
    std::uint32_t y_degree = 0;

    bool operator==(const LexTerm& o) const {
        return x_degree == o.x_degree && y_degree == o.y_degree;
    }
    bool operator<(const LexTerm& o) const {
        if (y_degree != o.y_degree) return y_degree < o.y_degree;
        return x_degree < o.x_degree;
    }
};

/// Leading term and leading coefficient of a nonzero polynomial in x, y.
inline std::pair<LexTerm, Rational> leading_term_lex(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("leading_term_lex: zero polynomial");
    for (int v : support(p))
        if (v > 2)
            throw std::invalid_argument("leading_term_lex: polynomial involves x" +
                                        std::to_string(v) + ", only x and y are allowed");
    // Canonical order restricted to k[x,y] is exactly the y-major lex order,
    // so the leading term is the first stored term.
    const auto& [m, c] = *p.terms().begin();
    LexTerm t;
    t.x_degree = m.exponents.size() >= 1 ? m.exponents[0] : 0;
    t.y_degree = m.exponents.size() >= 2 ? m.exponents[1] : 0;
    return {t, c};
}

} // namespace nj
