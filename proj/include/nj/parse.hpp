#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "nj/errors.hpp"
#include "nj/polynomial.hpp"

namespace nj {

namespace detail {

// Recursive-descent parser for the expression grammar:
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := atom ['^' nat]
//   atom    := rational | variable | '(' expr ')'
//   rational:= nat ['/' nat+]
//   variable:= 'x' | 'y' | 'z' | 'x' nat      (x1=x, x2=y, x3=z)
// Whitespace is ignored between tokens; '^' binds tighter than '*' binds
// tighter than '+'/'-'; unary minus only at expression head or after '('.
class ExprParser {
  public:
    // uni_letter == 0: full n-variable grammar. Otherwise the single
    // allowed variable letter (e.g. 'T' or 'x'), parsed into ambient 1.
    ExprParser(std::string_view text, int n, char uni_letter)
      : s_(text), n_(uni_letter ? 1 : n), uni_letter_(uni_letter) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Integer nat() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("number expected");
        Integer v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return v;
    }

    unsigned small_nat(const char* what) {
        const std::size_t at = pos_;
        Integer v = nat();
        if (v > 100000) {
            pos_ = at;
            fail(std::string(what) + " too large");
        }
        return static_cast<unsigned>(v);
    }

    Polynomial expr() {
        bool negate = eat('-');
        Polynomial p = term();
        if (negate) p = -p;
        for (;;) {
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }

    Polynomial term() {
        Polynomial p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    Polynomial factor() {
        Polynomial a = atom();
        if (eat('^')) return nj::pow(a, small_nat("exponent"));
        return a;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = nat();
            Integer den = 1;
            if (eat('/')) {
                const std::size_t at = pos_;
                den = nat();
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
            }
            return Polynomial::constant(Rational(num, den), n_);
        }
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("')' expected");
            return p;
        }
        return variable();
    }

    Polynomial variable() {
        const std::size_t at = pos_;
        const char c = s_[pos_];
        if (uni_letter_) {
            if (c != uni_letter_) fail(std::string("'") + uni_letter_ + "' or number expected");
            ++pos_;
            return Polynomial::variable(1, 1);
        }
        int index = 0;
        if (c == 'y') {
            ++pos_;
            index = 2;
        } else if (c == 'z') {
            ++pos_;
            index = 3;
        } else if (c == 'x') {
            ++pos_;
            // digits directly after 'x' select x_K; bare 'x' is x1
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                index = static_cast<int>(small_nat("variable index"));
                if (index == 0) {
                    pos_ = at;
                    fail("variable index must be >= 1");
                }
            } else {
                index = 1;
            }
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        if (index > n_) {
            pos_ = at;
            fail("variable x" + std::to_string(index) + " exceeds ambient dimension " +
                 std::to_string(n_));
        }
        return Polynomial::variable(index, n_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int n_;
    char uni_letter_;
};

} // namespace detail

/// Parses an expression in the n-variable grammar into canonical form.
inline Polynomial parse_polynomial(std::string_view text, int n) {
    return detail::ExprParser(text, n, 0).run();
}

/// Parses a univariate expression whose single variable is written as
/// `letter` ('T' or 'x'); the result has ambient dimension 1.
inline Polynomial parse_univariate(std::string_view text, char letter) {
    return detail::ExprParser(text, 1, letter).run();
}

} // namespace nj
