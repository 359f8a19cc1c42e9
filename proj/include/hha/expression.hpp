#pragma once

#include <cctype>
#include <functional>
#include <string>

#include "hha/form.hpp"

namespace hha {

// Resolves a generator name such as "e3", "z2" or "zb1" to a frame index, or -1.
using NameResolver = std::function<int(const std::string&)>;

inline NameResolver real_resolver(int dim) {
    return [dim](const std::string& s) -> int {
        if (s.size() < 2 || s[0] != 'e') return -1;
        for (std::size_t k = 1; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return -1;
        int i = std::stoi(s.substr(1));
        return (i >= 1 && i <= dim) ? i - 1 : -1;
    };
}

inline NameResolver frame_resolver(int n_holo) {
    return [n_holo](const std::string& s) -> int {
        std::size_t start = 0;
        int offset = 0;
        if (s.rfind("zb", 0) == 0) {
            start = 2;
            offset = n_holo;
        } else if (s.rfind("z", 0) == 0) {
            start = 1;
        } else {
            return -1;
        }
        if (start >= s.size()) return -1;
        for (std::size_t k = start; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return -1;
        int i = std::stoi(s.substr(start));
        return (i >= 1 && i <= n_holo) ? offset + i - 1 : -1;
    };
}

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(const std::string& text, int dim, NameResolver resolve)
        : s_(text), dim_(dim), resolve_(std::move(resolve)) {}

    Form parse() {
        Form f = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("cannot parse \"" + s_ + "\" at column " + std::to_string(pos_ + 1) + ": " +
                         msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Form expr() {
        Form f = term();
        while (true) {
            if (accept('+'))
                f += term();
            else if (accept('-'))
                f -= term();
            else
                return f;
        }
    }

    Form term() {
        Form f = unary();
        while (true) {
            if (accept('*') || accept('^')) {
                Form g = unary();
                try {
                    f = f.wedge(g);
                } catch (const DegreeOverflow& e) {
                    fail(e.what());
                }
            } else if (accept('/')) {
                Form g = unary();
                if (g.max_degree() > 0) fail("division by a form of positive degree");
                Complex c = g.coefficient(0);
                if (c.is_zero()) fail("division by zero");
                f *= c.inverse();
            } else {
                return f;
            }
        }
    }

    Form unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return atom();
    }

    Form atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Form f = expr();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string word = s_.substr(start, pos_ - start);
            if (word == "i") return Form::scalar(dim_, Complex::i());
            if (word == "sqrt") {
                if (!accept('(')) fail("expected '(' after sqrt");
                Form arg = expr();
                if (!accept(')')) fail("expected ')'");
                if (arg.max_degree() > 0 || !arg.coefficient(0).is_real())
                    fail("sqrt needs a real scalar argument");
                try {
                    return Form::scalar(dim_, Complex(Scalar::sqrt(arg.coefficient(0).re())));
                } catch (const MathError& e) {
                    fail(e.what());
                }
            }
            int idx = resolve_ ? resolve_(word) : -1;
            if (idx < 0) {
                pos_ = start;
                fail("unknown symbol '" + word + "'");
            }
            return Form::generator(dim_, idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Form number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits = s_.substr(start, pos_ - start);
        mpq_class q(digits);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string frac = s_.substr(fs, pos_ - fs);
            if (!frac.empty()) {
                mpz_class den = 1;
                for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
                q += mpq_class(mpz_class(frac), den);
            }
        }
        q.canonicalize();
        return Form::scalar(dim_, Complex(Scalar(q)));
    }

    std::string s_;
    std::size_t pos_ = 0;
    int dim_;
    NameResolver resolve_;
};

}  // namespace detail

inline Form parse_form(const std::string& text, int dim, const NameResolver& resolve) {
    try {
        return detail::ExpressionParser(text, dim, resolve).parse();
    } catch (const MathError& e) {
        throw InputError("cannot evaluate \"" + text + "\": " + e.what());
    }
}

inline Complex parse_complex(const std::string& text) {
    return parse_form(text, 0, nullptr).coefficient(0);
}

// Parses "p/q", "p/q+r/s*sqrt(D)" or any real scalar expression.
inline Scalar parse_scalar(const std::string& text) {
    Complex c = parse_complex(text);
    if (!c.is_real()) throw InputError("expected a real scalar, got \"" + text + "\"");
    return c.re();
}

}  // namespace hha
