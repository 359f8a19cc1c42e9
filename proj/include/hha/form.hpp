#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hha/scalar.hpp"

namespace hha {

using Mask = std::uint64_t;

struct DegreeOverflow : MathError {
    using MathError::MathError;
};

inline int popcount(Mask m) { return std::popcount(m); }

// Sign of theta^{m1} ^ theta^{m2} relative to theta^{m1|m2}; masks must be disjoint.
inline int merge_sign(Mask m1, Mask m2) {
    int inversions = 0;
    while (m2) {
        int b = std::countr_zero(m2);
        m2 &= m2 - 1;
        inversions += popcount(b + 1 >= 64 ? 0 : (m1 >> (b + 1)));
    }
    return (inversions & 1) ? -1 : 1;
}

inline std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline Mask indices_mask(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) m |= Mask(1) << i;
    return m;
}

// Element of the exterior algebra on `dim` generators theta^0..theta^{dim-1}.
// Keys are bitmasks of strictly increasing index tuples; zero terms are never stored.
class Form {
public:
    using Terms = std::map<Mask, Complex>;

    Form() = default;
    explicit Form(int dim) : dim_(dim) {
        if (dim < 0 || dim > 64) throw MathError("form dimension out of range");
    }

    static Form scalar(int dim, const Complex& c) {
        Form f(dim);
        f.add_term(0, c);
        return f;
    }
    static Form generator(int dim, int index, const Complex& c = Complex(1)) {
        if (index < 0 || index >= dim) throw MathError("generator index out of range");
        Form f(dim);
        f.add_term(Mask(1) << index, c);
        return f;
    }
    static Form monomial(int dim, const std::vector<int>& idx, const Complex& c = Complex(1)) {
        Form g = scalar(dim, c);
        for (int i : idx) g = g.wedge(generator(dim, i));
        return g;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Complex coefficient(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Complex() : it->second;
    }

    void add_term(Mask m, const Complex& c) {
        if (c.is_zero()) return;
        if (dim_ < 64 && (m >> dim_) != 0) throw MathError("monomial outside the frame");
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int max_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, popcount(m));
        return d;
    }

    // Degree of a homogeneous form; -1 for the zero form.
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) {
            int k = popcount(m);
            if (d >= 0 && k != d) throw MathError("form is not homogeneous");
            d = k;
        }
        return d;
    }

    Form part(const std::function<bool(Mask)>& keep) const {
        Form out(dim_);
        for (auto& [m, c] : terms_)
            if (keep(m)) out.terms_.emplace(m, c);
        return out;
    }

    Form& operator+=(const Form& o) {
        check_dim(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_dim(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Form& operator*=(const Complex& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            if (it->second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }
    Form operator-() const {
        Form r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Complex& s, Form a) { return a *= s; }
    friend Form operator*(Form a, const Complex& s) { return a *= s; }
    friend bool operator==(const Form& a, const Form& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    Form wedge(const Form& o) const {
        check_dim(o);
        if (!is_zero() && !o.is_zero() && max_degree() + o.max_degree() > dim_)
            throw DegreeOverflow("wedge of degrees " + std::to_string(max_degree()) + " and " +
                                 std::to_string(o.max_degree()) + " exceeds dimension " +
                                 std::to_string(dim_));
        return wedge_unchecked(o);
    }

    // Wedge that silently drops terms beyond the top degree.
    Form wedge_unchecked(const Form& o) const {
        check_dim(o);
        Form out(dim_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) {
                if (m1 & m2) continue;
                Complex c = c1 * c2;
                if (merge_sign(m1, m2) < 0) c = -c;
                out.add_term(m1 | m2, c);
            }
        return out;
    }

    Form power(int k) const {
        Form p = scalar(dim_, Complex(1));
        for (int i = 0; i < k; ++i) p = p.wedge_unchecked(*this);
        return p;
    }

    // Interior product with the vector whose frame components are v[a] = theta^a(v).
    Form contract(const std::vector<Complex>& v) const {
        Form out(dim_);
        for (auto& [m, c] : terms_) {
            int pos = 0;
            for (int a : mask_indices(m)) {
                if (!v[a].is_zero()) {
                    Complex t = c * v[a];
                    if (pos & 1) t = -t;
                    out.add_term(m & ~(Mask(1) << a), t);
                }
                ++pos;
            }
        }
        return out;
    }

    // form(v1, ..., vk) with the determinant normalization.
    Complex evaluate(const std::vector<std::vector<Complex>>& vs) const {
        Form f = *this;
        for (auto& v : vs) f = f.contract(v);
        return f.coefficient(0);
    }

    // Algebra map sending theta^a to images[a] (1-forms over any frame size).
    Form substitute(const std::vector<Form>& images) const {
        if (static_cast<int>(images.size()) != dim_) throw MathError("substitution size mismatch");
        int target = images.empty() ? 0 : images[0].dim();
        Form out(target);
        for (auto& [m, c] : terms_) {
            Form t = scalar(target, c);
            for (int a : mask_indices(m)) {
                t = t.wedge_unchecked(images[a]);
                if (t.is_zero()) break;
            }
            out += t;
        }
        return out;
    }

    // Map theta^a -> coef[a] * theta^{perm[a]} for a permutation perm.
    Form permute(const std::vector<int>& perm, const std::vector<Complex>& coef,
                 bool conjugate_coefficients = false) const {
        Form out(dim_);
        for (auto& [m, c] : terms_) {
            Complex t = conjugate_coefficients ? c.conj() : c;
            Mask acc = 0;
            int sign = 1;
            for (int a : mask_indices(m)) {
                t *= coef[a];
                Mask bit = Mask(1) << perm[a];
                if (merge_sign(acc, bit) < 0) sign = -sign;
                acc |= bit;
            }
            out.add_term(acc, sign < 0 ? -t : t);
        }
        return out;
    }

    Form map_coefficients(const std::function<Complex(const Complex&)>& f) const {
        Form out(dim_);
        for (auto& [m, c] : terms_) out.add_term(m, f(c));
        return out;
    }

    std::string str(const std::function<std::string(int)>& name) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [m, c] : terms_) {
            std::string mono;
            for (int a : mask_indices(m)) mono += (mono.empty() ? "" : "^") + name(a);
            bool negative = false;
            std::string coef;
            if (c.is_real() && c.re().is_single_term()) {
                negative = c.re().sign() < 0;
                Scalar mag = c.re().abs();
                coef = (mag == Scalar(1) && !mono.empty()) ? "" : mag.str();
            } else if (c.re().is_zero() && c.im().is_single_term()) {
                negative = c.im().sign() < 0;
                coef = Complex(Scalar(0), c.im().abs()).str();
            } else {
                coef = "(" + c.str() + ")";
            }
            std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
            if (out.empty())
                out = (negative ? "-" : "") + term;
            else
                out += (negative ? " - " : " + ") + term;
        }
        return out;
    }

private:
    void check_dim(const Form& o) const {
        if (o.dim_ != dim_) throw MathError("forms live on frames of different size");
    }

    int dim_ = 0;
    Terms terms_;
};

// Extends generator differentials dgen[a] = d theta^a as an antiderivation.
inline Form antiderivation(const Form& f, const std::vector<Form>& dgen) {
    Form out(f.dim());
    for (auto& [m, c] : f.terms()) {
        int pos = 0;
        for (int a : mask_indices(m)) {
            if (!dgen[a].is_zero()) {
                Form rest(f.dim());
                rest.add_term(m & ~(Mask(1) << a), (pos & 1) ? -c : c);
                out += dgen[a].wedge_unchecked(rest);
            }
            ++pos;
        }
    }
    return out;
}

// Generator names for the complex frame z1..zN, zb1..zbN.
inline std::function<std::string(int)> frame_names(int n_holo) {
    return [n_holo](int a) {
        return a < n_holo ? "z" + std::to_string(a + 1) : "zb" + std::to_string(a - n_holo + 1);
    };
}

inline std::string real_name(int a) { return "e" + std::to_string(a + 1); }

}  // namespace hha
