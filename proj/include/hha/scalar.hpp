#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace hha {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : MathError {
    using MathError::MathError;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero threshold used by the float backend.
inline double& float_tolerance() {
    static double tau = 1e-9;
    return tau;
}

namespace detail {

// Writes |n| = s^2 * d with d squarefree.
inline void squarefree_split(const mpz_class& n, mpz_class& s, mpz_class& d) {
    mpz_class m = abs(n);
    s = 1;
    d = 1;
    if (m == 0) {
        s = 0;
        return;
    }
    for (mpz_class p = 2; p * p <= m; ++p) {
        if (p > 10000000) throw MathError("radicand too large to factor");
        while (m % (p * p) == 0) {
            m /= p * p;
            s *= p;
        }
        if (m % p == 0) {
            m /= p;
            d *= p;
        }
    }
    d *= m;
}

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

}  // namespace detail

// Element of Q, Q(sqrt D) or a float64 value. Exact values are stored as
// a + b*sqrt(D); b == 0 always means the value is rational and then D == 0.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : a_(v) {}
    Scalar(long v) : a_(v) {}
    Scalar(long long v) : a_(static_cast<long>(v)) {}
    Scalar(const mpq_class& q) : a_(q) { a_.canonicalize(); }
    Scalar(long num, long den) {
        if (den == 0) throw MathError("division by zero");
        a_ = mpq_class(num, den);
        a_.canonicalize();
    }

    static Scalar quadratic(const mpq_class& a, const mpq_class& b, long d) {
        Scalar s;
        s.a_ = a;
        if (b == 0) return s;
        if (d < 2) throw MathError("radicand must be a squarefree integer >= 2");
        mpz_class sq, rest;
        detail::squarefree_split(mpz_class(d), sq, rest);
        if (sq != 1) throw MathError("radicand " + std::to_string(d) + " is not squarefree");
        s.b_ = b;
        s.d_ = d;
        return s;
    }

    static Scalar from_double(double v) {
        Scalar s;
        s.float_ = true;
        s.f_ = v;
        return s;
    }

    bool is_float() const { return float_; }
    bool is_rational() const { return !float_ && d_ == 0; }
    long radicand() const { return d_; }
    const mpq_class& rational_part() const { return a_; }
    const mpq_class& sqrt_part() const { return b_; }

    double to_double() const {
        if (float_) return f_;
        return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
    }

    Scalar to_float() const { return from_double(to_double()); }

    bool is_zero() const {
        if (float_) return std::fabs(f_) <= float_tolerance();
        return a_ == 0 && b_ == 0;
    }

    int sign() const {
        if (float_) return is_zero() ? 0 : (f_ > 0 ? 1 : -1);
        int sa = sgn(a_);
        int sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // a and b*sqrt(D) have opposite signs: compare a^2 with b^2 D.
        mpq_class lhs = a_ * a_;
        mpq_class rhs = b_ * b_ * d_;
        int c = cmp(lhs, rhs);
        return c > 0 ? sa : (c < 0 ? sb : 0);
    }

    Scalar operator-() const {
        Scalar r = *this;
        if (float_) {
            r.f_ = -f_;
        } else {
            r.a_ = -a_;
            r.b_ = -b_;
        }
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        if (float_ || o.float_) return *this = from_double(to_double() + o.to_double());
        long d = common_radicand(o);
        a_ += o.a_;
        b_ += o.b_;
        d_ = d;
        normalize();
        return *this;
    }

    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar& operator*=(const Scalar& o) {
        if (float_ || o.float_) return *this = from_double(to_double() * o.to_double());
        long d = common_radicand(o);
        if (d == 0) {
            a_ *= o.a_;
            return *this;
        }
        mpq_class na = a_ * o.a_ + b_ * o.b_ * d;
        mpq_class nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        d_ = d;
        normalize();
        return *this;
    }

    Scalar inverse() const {
        if (is_zero()) throw MathError("division by zero");
        if (float_) return from_double(1.0 / f_);
        if (d_ == 0) return Scalar(mpq_class(1) / a_);
        mpq_class norm = a_ * a_ - b_ * b_ * d_;
        return quadratic(a_ / norm, -b_ / norm, d_);
    }

    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Scalar& x, const Scalar& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return (x - y).sign() >= 0; }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    // Exact square root when it lies in Q or a single quadratic field.
    static Scalar sqrt(const Scalar& x) {
        if (x.sign() < 0) throw MathError("square root of a negative number");
        if (x.float_) return from_double(std::sqrt(x.f_));
        if (x.d_ == 0) return sqrt_rational(x.a_);
        // (u + v sqrt D)^2 = x: u^2 solves t^2 - a t + b^2 D / 4 = 0.
        mpq_class disc = x.a_ * x.a_ - x.b_ * x.b_ * x.d_;
        Scalar sd = sqrt_rational(disc);
        if (!sd.is_rational()) throw MathError("square root leaves the quadratic field");
        for (int s : {1, -1}) {
            mpq_class t = (x.a_ + s * sd.a_) / 2;
            if (t <= 0) continue;
            Scalar u = sqrt_rational(t);
            if (!u.is_rational()) continue;
            mpq_class v = x.b_ / (2 * u.a_);
            Scalar r = quadratic(u.a_, v, x.d_);
            if (r.sign() < 0) r = -r;
            return r;
        }
        throw MathError("square root leaves the quadratic field");
    }

    static Scalar sqrt_rational(const mpq_class& q) {
        if (q < 0) throw MathError("square root of a negative number");
        if (q == 0) return Scalar();
        mpz_class pq = q.get_num() * q.get_den();
        mpz_class s, d;
        detail::squarefree_split(pq, s, d);
        mpq_class coef(s, q.get_den());
        coef.canonicalize();
        if (d == 1) return Scalar(coef);
        if (!d.fits_slong_p()) throw MathError("radicand too large");
        return quadratic(0, coef, d.get_si());
    }

    std::string str() const {
        if (float_) {
            char buf[64];
            double v = is_zero() ? 0.0 : f_;
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }
        if (d_ == 0) return detail::rational_str(a_);
        std::string out;
        if (a_ != 0) out = detail::rational_str(a_);
        mpq_class mag = ::abs(b_);
        std::string radical = "sqrt(" + std::to_string(d_) + ")";
        std::string body = mag == 1 ? radical : detail::rational_str(mag) + "*" + radical;
        if (b_ < 0)
            out += "-" + body;
        else
            out += (out.empty() ? "" : "+") + body;
        return out;
    }

    // True when the value prints as a single signed monomial.
    bool is_single_term() const { return float_ || a_ == 0 || b_ == 0; }

private:
    long common_radicand(const Scalar& o) const {
        if (d_ == 0) return o.d_;
        if (o.d_ == 0 || o.d_ == d_) return d_;
        throw FieldMismatch("mixing Q(sqrt(" + std::to_string(d_) + ")) and Q(sqrt(" +
                            std::to_string(o.d_) + "))");
    }

    void normalize() {
        a_.canonicalize();
        b_.canonicalize();
        if (b_ == 0) d_ = 0;
    }

    mpq_class a_{0};
    mpq_class b_{0};
    long d_ = 0;
    bool float_ = false;
    double f_ = 0.0;
};

class Complex {
public:
    Complex() = default;
    Complex(int v) : re_(v) {}
    Complex(long v) : re_(v) {}
    Complex(const Scalar& re) : re_(re) {}
    Complex(const Scalar& re, const Scalar& im) : re_(re), im_(im) {}

    static Complex i() { return Complex(Scalar(0), Scalar(1)); }

    const Scalar& re() const { return re_; }
    const Scalar& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_float() const { return re_.is_float() || im_.is_float(); }

    Complex conj() const { return Complex(re_, -im_); }
    Scalar norm2() const { return re_ * re_ + im_ * im_; }
    Complex to_float() const { return Complex(re_.to_float(), im_.to_float()); }

    Complex operator-() const { return Complex(-re_, -im_); }
    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            im_ = Scalar();
            return *this;
        }
        Scalar r = re_ * o.re_ - im_ * o.im_;
        Scalar m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    Complex inverse() const {
        if (is_zero()) throw MathError("division by zero");
        Scalar n = norm2().inverse();
        return Complex(re_ * n, -im_ * n);
    }
    Complex& operator/=(const Complex& o) { return *this *= o.inverse(); }

    friend Complex operator+(Complex x, const Complex& y) { return x += y; }
    friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
    friend Complex operator*(Complex x, const Complex& y) { return x *= y; }
    friend Complex operator/(Complex x, const Complex& y) { return x /= y; }
    friend bool operator==(const Complex& x, const Complex& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string imag;
        bool negative = false;
        if (im_.is_single_term()) {
            negative = im_.sign() < 0;
            Scalar mag = im_.abs();
            imag = mag == Scalar(1) ? "i" : mag.str() + "*i";
        } else {
            imag = "(" + im_.str() + ")*i";
        }
        if (re_.is_zero()) return (negative ? "-" : "") + imag;
        std::string real = re_.is_single_term() ? re_.str() : "(" + re_.str() + ")";
        return real + (negative ? "-" : "+") + imag;
    }

private:
    Scalar re_;
    Scalar im_;
};

}  // namespace hha
