#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hha/scalar.hpp"

namespace hha {

inline double magnitude(const Scalar& s) { return std::fabs(s.to_double()); }
inline double magnitude(const Complex& c) {
    return std::hypot(c.re().to_double(), c.im().to_double());
}
inline bool uses_float(const Scalar& s) { return s.is_float(); }
inline bool uses_float(const Complex& c) { return c.is_float(); }
inline Scalar conj(const Scalar& s) { return s; }
inline Complex conj(const Complex& c) { return c.conj(); }

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix conjugate() const {
        Matrix t(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = conj(data_[k]);
        return t;
    }

    Matrix adjoint() const { return transpose().conjugate(); }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool uses_float() const {
        for (const auto& x : data_)
            if (hha::uses_float(x)) return true;
        return false;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw MathError("matrix dimension mismatch");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
            }
        return p;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }

    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x = s * x;
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (a.data_[k] != b.data_[k]) return false;
        return true;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<Scalar>;
using ComplexMatrix = Matrix<Complex>;

inline ComplexMatrix complexify(const RealMatrix& m) {
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex(m(i, j));
    return c;
}

// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    bool fl = m.uses_float();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = m.rows();
        double best_mag = 0;
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            if (!fl) {
                best = r;
                break;
            }
            double mag = magnitude(m(r, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best == m.rows()) continue;
        if (best != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(best, c), m(row, c));
        T inv = T(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m(row, c).is_zero()) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            T f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
            m(r, col) = T(0);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return row_reduce(m).size();
}

// Some solution of A x = b, or nothing when the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = row_reduce(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    std::vector<T> x(a.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
    return x;
}

template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& a) {
    Matrix<T> m = a;
    auto piv = row_reduce(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(a.cols());
        v[free] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw MathError("inverse of a non-square matrix");
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = row_reduce(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw MathError("matrix is singular");
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class T>
T determinant(Matrix<T> m) {
    std::size_t n = m.rows();
    if (m.cols() != n) throw MathError("determinant of a non-square matrix");
    bool fl = m.uses_float();
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        double best_mag = 0;
        for (std::size_t r = col; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            if (!fl) {
                best = r;
                break;
            }
            double mag = magnitude(m(r, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best == n) return T(0);
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(best, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        T inv = T(1) / m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            T f = m(r, col) * inv;
            for (std::size_t c = col; c < n; ++c)
                if (!m(col, c).is_zero()) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

// Pfaffian of a skew matrix by skew Schur complements.
template <class T>
T pfaffian(Matrix<T> a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw MathError("pfaffian of a non-square matrix");
    if (n % 2 != 0) throw MathError("pfaffian of an odd-dimensional matrix");
    T pf(1);
    for (std::size_t k = 0; k < n; k += 2) {
        std::size_t piv = n;
        for (std::size_t j = k + 1; j < n; ++j)
            if (!a(k, j).is_zero()) {
                piv = j;
                break;
            }
        if (piv == n) return T(0);
        if (piv != k + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(k + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(a(r, piv), a(r, k + 1));
            pf = -pf;
        }
        T p = a(k, k + 1);
        pf *= p;
        T inv = T(1) / p;
        for (std::size_t i = k + 2; i < n; ++i)
            for (std::size_t j = k + 2; j < n; ++j) {
                const T& ui = a(k, i);
                const T& vi = a(k + 1, i);
                const T& uj = a(k, j);
                const T& vj = a(k + 1, j);
                if ((vi.is_zero() || uj.is_zero()) && (ui.is_zero() || vj.is_zero())) continue;
                a(i, j) += (vi * uj - ui * vj) * inv;
            }
    }
    return pf;
}

enum class Definiteness {
    positive_definite,
    positive_semidefinite,
    negative_definite,
    negative_semidefinite,
    indefinite,
    zero
};

inline std::string to_string(Definiteness d) {
    switch (d) {
        case Definiteness::positive_definite: return "positive_definite";
        case Definiteness::positive_semidefinite: return "positive_semidefinite";
        case Definiteness::negative_definite: return "negative_definite";
        case Definiteness::negative_semidefinite: return "negative_semidefinite";
        case Definiteness::indefinite: return "indefinite";
        case Definiteness::zero: return "zero";
    }
    return "unknown";
}

// Inertia of a Hermitian matrix by congruence; exact in exact arithmetic.
inline Definiteness hermitian_definiteness(ComplexMatrix m) {
    std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) != m(j, i).conj()) throw MathError("matrix is not Hermitian");
    int pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        int s = m(k, k).re().sign();
        if (s == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (!m(k, j).is_zero()) return Definiteness::indefinite;
            continue;
        }
        (s > 0 ? pos : neg)++;
        Complex inv = Complex(m(k, k).re().inverse());
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            Complex f = m(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j)
                if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
        }
    }
    int sz = static_cast<int>(n);
    if (pos == sz && sz > 0) return Definiteness::positive_definite;
    if (neg == sz && sz > 0) return Definiteness::negative_definite;
    if (pos > 0 && neg > 0) return Definiteness::indefinite;
    if (pos > 0) return Definiteness::positive_semidefinite;
    if (neg > 0) return Definiteness::negative_semidefinite;
    return Definiteness::zero;
}

}  // namespace hha
