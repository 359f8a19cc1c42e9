#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hha/form.hpp"
#include "hha/matrix.hpp"

namespace hha {

using Vec = std::vector<Scalar>;

struct JacobiViolation : MathError {
    JacobiViolation(int i, int j, int k)
        : MathError("Jacobi identity fails on (e" + std::to_string(i + 1) + ", e" +
                    std::to_string(j + 1) + ", e" + std::to_string(k + 1) + ")"),
          triple{i, j, k} {}
    std::array<int, 3> triple;
};

struct NotAntisymmetric : MathError {
    NotAntisymmetric(int i, int j)
        : MathError("bracket table is not antisymmetric at (e" + std::to_string(i + 1) + ", e" +
                    std::to_string(j + 1) + ")"),
          pair{i, j} {}
    std::array<int, 2> pair;
};

// Real Lie algebra in a basis e_0..e_{dim-1}: [e_i, e_j] = sum_k c(i,j)[k] e_k.
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(int dim, std::string name = "")
        : name_(std::move(name)), dim_(dim), c_(static_cast<std::size_t>(dim) * dim, Vec(dim)) {}

    // Entries (i, j, k, v) add v e_k to [e_i, e_j]; the transposed entry is implied.
    static LieAlgebra from_brackets(int dim, const std::vector<std::tuple<int, int, int, Scalar>>& entries,
                                    std::string name = "") {
        LieAlgebra g(dim, std::move(name));
        std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
        for (auto& [i, j, k, v] : entries) {
            if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
                throw InputError("bracket index out of range");
            if (i == j) {
                if (!v.is_zero()) throw NotAntisymmetric(i, j);
                continue;
            }
            seen[i][j] = true;
            g.at(i, j)[k] += v;
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (i >= j) continue;
                if (seen[i][j] && seen[j][i]) {
                    for (int k = 0; k < dim; ++k)
                        if (g.at(i, j)[k] != -g.at(j, i)[k]) throw NotAntisymmetric(i, j);
                } else if (seen[j][i]) {
                    for (int k = 0; k < dim; ++k) g.at(i, j)[k] = -g.at(j, i)[k];
                } else {
                    for (int k = 0; k < dim; ++k) g.at(j, i)[k] = -g.at(i, j)[k];
                }
            }
        return g;
    }

    // de^k = -sum_{i<j} c^k_ij e^i ^ e^j, read backwards.
    static LieAlgebra from_structure_equations(const std::vector<Form>& de, std::string name = "") {
        int dim = static_cast<int>(de.size());
        LieAlgebra g(dim, std::move(name));
        for (int k = 0; k < dim; ++k) {
            if (de[k].dim() != dim) throw InputError("structure equation on the wrong coframe");
            for (auto& [m, c] : de[k].terms()) {
                if (popcount(m) != 2) throw InputError("structure equation for e" + std::to_string(k + 1) +
                                                       " is not a 2-form");
                if (!c.is_real()) throw InputError("structure equations must be real");
                auto idx = mask_indices(m);
                g.at(idx[0], idx[1])[k] = -c.re();
                g.at(idx[1], idx[0])[k] = c.re();
            }
        }
        return g;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    int dim() const { return dim_; }

    const Vec& bracket(int i, int j) const { return c_[static_cast<std::size_t>(i) * dim_ + j]; }
    Vec& at(int i, int j) { return c_[static_cast<std::size_t>(i) * dim_ + j]; }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec out(dim_);
        for (int i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                if (y[j].is_zero() || i == j) continue;
                const Vec& b = bracket(i, j);
                Scalar f = x[i] * y[j];
                for (int k = 0; k < dim_; ++k)
                    if (!b[k].is_zero()) out[k] += f * b[k];
            }
        }
        return out;
    }

    Vec basis_vector(int i) const {
        Vec v(dim_);
        v[i] = Scalar(1);
        return v;
    }

    bool rational_constants() const {
        for (auto& v : c_)
            for (auto& s : v)
                if (!s.is_rational()) return false;
        return true;
    }

    bool uses_float() const {
        for (auto& v : c_)
            for (auto& s : v)
                if (s.is_float()) return true;
        return false;
    }

    LieAlgebra to_float() const {
        LieAlgebra g = *this;
        for (auto& v : g.c_)
            for (auto& s : v) s = s.to_float();
        return g;
    }

    // de^k as 2-forms on the real coframe.
    std::vector<Form> structure_equations() const {
        std::vector<Form> de(dim_, Form(dim_));
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                const Vec& b = bracket(i, j);
                for (int k = 0; k < dim_; ++k)
                    if (!b[k].is_zero())
                        de[k].add_term((Mask(1) << i) | (Mask(1) << j), Complex(-b[k]));
            }
        return de;
    }

    // Chevalley-Eilenberg differential of a form on the real coframe.
    Form differential(const Form& f) const { return antiderivation(f, structure_equations()); }

    // Throws JacobiViolation on the first failing triple i < j < k.
    void validate() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (i != j)
                    for (int k = 0; k < dim_; ++k)
                        if (bracket(i, j)[k] != -bracket(j, i)[k]) throw NotAntisymmetric(i, j);
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                for (int k = j + 1; k < dim_; ++k) {
                    Vec ei = basis_vector(i), ej = basis_vector(j), ek = basis_vector(k);
                    Vec s = bracket(bracket(ei, ej), ek);
                    Vec t = bracket(bracket(ej, ek), ei);
                    Vec u = bracket(bracket(ek, ei), ej);
                    for (int l = 0; l < dim_; ++l)
                        if (!(s[l] + t[l] + u[l]).is_zero()) throw JacobiViolation(i, j, k);
                }
    }

    RealMatrix ad(const Vec& x) const {
        RealMatrix m(dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            Vec col = bracket(x, basis_vector(j));
            for (int i = 0; i < dim_; ++i) m(i, j) = col[i];
        }
        return m;
    }

    RealMatrix killing_form() const {
        std::vector<RealMatrix> ads;
        for (int i = 0; i < dim_; ++i) ads.push_back(ad(basis_vector(i)));
        RealMatrix b(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j) {
                RealMatrix p = ads[i] * ads[j];
                Scalar tr;
                for (int k = 0; k < dim_; ++k) tr += p(k, k);
                b(i, j) = tr;
                b(j, i) = tr;
            }
        return b;
    }

    // Span of [A, B] reduced to a basis.
    std::vector<Vec> bracket_span(const std::vector<Vec>& a, const std::vector<Vec>& b) const {
        std::vector<Vec> gens;
        for (auto& x : a)
            for (auto& y : b) gens.push_back(bracket(x, y));
        return reduce_span(gens);
    }

    std::vector<Vec> reduce_span(const std::vector<Vec>& gens) const {
        if (gens.empty()) return {};
        RealMatrix m(gens.size(), dim_);
        for (std::size_t r = 0; r < gens.size(); ++r)
            for (int c = 0; c < dim_; ++c) m(r, c) = gens[r][c];
        auto piv = row_reduce(m);
        std::vector<Vec> basis;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            Vec v(dim_);
            for (int c = 0; c < dim_; ++c) v[c] = m(r, c);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<Vec> full_basis() const {
        std::vector<Vec> b;
        for (int i = 0; i < dim_; ++i) b.push_back(basis_vector(i));
        return b;
    }

    std::vector<Vec> derived_algebra() const { return bracket_span(full_basis(), full_basis()); }

    std::vector<Vec> center() const {
        // x is central iff sum_i x_i [e_i, e_j] = 0 for all j.
        RealMatrix m(static_cast<std::size_t>(dim_) * dim_, dim_);
        for (int j = 0; j < dim_; ++j)
            for (int i = 0; i < dim_; ++i) {
                const Vec& b = bracket(i, j);
                for (int k = 0; k < dim_; ++k) m(static_cast<std::size_t>(j) * dim_ + k, i) = b[k];
            }
        return nullspace(m);
    }

private:
    std::string name_;
    int dim_ = 0;
    std::vector<Vec> c_;
};

struct AlgebraProfile {
    std::optional<int> nilpotent_step;  // empty when not nilpotent
    bool solvable = false;
    bool unimodular = false;
    bool semisimple = false;
    int center_dim = 0;
    int derived_dim = 0;
    std::vector<int> lower_central_dims;
    std::vector<int> derived_series_dims;
};

inline AlgebraProfile algebra_profile(const LieAlgebra& g) {
    AlgebraProfile p;
    auto all = g.full_basis();
    std::vector<Vec> cur = all;
    p.lower_central_dims.push_back(g.dim());
    for (int step = 1; step <= g.dim() + 1; ++step) {
        auto next = g.bracket_span(all, cur);
        p.lower_central_dims.push_back(static_cast<int>(next.size()));
        if (next.empty()) {
            p.nilpotent_step = step;
            break;
        }
        if (next.size() == cur.size()) break;
        cur = next;
    }
    cur = all;
    p.derived_series_dims.push_back(g.dim());
    while (true) {
        auto next = g.bracket_span(cur, cur);
        p.derived_series_dims.push_back(static_cast<int>(next.size()));
        if (next.empty()) {
            p.solvable = true;
            break;
        }
        if (next.size() == cur.size()) break;
        cur = next;
    }
    p.unimodular = true;
    for (int i = 0; i < g.dim(); ++i) {
        Scalar tr;
        for (int k = 0; k < g.dim(); ++k) tr += g.bracket(i, k)[k];
        if (!tr.is_zero()) p.unimodular = false;
    }
    p.semisimple = g.dim() > 0 && !determinant(g.killing_form()).is_zero();
    p.center_dim = static_cast<int>(g.center().size());
    p.derived_dim = static_cast<int>(g.derived_algebra().size());
    return p;
}

struct AlgebraInvariants {
    std::vector<Vec> center;
    std::vector<Vec> derived;
    bool rational_constants = false;
};

inline AlgebraInvariants algebra_invariants(const LieAlgebra& g) {
    return {g.center(), g.derived_algebra(), g.rational_constants()};
}

}  // namespace hha
