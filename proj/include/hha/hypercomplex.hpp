#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "hha/liealg.hpp"

namespace hha {

// Endomorphisms are real matrices acting on vectors, L e_j = sum_i L(i,j) e_i.
// Row k then lists the coefficients of L e^k acting on 1-forms by pullback.
struct HypercomplexStructure {
    RealMatrix I;
    RealMatrix J;
    RealMatrix K() const { return I * J; }
};

struct NonIntegrable : MathError {
    NonIntegrable(const std::string& which, int x, int y)
        : MathError("Nijenhuis tensor of " + which + " is nonzero on (e" + std::to_string(x + 1) +
                    ", e" + std::to_string(y + 1) + ")"),
          structure(which),
          pair{x, y} {}
    std::string structure;
    std::array<int, 2> pair;
};

struct NotHypercomplex : MathError {
    using MathError::MathError;
};

// Blockwise I e^{4k-3} = -e^{4k-2}, I e^{4k-1} = -e^{4k}, J e^{4k-3} = -e^{4k-1}, J e^{4k-2} = e^{4k}.
inline HypercomplexStructure standard_structure(int dim) {
    if (dim % 4 != 0) throw InputError("dimension must be a multiple of 4");
    HypercomplexStructure s{RealMatrix(dim, dim), RealMatrix(dim, dim)};
    for (int b = 0; b < dim; b += 4) {
        s.I(b + 1, b) = 1;
        s.I(b, b + 1) = -1;
        s.I(b + 3, b + 2) = 1;
        s.I(b + 2, b + 3) = -1;
        s.J(b + 2, b) = 1;
        s.J(b, b + 2) = -1;
        s.J(b + 3, b + 1) = -1;
        s.J(b + 1, b + 3) = 1;
    }
    return s;
}

inline RealMatrix quaternion_combination(const HypercomplexStructure& s, const std::array<Scalar, 3>& p) {
    RealMatrix k = s.K();
    RealMatrix out(s.I.rows(), s.I.cols());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = p[0] * s.I(i, j) + p[1] * s.J(i, j) + p[2] * k(i, j);
    return out;
}

// N_L(X,Y) = [LX,LY] - L[LX,Y] - L[X,LY] - [X,Y] on basis pairs; returns the first failing pair.
inline std::optional<std::array<int, 2>> nijenhuis_failure(const LieAlgebra& g, const RealMatrix& L) {
    int n = g.dim();
    std::vector<Vec> Le;
    for (int i = 0; i < n; ++i) Le.push_back(L.apply(g.basis_vector(i)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec a = g.bracket(Le[i], Le[j]);
            Vec b = L.apply(g.bracket(Le[i], g.basis_vector(j)));
            Vec c = L.apply(g.bracket(g.basis_vector(i), Le[j]));
            const Vec& d = g.bracket(i, j);
            for (int k = 0; k < n; ++k)
                if (!(a[k] - b[k] - c[k] - d[k]).is_zero()) return std::array<int, 2>{i, j};
        }
    return std::nullopt;
}

// Checks I^2 = J^2 = -1, IJ = -JI and integrability of I, J and a sampled third structure.
inline void validate_structure(const LieAlgebra& g, const HypercomplexStructure& s) {
    int n = g.dim();
    if (n % 4 != 0) throw InputError("dimension must be a multiple of 4");
    if (static_cast<int>(s.I.rows()) != n || static_cast<int>(s.J.rows()) != n ||
        static_cast<int>(s.I.cols()) != n || static_cast<int>(s.J.cols()) != n)
        throw InputError("structure matrices have the wrong size");
    RealMatrix id = RealMatrix::identity(n);
    RealMatrix minus = Scalar(-1) * id;
    if (!(s.I * s.I == minus)) throw NotHypercomplex("I^2 != -1");
    if (!(s.J * s.J == minus)) throw NotHypercomplex("J^2 != -1");
    if (!(s.I * s.J == Scalar(-1) * (s.J * s.I))) throw NotHypercomplex("IJ != -JI");
    if (auto f = nijenhuis_failure(g, s.I)) throw NonIntegrable("I", (*f)[0], (*f)[1]);
    if (auto f = nijenhuis_failure(g, s.J)) throw NonIntegrable("J", (*f)[0], (*f)[1]);
    std::array<Scalar, 3> p{Scalar(2, 3), Scalar(2, 3), Scalar(1, 3)};
    if (auto f = nijenhuis_failure(g, quaternion_combination(s, p)))
        throw NonIntegrable("2/3 I + 2/3 J + 1/3 K", (*f)[0], (*f)[1]);
}

inline bool is_abelian_structure(const LieAlgebra& g, const HypercomplexStructure& s) {
    int n = g.dim();
    for (const RealMatrix* L : {&s.I, &s.J}) {
        std::vector<Vec> Le;
        for (int i = 0; i < n; ++i) Le.push_back(L->apply(g.basis_vector(i)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Vec a = g.bracket(Le[i], Le[j]);
                const Vec& b = g.bracket(i, j);
                for (int k = 0; k < n; ++k)
                    if (a[k] != b[k]) return false;
            }
    }
    return true;
}

// A hypercomplex Lie algebra together with an adapted complex frame
// zeta^1..zeta^{2n}, conj(zeta^1)..conj(zeta^{2n}) in which I acts by i on zeta
// and J zeta^{2i-1} = -conj(zeta^{2i}). Frame index a < N is holomorphic.
class HypercomplexAlgebra {
public:
    HypercomplexAlgebra() = default;

    HypercomplexAlgebra(LieAlgebra g, HypercomplexStructure s) : g_(std::move(g)), s_(std::move(s)) {
        g_.validate();
        validate_structure(g_, s_);
        build_frame();
    }

    const LieAlgebra& algebra() const { return g_; }
    const HypercomplexStructure& structure() const { return s_; }
    int real_dim() const { return g_.dim(); }
    int n() const { return g_.dim() / 4; }
    int N() const { return g_.dim() / 2; }
    bool holomorphic(int a) const { return a < N(); }

    // Rows are frame 1-forms in terms of the real coframe.
    const ComplexMatrix& frame() const { return F_; }
    const ComplexMatrix& frame_inverse() const { return Finv_; }
    const std::vector<Form>& frame_differentials() const { return dtheta_; }

    Form zero() const { return Form(real_dim()); }
    Form one() const { return Form::scalar(real_dim(), Complex(1)); }
    Form zeta(int r) const { return Form::generator(real_dim(), r); }
    Form zeta_bar(int r) const { return Form::generator(real_dim(), N() + r); }

    int holo_degree(Mask m) const { return popcount(m & holo_mask()); }
    int antiholo_degree(Mask m) const { return popcount(m & ~holo_mask()); }
    Mask holo_mask() const { return N() >= 64 ? ~Mask(0) : ((Mask(1) << N()) - 1); }

    Form bidegree_part(const Form& f, int p, int q) const {
        return f.part([&](Mask m) { return holo_degree(m) == p && antiholo_degree(m) == q; });
    }

    Form to_frame(const Form& real_form) const { return real_form.substitute(real_to_frame_); }
    Form to_real(const Form& frame_form) const { return frame_form.substitute(frame_to_real_); }

    Form d(const Form& f) const { return antiderivation(f, dtheta_); }
    Form del(const Form& f) const { return antiderivation(f, d_holo_); }
    Form delbar(const Form& f) const { return antiderivation(f, d_antiholo_); }

    Form conj(const Form& f) const { return f.permute(conj_perm_, ones_, true); }
    Form I_action(const Form& f) const { return f.permute(identity_perm_, I_coef_); }
    Form J_action(const Form& f) const { return f.permute(J_perm_, J_coef_); }
    Form K_action(const Form& f) const { return J_action(I_action(f)); }

    // J^{-1} = -J on vectors, hence (-1)^k J on k-forms.
    Form J_inverse_action(const Form& f) const {
        Form j = J_action(f);
        return j.part([](Mask m) { return popcount(m) % 2 == 0; }) -
               j.part([](Mask m) { return popcount(m) % 2 == 1; });
    }

    Form delJ(const Form& f) const { return J_inverse_action(delbar(J_action(f))); }
    Form delbarJ(const Form& f) const { return J_inverse_action(del(J_action(f))); }

    // Pullback by a real endomorphism given as a matrix on vectors.
    Form endo_action(const RealMatrix& L, const Form& f) const {
        ComplexMatrix m = F_ * complexify(L) * Finv_;
        std::vector<Form> images;
        for (int a = 0; a < real_dim(); ++a) {
            Form img(real_dim());
            for (int b = 0; b < real_dim(); ++b) img.add_term(Mask(1) << b, m(a, b));
            images.push_back(std::move(img));
        }
        return f.substitute(images);
    }

    // Frame components of the real basis vector e_k, i.e. theta^a(e_k).
    std::vector<Complex> real_vector(int k) const {
        std::vector<Complex> v(real_dim());
        for (int a = 0; a < real_dim(); ++a) v[a] = F_(a, k);
        return v;
    }

    // Frame components of a real vector given in the basis e_k.
    std::vector<Complex> vector_from_real(const Vec& x) const {
        std::vector<Complex> v(real_dim());
        for (int a = 0; a < real_dim(); ++a)
            for (int k = 0; k < real_dim(); ++k)
                if (!x[k].is_zero()) v[a] += F_(a, k) * Complex(x[k]);
        return v;
    }

    // Frame vector Z_a (dual to theta^a).
    std::vector<Complex> frame_vector(int a) const {
        std::vector<Complex> v(real_dim());
        v[a] = Complex(1);
        return v;
    }

    // Vector action of J in frame components: J Z_a = conj(Z_b), J Z_b = -conj(Z_a).
    std::vector<Complex> J_vector(const std::vector<Complex>& v) const {
        std::vector<Complex> out(real_dim());
        for (int a = 0; a < real_dim(); ++a) {
            // theta^c(J v) = (J theta^c)(v)
            int t = J_perm_[a];
            out[a] = J_coef_[a] * v[t];
        }
        return out;
    }
    std::vector<Complex> I_vector(const std::vector<Complex>& v) const {
        std::vector<Complex> out(real_dim());
        for (int a = 0; a < real_dim(); ++a) out[a] = I_coef_[a] * v[a];
        return out;
    }
    std::vector<Complex> K_vector(const std::vector<Complex>& v) const { return I_vector(J_vector(v)); }
    std::vector<Complex> conj_vector(const std::vector<Complex>& v) const {
        std::vector<Complex> out(real_dim());
        for (int a = 0; a < real_dim(); ++a) out[a] = v[conj_perm_[a]].conj();
        return out;
    }

    // Same algebra with the pair (pI+..., qI+...) for orthonormal p, q.
    HypercomplexAlgebra rotate_pair(const std::array<Scalar, 3>& p, const std::array<Scalar, 3>& q) const {
        auto dot = [](const std::array<Scalar, 3>& a, const std::array<Scalar, 3>& b) {
            return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        };
        if (dot(p, p) != Scalar(1) || dot(q, q) != Scalar(1))
            throw InputError("rotation vectors must be unit vectors");
        if (!dot(p, q).is_zero()) throw InputError("rotation vectors must be orthogonal");
        HypercomplexStructure s{quaternion_combination(s_, p), quaternion_combination(s_, q)};
        return HypercomplexAlgebra(g_, s);
    }

    std::string str(const Form& f) const { return f.str(frame_names(N())); }

private:
    void build_frame() {
        int R = real_dim(), Nh = N();
        ComplexMatrix I = complexify(s_.I), J = complexify(s_.J);
        std::vector<std::vector<Complex>> rows;
        auto row_times = [&](const std::vector<Complex>& r, const ComplexMatrix& m) {
            std::vector<Complex> out(R);
            for (int j = 0; j < R; ++j)
                for (int k = 0; k < R; ++k)
                    if (!r[k].is_zero() && !m(k, j).is_zero()) out[j] += r[k] * m(k, j);
            return out;
        };
        auto spans = [&](const std::vector<std::vector<Complex>>& rs) {
            ComplexMatrix m(rs.size(), R);
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (int j = 0; j < R; ++j) m(i, j) = rs[i][j];
            return rank(m);
        };
        for (int k = 0; k < R && static_cast<int>(rows.size()) < Nh; ++k) {
            std::vector<Complex> eta(R);
            eta[k] = Complex(1);
            std::vector<Complex> ip = row_times(eta, I);
            std::vector<Complex> z(R);
            for (int j = 0; j < R; ++j) z[j] = eta[j] - Complex::i() * ip[j];
            auto trial = rows;
            trial.push_back(z);
            if (spans(trial) <= rows.size()) continue;
            std::vector<Complex> zbar(R);
            for (int j = 0; j < R; ++j) zbar[j] = z[j].conj();
            std::vector<Complex> partner = row_times(zbar, J);
            for (auto& c : partner) c = -c;
            rows.push_back(z);
            rows.push_back(partner);
        }
        if (static_cast<int>(rows.size()) != Nh) throw NotHypercomplex("could not build an adapted frame");
        F_ = ComplexMatrix(R, R);
        for (int a = 0; a < Nh; ++a)
            for (int j = 0; j < R; ++j) {
                F_(a, j) = rows[a][j];
                F_(Nh + a, j) = rows[a][j].conj();
            }
        Finv_ = inverse(F_);

        identity_perm_.resize(R);
        conj_perm_.resize(R);
        J_perm_.resize(R);
        ones_.assign(R, Complex(1));
        I_coef_.resize(R);
        J_coef_.resize(R);
        for (int a = 0; a < R; ++a) {
            identity_perm_[a] = a;
            conj_perm_[a] = a < Nh ? a + Nh : a - Nh;
            I_coef_[a] = a < Nh ? Complex::i() : -Complex::i();
        }
        // J z^{2i-1} = -zb^{2i}, J z^{2i} = zb^{2i-1}, J zb^{2i-1} = -z^{2i}, J zb^{2i} = z^{2i-1}.
        for (int r = 0; r < Nh; r += 2) {
            J_perm_[r] = Nh + r + 1;
            J_coef_[r] = Complex(-1);
            J_perm_[r + 1] = Nh + r;
            J_coef_[r + 1] = Complex(1);
            J_perm_[Nh + r] = r + 1;
            J_coef_[Nh + r] = Complex(-1);
            J_perm_[Nh + r + 1] = r;
            J_coef_[Nh + r + 1] = Complex(1);
        }
        check_frame_action(I, J);

        frame_to_real_.clear();
        real_to_frame_.clear();
        for (int a = 0; a < R; ++a) {
            Form img(R);
            for (int k = 0; k < R; ++k) img.add_term(Mask(1) << k, F_(a, k));
            frame_to_real_.push_back(std::move(img));
        }
        for (int k = 0; k < R; ++k) {
            Form img(R);
            for (int a = 0; a < R; ++a) img.add_term(Mask(1) << a, Finv_(k, a));
            real_to_frame_.push_back(std::move(img));
        }
        std::vector<Form> de = g_.structure_equations();
        std::vector<Form> de_frame;
        for (auto& f : de) de_frame.push_back(to_frame(f));
        dtheta_.assign(R, Form(R));
        for (int a = 0; a < R; ++a)
            for (int k = 0; k < R; ++k)
                if (!F_(a, k).is_zero()) dtheta_[a] += F_(a, k) * de_frame[k];
        d_holo_.assign(R, Form(R));
        d_antiholo_.assign(R, Form(R));
        for (int a = 0; a < R; ++a) {
            for (auto& [m, c] : dtheta_[a].terms()) {
                int p = holo_degree(m);
                bool holo = a < Nh;
                if (holo ? p == 0 : false) throw NonIntegrable("I", 0, 0);
                // del raises the holomorphic degree by one.
                int before = holo ? 1 : 0;
                if (p == before + 1)
                    d_holo_[a].add_term(m, c);
                else
                    d_antiholo_[a].add_term(m, c);
            }
        }
    }

    void check_frame_action(const ComplexMatrix& I, const ComplexMatrix& J) {
        int R = real_dim();
        ComplexMatrix mi = F_ * I * Finv_;
        ComplexMatrix mj = F_ * J * Finv_;
        for (int a = 0; a < R; ++a)
            for (int b = 0; b < R; ++b) {
                Complex ei = a == b ? I_coef_[a] : Complex();
                Complex ej = b == J_perm_[a] ? J_coef_[a] : Complex();
                if (mi(a, b) != ei || mj(a, b) != ej)
                    throw NotHypercomplex("adapted frame does not diagonalize the structure");
            }
    }

    LieAlgebra g_;
    HypercomplexStructure s_;
    ComplexMatrix F_, Finv_;
    std::vector<Form> frame_to_real_, real_to_frame_;
    std::vector<Form> dtheta_, d_holo_, d_antiholo_;
    std::vector<int> identity_perm_, conj_perm_, J_perm_;
    std::vector<Complex> ones_, I_coef_, J_coef_;
};

inline HypercomplexAlgebra make_standard(const LieAlgebra& g) {
    return HypercomplexAlgebra(g, standard_structure(g.dim()));
}

}  // namespace hha
