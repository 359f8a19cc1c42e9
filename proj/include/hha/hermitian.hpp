#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hha/hypercomplex.hpp"

namespace hha {

struct NotQReal : MathError {
    using MathError::MathError;
};
struct NotQPositive : MathError {
    using MathError::MathError;
};

inline Scalar factorial(int n) {
    Scalar f(1);
    for (int k = 2; k <= n; ++k) f *= Scalar(k);
    return f;
}

// Enumerates the masks with p holomorphic and q antiholomorphic generators.
inline std::vector<Mask> bidegree_masks(int N, int p, int q) {
    std::vector<Mask> holo, anti;
    auto choose = [](int n, int k, int shift) {
        std::vector<Mask> out;
        if (k < 0 || k > n) return out;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Mask m = 0;
            for (int i : idx) m |= Mask(1) << (i + shift);
            out.push_back(m);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    };
    holo = choose(N, p, 0);
    anti = choose(N, q, N);
    std::vector<Mask> out;
    for (Mask a : holo)
        for (Mask b : anti) out.push_back(a | b);
    return out;
}

// J z_a = conj z_b and J z_b = -conj z_a inside each pair (a, b) = (2i-1, 2i).
inline ComplexMatrix pair_matrix(int N) {
    ComplexMatrix e(N, N);
    for (int a = 0; a < N; a += 2) {
        e(a + 1, a) = Complex(1);
        e(a, a + 1) = Complex(-1);
    }
    return e;
}

// Skew coefficient matrix S(r, s) = sigma(Z_r, Z_s) of the (2,0)-part of sigma.
inline ComplexMatrix holomorphic_coefficients(const Form& sigma, int N) {
    ComplexMatrix s(N, N);
    for (auto& [m, c] : sigma.terms()) {
        if (popcount(m) != 2) throw MathError("expected a 2-form");
        auto idx = mask_indices(m);
        if (idx[1] >= N) continue;
        s(idx[0], idx[1]) = c;
        s(idx[1], idx[0]) = -c;
    }
    return s;
}

// Hermitian matrix of the form z -> sigma(Z, J conj Z); q-positivity is its positive definiteness.
inline ComplexMatrix q_hermitian_matrix(const Form& sigma, int N) {
    return holomorphic_coefficients(sigma, N) * pair_matrix(N);
}

class HyperhermitianMetric {
public:
    using AlgebraPtr = std::shared_ptr<const HypercomplexAlgebra>;

    // Omega must be a q-real, q-positive (2,0)-form in the adapted frame.
    static HyperhermitianMetric from_omega(AlgebraPtr h, const Form& omega) {
        HyperhermitianMetric m;
        m.h_ = std::move(h);
        m.omega_ = omega;
        m.finish_from_omega();
        return m;
    }

    // Real Gram matrix g(e_k, e_l); must be symmetric, positive and H-invariant.
    static HyperhermitianMetric from_gram(AlgebraPtr h, const RealMatrix& gram) {
        int R = h->real_dim(), N = h->N();
        if (static_cast<int>(gram.rows()) != R || static_cast<int>(gram.cols()) != R)
            throw InputError("Gram matrix has the wrong size");
        if (!(gram == gram.transpose())) throw InputError("Gram matrix is not symmetric");
        const auto& s = h->structure();
        if (!(s.I.transpose() * gram * s.I == gram) || !(s.J.transpose() * gram * s.J == gram))
            throw NotQReal("Gram matrix is not invariant under I and J");
        const ComplexMatrix& Fi = h->frame_inverse();
        ComplexMatrix G = complexify(gram);
        ComplexMatrix herm(N, N);
        for (int r = 0; r < N; ++r)
            for (int t = 0; t < N; ++t) {
                Complex acc;
                for (int k = 0; k < R; ++k) {
                    if (Fi(k, r).is_zero()) continue;
                    for (int l = 0; l < R; ++l)
                        if (!Fi(l, N + t).is_zero() && !G(k, l).is_zero()) acc += Fi(k, r) * Fi(l, N + t) * G(k, l);
                }
                herm(r, t) = acc;
            }
        // A = h E^T
        ComplexMatrix a = herm * pair_matrix(N).transpose();
        Form omega(R);
        for (int r = 0; r < N; ++r)
            for (int t = r + 1; t < N; ++t) omega.add_term((Mask(1) << r) | (Mask(1) << t), a(r, t));
        return from_omega(std::move(h), omega);
    }

    // Omega = sum c_i zeta^{2i-1} ^ zeta^{2i}.
    static HyperhermitianMetric diagonal(AlgebraPtr h, const std::vector<Scalar>& c) {
        int N = h->N();
        if (static_cast<int>(c.size()) != N / 2) throw InputError("need one diagonal entry per quaternionic line");
        Form omega(h->real_dim());
        for (int i = 0; i < N / 2; ++i)
            omega.add_term((Mask(1) << (2 * i)) | (Mask(1) << (2 * i + 1)), Complex(c[i]));
        return from_omega(std::move(h), omega);
    }

    static HyperhermitianMetric unitary(AlgebraPtr h) {
        std::vector<Scalar> ones(h->N() / 2, Scalar(1));
        return diagonal(std::move(h), ones);
    }

    // The same Riemannian metric seen through another hypercomplex frame on the same algebra.
    HyperhermitianMetric transport(AlgebraPtr other) const { return from_gram(std::move(other), gram_); }

    const HypercomplexAlgebra& hc() const { return *h_; }
    const AlgebraPtr& hc_ptr() const { return h_; }
    int n() const { return h_->n(); }
    int N() const { return h_->N(); }
    const Form& omega() const { return omega_; }
    Form omega_bar() const { return h_->conj(omega_); }
    const ComplexMatrix& skew() const { return a_; }
    // h(r, s) = g(Z_r, conj Z_s)
    const ComplexMatrix& hermitian() const { return herm_; }
    const RealMatrix& gram() const { return gram_; }
    const Complex& pfaffian_value() const { return pf_; }

    Form omega_power(int k) const {
        if (k < 0) return h_->zero();
        while (static_cast<int>(omega_powers_.size()) <= k) {
            if (omega_powers_.empty())
                omega_powers_.push_back(h_->one());
            else
                omega_powers_.push_back(omega_powers_.back().wedge_unchecked(omega_));
        }
        return omega_powers_[k];
    }
    Form omega_bar_power(int k) const { return h_->conj(omega_power(k)); }

    // Phi^{-1}(Omega): omega_I(Z_r, conj Z_s) = i h(r, s).
    Form omega_I() const {
        Form w(h_->real_dim());
        for (int r = 0; r < N(); ++r)
            for (int s = 0; s < N(); ++s)
                w.add_term((Mask(1) << r) | (Mask(1) << (N() + s)), Complex::i() * herm_(r, s));
        return w;
    }
    Form omega_J() const { return omega_ + omega_bar(); }
    Form omega_K() const { return -Complex::i() * (omega_ - omega_bar()); }

    // omega_L for L = p0 I + p1 J + p2 K.
    Form omega_L(const std::array<Scalar, 3>& p) const {
        return Complex(p[0]) * omega_I() + Complex(p[1]) * omega_J() + Complex(p[2]) * omega_K();
    }

    Form volume() const {
        return omega_power(n()).wedge_unchecked(omega_bar_power(n())) *
               Complex((factorial(n()) * factorial(n())).inverse());
    }

    // Pointwise Hermitian product of forms (conjugate-linear in the second slot).
    Complex inner(const Form& x, const Form& y) const {
        Complex total;
        for (auto& [mx, cx] : x.terms())
            for (auto& [my, cy] : y.terms()) {
                if (popcount(mx) != popcount(my)) continue;
                if (popcount(mx & holo()) != popcount(my & holo())) continue;
                Complex g = monomial_inner(mx, my);
                if (!g.is_zero()) total += cx * cy.conj() * g;
            }
        return total;
    }
    Scalar norm2(const Form& x) const {
        Complex v = inner(x, x);
        if (!v.is_real()) throw MathError("norm is not real");
        return v.re();
    }

    Complex monomial_inner(Mask mx, Mask my) const {
        if (mx == my && diagonal_) {
            Complex p(1);
            for (int a : mask_indices(mx)) p *= one_form_inner(a, a);
            return p;
        }
        if (diagonal_) return Complex();
        auto ix = mask_indices(mx), iy = mask_indices(my);
        std::size_t k = ix.size();
        ComplexMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = one_form_inner(ix[i], iy[j]);
        return determinant(m);
    }

    // <theta^a, theta^b> in the dual Hermitian metric.
    Complex one_form_inner(int a, int b) const {
        if ((a < N()) != (b < N())) return Complex();
        if (a < N()) return herm_inv_(b, a);
        return herm_inv_(a - N(), b - N());
    }

    // psi ^ *zeta = g(psi, zeta) vol.
    Form hodge_star(const Form& zeta) const {
        int R = h_->real_dim();
        Mask full = R >= 64 ? ~Mask(0) : ((Mask(1) << R) - 1);
        Complex vol = volume().coefficient(full);
        Form out(R);
        std::vector<std::pair<int, int>> bidegrees;
        for (auto& [m, c] : zeta.terms()) {
            std::pair<int, int> bd{popcount(m & holo()), popcount(m & ~holo())};
            if (std::find(bidegrees.begin(), bidegrees.end(), bd) == bidegrees.end()) bidegrees.push_back(bd);
        }
        for (auto [p, q] : bidegrees) {
            Form part = h_->bidegree_part(zeta, p, q);
            std::vector<Mask> candidates;
            if (diagonal_)
                for (auto& [m, c] : part.terms()) candidates.push_back(m);
            else
                candidates = bidegree_masks(N(), p, q);
            for (Mask m : candidates) {
                Complex g;
                for (auto& [mz, cz] : part.terms()) {
                    Complex gi = monomial_inner(m, mz);
                    if (!gi.is_zero()) g += cz.conj() * gi;
                }
                if (g.is_zero()) continue;
                Mask comp = full & ~m;
                Complex x = g * vol;
                out.add_term(comp, merge_sign(m, comp) < 0 ? -x : x);
            }
        }
        return out;
    }

    // Adjoint of x -> w ^ x for the 2-form w of bidegree (2,0) or (0,2).
    Form lefschetz_adjoint(const Form& x, const Form& w, int dp, int dq) const {
        Form out(h_->real_dim());
        std::vector<std::pair<int, int>> bidegrees;
        for (auto& [m, c] : x.terms()) {
            std::pair<int, int> bd{popcount(m & holo()), popcount(m & ~holo())};
            if (std::find(bidegrees.begin(), bidegrees.end(), bd) == bidegrees.end()) bidegrees.push_back(bd);
        }
        for (auto [p, q] : bidegrees) {
            if (p - dp < 0 || q - dq < 0) continue;
            Form part = h_->bidegree_part(x, p, q);
            auto basis = bidegree_masks(N(), p - dp, q - dq);
            std::size_t k = basis.size();
            ComplexMatrix gram_t(k, k);
            std::vector<Complex> rhs(k);
            for (std::size_t j = 0; j < k; ++j) {
                Form b(h_->real_dim());
                b.add_term(basis[j], Complex(1));
                rhs[j] = inner(part, w.wedge_unchecked(b));
                for (std::size_t i = 0; i < k; ++i) gram_t(j, i) = monomial_inner(basis[i], basis[j]);
            }
            auto c = solve(gram_t, rhs);
            if (!c) throw MathError("singular Gram matrix");
            for (std::size_t i = 0; i < k; ++i) out.add_term(basis[i], (*c)[i]);
        }
        return out;
    }
    Form lambda(const Form& x) const { return lefschetz_adjoint(x, omega_, 2, 0); }
    Form lambda_bar(const Form& x) const { return lefschetz_adjoint(x, omega_bar(), 0, 2); }

    // tr_Omega xi = n xi ^ Omega^{n-1} / Omega^n
    Complex trace_omega(const Form& xi) const {
        Mask top = holo();
        Complex num = xi.wedge_unchecked(omega_power(n() - 1)).coefficient(top);
        return Complex(n()) * num / omega_power(n()).coefficient(top);
    }

    // tr_{omega_I} gamma = 2n gamma ^ omega_I^{2n-1} / omega_I^{2n}
    Complex trace_omega_I_wedge(const Form& gamma) const {
        Form w = omega_I();
        Form p = w.power(N() - 1);
        Mask full = h_->real_dim() >= 64 ? ~Mask(0) : ((Mask(1) << h_->real_dim()) - 1);
        Complex num = gamma.wedge_unchecked(p).coefficient(full);
        Complex den = p.wedge_unchecked(w).coefficient(full);
        return Complex(N()) * num / den;
    }

    // Same trace by contraction with the inverse Hermitian matrix.
    Complex trace_omega_I(const Form& gamma) const {
        Complex total;
        for (auto& [m, c] : gamma.terms()) {
            if (popcount(m) != 2) continue;
            auto idx = mask_indices(m);
            if (idx[0] >= N() || idx[1] < N()) continue;
            total += c * herm_inv_(idx[1] - N(), idx[0]);
        }
        return -Complex::i() * total;
    }

    // Phi(gamma)(X, Y) = (i gamma(JX, Y) - gamma(KX, Y)) / 2 on all frame pairs.
    Form phi(const Form& gamma) const {
        int R = h_->real_dim();
        Form out(R);
        for (int a = 0; a < R; ++a)
            for (int b = a + 1; b < R; ++b) {
                auto za = h_->frame_vector(a), zb = h_->frame_vector(b);
                Complex v = (Complex::i() * gamma.evaluate({h_->J_vector(za), zb}) -
                             gamma.evaluate({h_->K_vector(za), zb})) /
                            Complex(2);
                out.add_term((Mask(1) << a) | (Mask(1) << b), v);
            }
        return out;
    }

    // Inverse of Phi on (2,0)-forms: the J-anti-invariant (1,1)-form.
    Form phi_inverse(const Form& sigma) const {
        ComplexMatrix m = q_hermitian_matrix(sigma, N());
        Form w(h_->real_dim());
        for (int r = 0; r < N(); ++r)
            for (int s = 0; s < N(); ++s)
                w.add_term((Mask(1) << r) | (Mask(1) << (N() + s)), Complex::i() * m(r, s));
        return w;
    }

    bool is_q_real(const Form& sigma) const { return h_->J_action(h_->conj(sigma)) == sigma; }

    Definiteness q_definiteness(const Form& sigma) const {
        if (!is_q_real(sigma)) throw NotQReal("form is not q-real");
        return hermitian_definiteness(q_hermitian_matrix(sigma, N()));
    }

    Mask holo() const { return h_->holo_mask(); }
    bool is_diagonal() const { return diagonal_; }

    std::string str(const Form& f) const { return h_->str(f); }

private:
    void finish_from_omega() {
        int N = h_->N();
        if (omega_.dim() != h_->real_dim()) throw InputError("Omega lives on the wrong frame");
        for (auto& [m, c] : omega_.terms())
            if (popcount(m) != 2 || (m & ~holo()) != 0) throw InputError("Omega must be a (2,0)-form");
        if (!is_q_real(omega_)) throw NotQReal("Omega is not q-real");
        a_ = holomorphic_coefficients(omega_, N);
        herm_ = a_ * pair_matrix(N);
        if (hermitian_definiteness(herm_) != Definiteness::positive_definite)
            throw NotQPositive("Omega is not q-positive");
        herm_inv_ = inverse(herm_);
        pf_ = pfaffian(a_);
        diagonal_ = true;
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s)
                if (r != s && !herm_(r, s).is_zero()) diagonal_ = false;
        // g(e_k, e_l) = sum h(r,s) [F(r,k) F(N+s,l) + F(N+s,k) F(r,l)]
        const ComplexMatrix& F = h_->frame();
        int R = h_->real_dim();
        gram_ = RealMatrix(R, R);
        for (int k = 0; k < R; ++k)
            for (int l = 0; l < R; ++l) {
                Complex acc;
                for (int r = 0; r < N; ++r)
                    for (int s = 0; s < N; ++s) {
                        if (herm_(r, s).is_zero()) continue;
                        Complex t = F(r, k) * F(N + s, l) + F(N + s, k) * F(r, l);
                        if (!t.is_zero()) acc += herm_(r, s) * t;
                    }
                if (!acc.is_real()) throw MathError("Gram matrix is not real");
                gram_(k, l) = acc.re();
            }
    }

    AlgebraPtr h_;
    Form omega_;
    ComplexMatrix a_, herm_, herm_inv_;
    RealMatrix gram_;
    Complex pf_;
    bool diagonal_ = false;
    mutable std::vector<Form> omega_powers_;
};

using MetricPtr = std::shared_ptr<const HyperhermitianMetric>;

// alpha, beta and the derived Lee-type forms.
struct CanonicalForms {
    Form alpha;
    Form beta;
    Form alpha_lambda;
    Form beta_lambda;
    Form theta;
    Form eta;
};

inline Form alpha_by_division(const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    int N = m.N();
    Form top = m.omega_bar_power(m.n());
    Form target = h.del(top);
    Mask anti = ~m.holo() & (h.real_dim() >= 64 ? ~Mask(0) : ((Mask(1) << h.real_dim()) - 1));
    Complex den = top.coefficient(anti);
    Form alpha(h.real_dim());
    for (int r = 0; r < N; ++r) alpha.add_term(Mask(1) << r, target.coefficient((Mask(1) << r) | anti) / den);
    if (alpha.wedge_unchecked(top) != target) throw MathError("alpha does not solve its defining equation");
    return alpha;
}

inline Form beta_by_division(const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    int N = m.N();
    Form base = m.omega_power(m.n() - 1);
    Form target = h.del(base);
    auto masks = bidegree_masks(N, N - 1, 0);
    ComplexMatrix a(masks.size(), N);
    std::vector<Complex> rhs(masks.size());
    for (int r = 0; r < N; ++r) {
        Form col = h.zeta(r).wedge_unchecked(base);
        for (std::size_t i = 0; i < masks.size(); ++i) a(i, r) = col.coefficient(masks[i]);
    }
    for (std::size_t i = 0; i < masks.size(); ++i) rhs[i] = target.coefficient(masks[i]);
    auto sol = solve(a, rhs);
    if (!sol) throw MathError("beta has no solution");
    Form beta(h.real_dim());
    for (int r = 0; r < N; ++r) beta.add_term(Mask(1) << r, (*sol)[r]);
    if (beta.wedge_unchecked(base) != target) throw MathError("beta does not solve its defining equation");
    return beta;
}

inline CanonicalForms canonical_forms(const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    CanonicalForms c;
    c.alpha = alpha_by_division(m);
    c.beta = beta_by_division(m);
    c.alpha_lambda = m.lambda_bar(h.del(m.omega_bar()));
    c.beta_lambda = m.lambda(h.del(m.omega()));
    c.eta = c.alpha + h.conj(c.alpha);
    c.theta = c.eta + c.beta + h.conj(c.beta);
    return c;
}

struct Curvature {
    Form ric_chern;
    Form ric_bismut;
    Form ric_obata;
    Form delJ_alpha;
    Form delJ_beta;
    Scalar s_chern;
    Scalar s_bismut;
    Complex s_chern_trace;  // tr_{omega_I} Ric^Ch
    Complex s_bismut_trace;
};

inline Scalar real_or_throw(const Complex& c, const char* what) {
    if (!c.is_real()) throw MathError(std::string(what) + " is not real: " + c.str());
    return c.re();
}

inline Curvature curvature(const HyperhermitianMetric& m, const CanonicalForms& c) {
    const auto& h = m.hc();
    Curvature k;
    k.ric_chern = h.d(h.I_action(c.eta));
    Form bb = c.beta + h.conj(c.beta);
    k.ric_bismut = -h.d(h.I_action(bb));
    k.ric_obata = h.d(c.eta);
    k.delJ_alpha = h.delJ(c.alpha);
    k.delJ_beta = h.delJ(c.beta);
    k.s_chern = real_or_throw(Complex(2) * m.trace_omega(k.delJ_alpha), "Chern scalar curvature");
    k.s_bismut = real_or_throw(Complex(-2) * m.trace_omega(k.delJ_beta), "Bismut scalar curvature");
    k.s_chern_trace = m.trace_omega_I(k.ric_chern);
    k.s_bismut_trace = m.trace_omega_I(k.ric_bismut);
    return k;
}

// Random H-invariant positive Gram matrix sum_L L^T M L over L in {1, I, J, K}.
template <class Rng>
RealMatrix random_invariant_gram(const HypercomplexStructure& s, Rng& rng, int height = 3, bool diagonal_only = false) {
    int R = static_cast<int>(s.I.rows());
    std::uniform_int_distribution<int> coef(-height, height);
    RealMatrix b(R, R);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < R; ++j)
            if (!diagonal_only || i == j) b(i, j) = Scalar(coef(rng));
    RealMatrix m = b.transpose() * b + RealMatrix::identity(R);
    const RealMatrix k = s.K();
    RealMatrix g = m;
    for (const RealMatrix* L : {&s.I, &s.J, &k}) g = g + L->transpose() * m * (*L);
    return g;
}

}  // namespace hha
