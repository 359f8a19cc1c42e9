#include <gtest/gtest.h>

#include <random>

#include "hha/expression.hpp"
#include "hha/hermitian.hpp"
#include "oracles.hpp"

using namespace hha;

namespace {

using AlgebraPtr = HyperhermitianMetric::AlgebraPtr;

AlgebraPtr standard(int dim, const std::vector<std::pair<int, std::string>>& eqs) {
    std::vector<Form> de(dim, Form(dim));
    for (auto& [k, s] : eqs) de[k - 1] = parse_form(s, dim, real_resolver(dim));
    return std::make_shared<const HypercomplexAlgebra>(make_standard(LieAlgebra::from_structure_equations(de)));
}

AlgebraPtr qsg12() {
    return standard(12, {{9, "e1^e3"}, {10, "e1^e4 + e7^e8"}, {11, "e5^e7"}, {12, "-e3^e4 + e5^e8"}});
}
AlgebraPtr qbal12() { return standard(12, {{9, "e1^e5"}, {10, "e1^e6"}, {11, "e1^e7"}, {12, "e1^e8"}}); }
AlgebraPtr aff_c() { return standard(4, {{1, "-e1^e4 + e2^e3"}, {3, "e1^e2 - e3^e4"}}); }
AlgebraPtr rank1() { return standard(4, {{2, "-e1^e2"}, {3, "-e1^e3"}, {4, "-e1^e4"}}); }
AlgebraPtr third() { return standard(4, {{2, "-e1^e2 + 1/2*e3^e4"}, {3, "-1/2*e1^e3"}, {4, "-1/2*e1^e4"}}); }
// su(2) + R, a non-unimodular-free example with alpha != 0
AlgebraPtr su2r() {
    LieAlgebra g = LieAlgebra::from_brackets(4, {{1, 2, 3, Scalar(1)}, {3, 1, 2, Scalar(1)}, {2, 3, 1, Scalar(1)}});
    return std::make_shared<const HypercomplexAlgebra>(make_standard(g));
}

// rank-one solvable plus the third solvable example
AlgebraPtr sum8() {
    return standard(8, {{2, "-e1^e2"}, {3, "-e1^e3"}, {4, "-e1^e4"}, {6, "-e5^e6 + 1/2*e7^e8"}, {7, "-1/2*e5^e7"},
                        {8, "-1/2*e5^e8"}});
}

Form frame(const HyperhermitianMetric& m, const std::string& s) {
    return parse_form(s, m.hc().real_dim(), frame_resolver(m.N()));
}

HyperhermitianMetric random_metric(const AlgebraPtr& h, std::mt19937& rng, bool diagonal = false) {
    return HyperhermitianMetric::from_gram(h, random_invariant_gram(h->structure(), rng, 2, diagonal));
}

Form random_holomorphic_2form(const HyperhermitianMetric& m, std::mt19937& rng) {
    Form f(m.hc().real_dim());
    for (int r = 0; r < m.N(); ++r)
        for (int s = r + 1; s < m.N(); ++s) f.add_term((Mask(1) << r) | (Mask(1) << s), oracle::small_complex(rng));
    return f;
}

Form random_q_real(const HyperhermitianMetric& m, std::mt19937& rng) {
    Form s = random_holomorphic_2form(m, rng);
    return s + m.hc().J_action(m.hc().conj(s));
}

const std::vector<std::pair<std::array<Scalar, 3>, std::array<Scalar, 3>>>& sphere_pairs() {
    static const std::vector<std::pair<std::array<Scalar, 3>, std::array<Scalar, 3>>> pairs{
        {{Scalar(0), Scalar(1), Scalar(0)}, {Scalar(1), Scalar(0), Scalar(0)}},
        {{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0), Scalar(0)}},
        {{Scalar(3, 5), Scalar(4, 5), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}},
        {{Scalar(2, 3), Scalar(2, 3), Scalar(1, 3)}, {Scalar(2, 3), Scalar(-1, 3), Scalar(-2, 3)}},
        {{Scalar(2, 7), Scalar(3, 7), Scalar(6, 7)}, {Scalar(3, 7), Scalar(-6, 7), Scalar(2, 7)}},
    };
    return pairs;
}

}  // namespace

TEST(Hermitian, StandardMetricBasics) {
    auto h = standard(8, {});
    auto m = HyperhermitianMetric::unitary(h);
    EXPECT_EQ(m.pfaffian_value(), Complex(1));
    EXPECT_EQ(m.inner(m.omega(), m.omega()), Complex(2));
    EXPECT_EQ(m.gram(), Scalar(2) * RealMatrix::identity(8));
    EXPECT_EQ(m.trace_omega(m.omega()), Complex(2));
    EXPECT_EQ(m.trace_omega(frame(m, "z1^z2")), Complex(1));
    EXPECT_EQ(m.phi(m.omega_I()), m.omega());
    EXPECT_TRUE(m.phi(h->zero()).is_zero());
    EXPECT_EQ(m.lambda(m.omega()), Form::scalar(8, Complex(2)));
    EXPECT_EQ(m.q_definiteness(m.omega()), Definiteness::positive_definite);
    EXPECT_EQ(m.q_definiteness(frame(m, "z1^z2")), Definiteness::positive_semidefinite);
    EXPECT_EQ(m.q_definiteness(-m.omega()), Definiteness::negative_definite);
    EXPECT_EQ(m.hodge_star(h->one()), m.volume());
    EXPECT_EQ(m.omega_J(), m.omega() + m.omega_bar());
    // (Omega_std)^2 = 2 z1 z2 z3 z4
    EXPECT_EQ(m.omega_power(2), frame(m, "2*z1^z2^z3^z4"));
    EXPECT_THROW(HyperhermitianMetric::from_omega(h, frame(m, "z1^z3")), NotQReal);
    EXPECT_THROW(HyperhermitianMetric::from_omega(h, frame(m, "z1^z2 - z3^z4")), NotQPositive);
}

TEST(Hermitian, GramAndOmegaRoundTrip) {
    std::mt19937 rng(21);
    auto h = qsg12();
    for (int t = 0; t < 5; ++t) {
        auto m = random_metric(h, rng);
        auto back = HyperhermitianMetric::from_omega(h, m.omega());
        EXPECT_EQ(back.gram(), m.gram());
        // |pf|^2 = det h and the volume identity
        EXPECT_EQ(Complex(m.pfaffian_value().norm2()), determinant(m.hermitian()));
        Form w = m.omega_I();
        EXPECT_EQ(m.volume(), w.power(6) * Complex(factorial(6).inverse()));
    }
}

TEST(Hermitian, PhiIsABijection) {
    std::mt19937 rng(4);
    auto h = qbal12();
    auto m = random_metric(h, rng);
    for (int t = 0; t < 3; ++t) {
        Form s = random_holomorphic_2form(m, rng);
        EXPECT_EQ(m.phi(m.phi_inverse(s)), s);
        Form q = random_q_real(m, rng);
        Form g = m.phi_inverse(q);
        EXPECT_EQ(h->conj(g), g);
    }
}

TEST(Hermitian, HodgeStarIdentities) {
    std::mt19937 rng(8);
    for (auto h : {qsg12(), sum8()}) {
        auto m = random_metric(h, rng);
        int n = m.n();
        Form vol_w = m.omega_power(n - 1).wedge(m.omega_bar_power(n)) *
                     Complex((factorial(n) * factorial(n - 1)).inverse());
        EXPECT_EQ(m.hodge_star(m.omega()), vol_w);
        Form psi = oracle::random_form(rng, h->real_dim(), 1, 3).part([&](Mask x) { return (x & ~m.holo()) == 0; });
        EXPECT_EQ(m.hodge_star(psi), -h->J_action(h->conj(psi)).wedge(vol_w));
        Form zeta = random_holomorphic_2form(m, rng);
        Form jz = h->J_action(h->conj(zeta));
        Form vol_w2 = m.omega_power(n - 2).wedge(m.omega_bar_power(n)) *
                      Complex((factorial(n) * factorial(n - 2)).inverse());
        EXPECT_EQ(m.hodge_star(zeta), -jz.wedge(vol_w2) + m.trace_omega(jz) * vol_w);
        // psi ^ *zeta = g(psi, zeta) vol
        Form other = random_holomorphic_2form(m, rng);
        EXPECT_EQ(other.wedge(m.hodge_star(zeta)), m.inner(other, zeta) * m.volume());
    }
}

TEST(Hermitian, SolvableExamples) {
    {
        auto m = HyperhermitianMetric::unitary(aff_c());
        const auto& h = m.hc();
        EXPECT_EQ(h.d(h.zeta(0)), frame(m, "i/2*(zb1^z2 - z1^zb2)"));
        EXPECT_EQ(h.d(h.zeta(1)), frame(m, "i/2*(z1^zb1 - z2^zb2)"));
        auto c = canonical_forms(m);
        EXPECT_EQ(c.alpha, frame(m, "-i*z2"));
        EXPECT_EQ(c.alpha_lambda, c.alpha);
        EXPECT_TRUE(h.delJ(c.alpha).is_zero());
    }
    {
        auto m = HyperhermitianMetric::unitary(rank1());
        const auto& h = m.hc();
        EXPECT_EQ(h.d(h.zeta(0)), frame(m, "1/2*z1^zb1"));
        EXPECT_EQ(h.d(h.zeta(1)), frame(m, "-1/2*(z1^z2 + zb1^z2)"));
        auto c = canonical_forms(m);
        EXPECT_EQ(c.alpha, frame(m, "-z1"));
        auto k = curvature(m, c);
        EXPECT_EQ(k.delJ_alpha, Complex(Scalar(-1, 2)) * m.omega());
        // 2 n lambda with n = 1
        EXPECT_EQ(k.s_chern, Scalar(-1));
        EXPECT_EQ(k.s_chern_trace, Complex(-1));
    }
    {
        auto m = HyperhermitianMetric::unitary(third());
        const auto& h = m.hc();
        EXPECT_EQ(h.d(h.zeta(0)), frame(m, "1/2*z1^zb1 - 1/4*z2^zb2"));
        EXPECT_EQ(h.d(h.zeta(1)), frame(m, "-1/4*(z1^z2 + zb1^z2)"));
        auto c = canonical_forms(m);
        EXPECT_EQ(c.alpha, frame(m, "-3/4*z1"));
        EXPECT_EQ(h.delJ(c.alpha), Complex(Scalar(-3, 16)) * m.omega());
        // with 2 e3^e4 in de2 the structure J is not integrable
        EXPECT_THROW(standard(4, {{2, "-e1^e2 + 2*e3^e4"}, {3, "-1/2*e1^e3"}, {4, "-1/2*e1^e4"}}), NonIntegrable);
    }
}

TEST(Hermitian, DualRoutesAndCurvatureCrossChecks) {
    std::mt19937 rng(33);
    for (auto h : {qsg12(), qbal12(), rank1(), aff_c(), su2r(), sum8()}) {
        for (int t = 0; t < 2; ++t) {
            auto m = random_metric(h, rng, t == 0);
            auto c = canonical_forms(m);
            EXPECT_EQ(c.alpha, c.alpha_lambda);
            EXPECT_EQ(c.beta, c.beta_lambda);
            EXPECT_TRUE(h->del(c.alpha).is_zero());
            auto k = curvature(m, c);
            EXPECT_TRUE(m.is_q_real(k.delJ_alpha));
            EXPECT_EQ(Complex(k.s_chern), k.s_chern_trace);
            EXPECT_EQ(Complex(k.s_bismut), k.s_bismut_trace);
            Form ric = Complex::i() * (h->delbar(c.alpha) - h->del(h->conj(c.alpha)));
            EXPECT_EQ(k.ric_chern, ric);
            EXPECT_EQ(m.trace_omega_I_wedge(k.ric_chern), k.s_chern_trace);
            EXPECT_EQ(m.trace_omega_I(k.ric_obata), Complex());
        }
    }
}

TEST(Hermitian, ProductIdentity) {
    std::mt19937 rng(12);
    for (auto h : {qsg12(), sum8()}) {
        auto m = random_metric(h, rng);
        int n = m.n();
        for (int t = 0; t < 3; ++t) {
            Form psi = random_q_real(m, rng), zeta = random_q_real(m, rng);
            Form lhs = psi.wedge(zeta).wedge(m.omega_power(n - 2)) * Complex(factorial(n - 2).inverse());
            Complex c = m.trace_omega(psi) * m.trace_omega(zeta) - m.inner(psi, h->J_action(h->conj(zeta)));
            EXPECT_EQ(lhs, c * m.omega_power(n) * Complex(factorial(n).inverse()));
        }
    }
}

TEST(Hermitian, StrongHktScalarIdentity) {
    std::mt19937 rng(15);
    for (auto h : {qsg12(), su2r(), rank1(), sum8()}) {
        auto m = random_metric(h, rng);
        auto k = curvature(m, canonical_forms(m));
        Form dob = h->del(m.omega_bar());
        Complex v = Complex(k.s_chern) / Complex(2) +
                    m.inner(h->del(h->delJ(m.omega_bar())), m.omega().wedge(m.omega_bar())) - Complex(m.norm2(dob));
        EXPECT_EQ(v, Complex());
    }
}

TEST(Hermitian, PointwiseStrongHktIdentity) {
    std::mt19937 rng(16);
    for (auto h : {qsg12(), su2r()}) {
        auto m = random_metric(h, rng);
        int n = m.n();
        auto c = canonical_forms(m);
        Form da = h->delJ(c.alpha);
        Form dob = h->del(m.omega_bar());
        Form ddj = h->del(h->delJ(m.omega_bar()));
        Mask anti = ~m.holo() & ((Mask(1) << h->real_dim()) - 1);
        Complex den = m.omega_bar_power(n).coefficient(anti);
        for (int r = 0; r < m.N(); ++r) {
            auto z = h->frame_vector(r);
            auto jzb = h->J_vector(h->conj_vector(z));
            Complex lhs = da.evaluate({z, jzb});
            Form cz = ddj.contract(z).contract(jzb).wedge(m.omega_bar_power(n - 1));
            Complex rhs = Complex(m.norm2(dob.contract(z)) + m.norm2(dob.contract(jzb))) -
                          Complex(n) * cz.coefficient(anti) / den;
            EXPECT_EQ(lhs, rhs) << r;
        }
    }
}

TEST(Hermitian, ScalarCurvaturesAreIndependentOfTheComplexStructure) {
    std::mt19937 rng(19);
    for (auto h : {qsg12(), su2r()}) {
        auto m = random_metric(h, rng);
        auto k = curvature(m, canonical_forms(m));
        for (auto& [p, q] : sphere_pairs()) {
            auto r = std::make_shared<const HypercomplexAlgebra>(h->rotate_pair(p, q));
            auto mr = m.transport(r);
            auto kr = curvature(mr, canonical_forms(mr));
            EXPECT_EQ(kr.s_chern, k.s_chern);
            EXPECT_EQ(kr.s_bismut, k.s_bismut);
        }
    }
}

TEST(Hermitian, ConstantRescaling) {
    std::mt19937 rng(23);
    auto h = su2r();
    auto m = random_metric(h, rng);
    auto m3 = HyperhermitianMetric::from_omega(h, Complex(3) * m.omega());
    auto c = canonical_forms(m), c3 = canonical_forms(m3);
    EXPECT_EQ(c.alpha, c3.alpha);
    EXPECT_EQ(c.beta, c3.beta);
    auto k = curvature(m, c), k3 = curvature(m3, c3);
    EXPECT_EQ(k3.s_chern * Scalar(3), k.s_chern);
    EXPECT_EQ(k3.s_bismut * Scalar(3), k.s_bismut);
}

TEST(Hermitian, OmegaForRotatedStructures) {
    auto m = HyperhermitianMetric::unitary(qsg12());
    EXPECT_EQ(m.omega_K(), -Complex::i() * (m.omega() - m.omega_bar()));
    Scalar s = Scalar::sqrt(Scalar(1, 2));
    Form wl = m.omega_L({Scalar(0), s, s});
    Complex w(s, -s);
    EXPECT_EQ(w.norm2(), Scalar(1));
    EXPECT_EQ(wl, w * m.omega() + w.conj() * m.omega_bar());
}
