#include <gtest/gtest.h>

#include <random>

#include "hha/expression.hpp"
#include "oracles.hpp"

using namespace hha;

namespace {

std::vector<Complex> random_vector(std::mt19937& rng, int dim) {
    std::vector<Complex> v(dim);
    for (auto& c : v) c = oracle::small_complex(rng);
    return v;
}

}  // namespace

TEST(Form, WedgeSignsAndNilpotency) {
    Form z1 = Form::generator(4, 0), z2 = Form::generator(4, 1);
    EXPECT_EQ(z1.wedge(z2), -z2.wedge(z1));
    EXPECT_TRUE(z1.wedge(z1).is_zero());
    Form m = Form::monomial(4, {2, 0, 1});
    EXPECT_EQ(m.coefficient(indices_mask({0, 1, 2})), Complex(1));
    Form m2 = Form::monomial(4, {1, 0, 2});
    EXPECT_EQ(m2.coefficient(indices_mask({0, 1, 2})), Complex(-1));
}

TEST(Form, WedgeMatchesShuffleOracle) {
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        int p = 1 + t % 3, q = 1 + (t / 3) % 3;
        Form a = oracle::random_form(rng, 6, p, 3);
        Form b = oracle::random_form(rng, 6, q, 3);
        std::vector<std::vector<Complex>> vs;
        for (int k = 0; k < p + q; ++k) vs.push_back(random_vector(rng, 6));
        EXPECT_EQ(oracle::evaluate(a.wedge(b), vs), oracle::wedge_on(a, p, b, q, vs));
        EXPECT_EQ(a.wedge(b).evaluate(vs), oracle::evaluate(a.wedge(b), vs));
    }
}

TEST(Form, DeterminantNormalization) {
    Form m = Form::monomial(6, {0, 2, 4});
    std::vector<std::vector<Complex>> vs;
    for (int a : {0, 2, 4}) {
        std::vector<Complex> v(6);
        v[a] = Complex(1);
        vs.push_back(v);
    }
    EXPECT_EQ(m.evaluate(vs), Complex(1));
}

TEST(Form, ContractionIsAnAntiderivation) {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        int p = 1 + t % 3;
        Form a = oracle::random_form(rng, 7, p, 4);
        Form b = oracle::random_form(rng, 7, 2, 4);
        auto v = random_vector(rng, 7);
        Form lhs = a.wedge(b).contract(v);
        Form rhs = a.contract(v).wedge(b) + ((p % 2) ? Complex(-1) : Complex(1)) * a.wedge(b.contract(v));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Form, DegreeOverflowIsAnError) {
    Form a = Form::monomial(4, {0, 1, 2});
    Form b = Form::monomial(4, {3});
    EXPECT_NO_THROW(a.wedge(b));
    EXPECT_THROW(a.wedge(Form::monomial(4, {0, 3})), DegreeOverflow);
    EXPECT_THROW(parse_form("(e1^e2)^(e3^e4^e1)", 4, real_resolver(4)), InputError);
}

TEST(Form, PrintParseRoundTrip) {
    std::mt19937 rng(9);
    for (int t = 0; t < 50; ++t) {
        Form a = oracle::random_form(rng, 8, 1 + t % 4, 5) + Form::scalar(8, oracle::small_complex(rng));
        std::string s = a.str(frame_names(4));
        EXPECT_EQ(parse_form(s, 8, frame_resolver(4)), a) << s;
    }
    Form f = parse_form("1/2*(z1^z3 + zb1^z3)", 8, frame_resolver(4));
    EXPECT_EQ(f.str(frame_names(4)), "1/2*z1^z3 - 1/2*z3^zb1");
}

TEST(Form, SubstitutionIsMultiplicative) {
    std::mt19937 rng(13);
    std::vector<Form> images;
    for (int a = 0; a < 5; ++a) images.push_back(oracle::random_form(rng, 5, 1, 3));
    Form a = oracle::random_form(rng, 5, 2, 3), b = oracle::random_form(rng, 5, 2, 3);
    EXPECT_EQ(a.wedge(b).substitute(images), a.substitute(images).wedge(b.substitute(images)));
}

TEST(Form, PermuteMatchesSubstitution) {
    std::vector<int> perm{2, 0, 1, 3};
    std::vector<Complex> coef{Complex(2), Complex::i(), Complex(-1), Complex(1)};
    std::vector<Form> images;
    for (int a = 0; a < 4; ++a) images.push_back(Form::generator(4, perm[a], coef[a]));
    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        Form a = oracle::random_form(rng, 4, 1 + t % 4, 3);
        EXPECT_EQ(a.permute(perm, coef), a.substitute(images));
    }
}
