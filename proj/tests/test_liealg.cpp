#include <gtest/gtest.h>

#include "hha/expression.hpp"
#include "hha/liealg.hpp"

using namespace hha;

namespace {

LieAlgebra from_equations(int dim, const std::vector<std::pair<int, std::string>>& eqs) {
    std::vector<Form> de(dim, Form(dim));
    for (auto& [k, s] : eqs) de[k - 1] = parse_form(s, dim, real_resolver(dim));
    return LieAlgebra::from_structure_equations(de);
}

LieAlgebra su2_plus_r() {
    // [e2,e3] = 2e4, [e4,e2] = 2e3, [e3,e4] = 2e2
    return LieAlgebra::from_brackets(4, {{1, 2, 3, Scalar(2)}, {3, 1, 2, Scalar(2)}, {2, 3, 1, Scalar(2)}});
}

}  // namespace

TEST(LieAlgebra, StructureEquationRoundTrip) {
    LieAlgebra g = from_equations(12, {{9, "e1^e5"}, {10, "e1^e6"}, {11, "e1^e7"}, {12, "e1^e8"}});
    EXPECT_EQ(g.bracket(0, 4)[8], Scalar(-1));
    auto de = g.structure_equations();
    EXPECT_EQ(de[8], parse_form("e1^e5", 12, real_resolver(12)));
    // d xi (X, Y) = -xi([X, Y])
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            if (i == j) continue;
            std::vector<Complex> x(12), y(12);
            x[i] = Complex(1);
            y[j] = Complex(1);
            for (int k = 0; k < 12; ++k)
                EXPECT_EQ(de[k].evaluate({x, y}), Complex(-g.bracket(i, j)[k]));
        }
}

TEST(LieAlgebra, DifferentialSquaresToZero) {
    LieAlgebra g = from_equations(8, {{2, "-e1^e2 + 2*e3^e4"}, {3, "-1/2*e1^e3"}, {4, "-1/2*e1^e4"}});
    g.validate();
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            Form f = Form::monomial(8, {i, j});
            EXPECT_TRUE(g.differential(g.differential(f)).is_zero());
        }
}

TEST(LieAlgebra, JacobiViolationReportsTriple) {
    LieAlgebra g = LieAlgebra::from_brackets(4, {{0, 1, 2, Scalar(1)}, {2, 3, 0, Scalar(1)}});
    try {
        g.validate();
        FAIL() << "expected a Jacobi violation";
    } catch (const JacobiViolation& v) {
        EXPECT_EQ(v.triple, (std::array<int, 3>{0, 1, 3}));
    }
}

TEST(LieAlgebra, AntisymmetryChecked) {
    EXPECT_THROW(LieAlgebra::from_brackets(4, {{0, 1, 2, Scalar(1)}, {1, 0, 2, Scalar(1)}}), NotAntisymmetric);
    EXPECT_THROW(LieAlgebra::from_brackets(4, {{0, 0, 2, Scalar(1)}}), NotAntisymmetric);
    EXPECT_NO_THROW(LieAlgebra::from_brackets(4, {{0, 1, 2, Scalar(1)}, {1, 0, 2, Scalar(-1)}}));
}

TEST(LieAlgebra, KillingFormOfSu2) {
    RealMatrix b = su2_plus_r().killing_form();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(b(i, j), Scalar((i == j && i > 0) ? -8 : 0));
}

TEST(LieAlgebra, ProfileOfNilpotentExample) {
    LieAlgebra g = from_equations(12, {{9, "e1^e5"}, {10, "e1^e6"}, {11, "e1^e7"}, {12, "e1^e8"}});
    auto p = algebra_profile(g);
    ASSERT_TRUE(p.nilpotent_step.has_value());
    EXPECT_EQ(*p.nilpotent_step, 2);
    EXPECT_TRUE(p.solvable);
    EXPECT_TRUE(p.unimodular);
    EXPECT_FALSE(p.semisimple);
    // e2, e3, e4, e9..e12 are central and nothing else is.
    EXPECT_EQ(p.center_dim, 7);
    EXPECT_EQ(p.derived_dim, 4);
    auto inv = algebra_invariants(g);
    EXPECT_TRUE(inv.rational_constants);
}

TEST(LieAlgebra, ProfileOfSolvableAndReductive) {
    LieAlgebra s = from_equations(4, {{2, "-e1^e2"}, {3, "-e1^e3"}, {4, "-e1^e4"}});
    auto p = algebra_profile(s);
    EXPECT_FALSE(p.nilpotent_step.has_value());
    EXPECT_TRUE(p.solvable);
    EXPECT_FALSE(p.unimodular);
    auto q = algebra_profile(su2_plus_r());
    EXPECT_FALSE(q.solvable);
    EXPECT_TRUE(q.unimodular);
    EXPECT_FALSE(q.semisimple);
    EXPECT_EQ(q.center_dim, 1);
    EXPECT_EQ(q.derived_dim, 3);
}
