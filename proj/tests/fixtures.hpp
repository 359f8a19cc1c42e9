#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hha/expression.hpp"
#include "hha/hermitian.hpp"

namespace hha {
inline void PrintTo(const Form& f, std::ostream* os) {
    *os << (f.is_zero() ? std::string("0") : f.str([](int a) { return "x" + std::to_string(a); }));
}
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.str(); }
}  // namespace hha

namespace fixture {

using namespace hha;
using AlgebraPtr = HyperhermitianMetric::AlgebraPtr;

inline AlgebraPtr standard(int dim, const std::vector<std::pair<int, std::string>>& eqs) {
    std::vector<Form> de(dim, Form(dim));
    for (auto& [k, s] : eqs) de[k - 1] = parse_form(s, dim, real_resolver(dim));
    return std::make_shared<const HypercomplexAlgebra>(make_standard(LieAlgebra::from_structure_equations(de)));
}

inline AlgebraPtr qsg12() {
    return standard(12, {{9, "e1^e3"}, {10, "e1^e4 + e7^e8"}, {11, "e5^e7"}, {12, "-e3^e4 + e5^e8"}});
}
inline AlgebraPtr qbal12() { return standard(12, {{9, "e1^e5"}, {10, "e1^e6"}, {11, "e1^e7"}, {12, "e1^e8"}}); }
inline AlgebraPtr aff_c() { return standard(4, {{1, "-e1^e4 + e2^e3"}, {3, "e1^e2 - e3^e4"}}); }
inline AlgebraPtr rank1() { return standard(4, {{2, "-e1^e2"}, {3, "-e1^e3"}, {4, "-e1^e4"}}); }
inline AlgebraPtr third() {
    return standard(4, {{2, "-e1^e2 + 1/2*e3^e4"}, {3, "-1/2*e1^e3"}, {4, "-1/2*e1^e4"}});
}
inline AlgebraPtr abelian(int dim) { return standard(dim, {}); }

// nilpotent family in real dimension 4n
inline AlgebraPtr qgau(int n) {
    int dim = 4 * n;
    std::string a, b, c;
    for (int k = 0; k < n - 1; ++k) {
        std::string s = "e" + std::to_string(4 * k + 1) + "^e";
        a += (k ? " + " : "") + s + std::to_string(4 * k + 2);
        b += (k ? " + " : "") + s + std::to_string(4 * k + 3);
        c += (k ? " + " : "") + s + std::to_string(4 * k + 4);
    }
    return standard(dim, {{dim - 2, a}, {dim - 1, b}, {dim, c}});
}

// R + su(2), brackets [e2,e3] = e4 and cyclic
inline AlgebraPtr su2r() {
    LieAlgebra g = LieAlgebra::from_brackets(4, {{1, 2, 3, Scalar(1)}, {3, 1, 2, Scalar(1)}, {2, 3, 1, Scalar(1)}});
    return std::make_shared<const HypercomplexAlgebra>(make_standard(g));
}

// R^2 + su(2) + su(2)
inline AlgebraPtr su2su2() {
    LieAlgebra g = LieAlgebra::from_brackets(8, {{1, 2, 3, Scalar(1)}, {3, 1, 2, Scalar(1)}, {2, 3, 1, Scalar(1)},
                                                 {5, 6, 7, Scalar(1)}, {7, 5, 6, Scalar(1)}, {6, 7, 5, Scalar(1)}});
    return std::make_shared<const HypercomplexAlgebra>(make_standard(g));
}

// averages M over I, J, K
inline RealMatrix invariant_gram(const HypercomplexStructure& s, const RealMatrix& m) {
    RealMatrix k = s.K();
    return m + s.I.transpose() * m * s.I + s.J.transpose() * m * s.J + k.transpose() * m * k;
}

inline Form frame(const HypercomplexAlgebra& h, const std::string& s) {
    return parse_form(s, h.real_dim(), frame_resolver(h.N()));
}

inline HyperhermitianMetric random_metric(const AlgebraPtr& h, std::mt19937& rng, bool diagonal = false) {
    return HyperhermitianMetric::from_gram(h, random_invariant_gram(h->structure(), rng, 2, diagonal));
}

inline const std::vector<std::pair<std::array<Scalar, 3>, std::array<Scalar, 3>>>& sphere_pairs() {
    static const std::vector<std::pair<std::array<Scalar, 3>, std::array<Scalar, 3>>> pairs{
        {{Scalar(0), Scalar(1), Scalar(0)}, {Scalar(1), Scalar(0), Scalar(0)}},
        {{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0), Scalar(0)}},
        {{Scalar(3, 5), Scalar(4, 5), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}},
        {{Scalar(2, 3), Scalar(2, 3), Scalar(1, 3)}, {Scalar(2, 3), Scalar(-1, 3), Scalar(-2, 3)}},
        {{Scalar(2, 7), Scalar(3, 7), Scalar(6, 7)}, {Scalar(3, 7), Scalar(-6, 7), Scalar(2, 7)}},
    };
    return pairs;
}

inline AlgebraPtr rotated(const AlgebraPtr& h, std::size_t pair) {
    auto& [p, q] = sphere_pairs()[pair];
    return std::make_shared<const HypercomplexAlgebra>(h->rotate_pair(p, q));
}

}  // namespace fixture
