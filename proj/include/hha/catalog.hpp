#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "expression.hpp"

namespace hha {

struct Expectation {
    std::optional<bool> hyperkahler, hkt, strong_hkt, q_balanced, q_strongly_gauduchon, q_gauduchon;
    std::optional<bool> abelian_structure, alpha_zero;
    std::optional<Scalar> lambda;
    std::optional<Scalar> s_chern;
    std::optional<std::string> alpha;        // frame expression
    std::optional<std::string> qsg_witness;  // verified under delJ against del Omega^{n-1}
    std::optional<std::string> qbal_psi;     // certificate witness that must be accepted
    bool no_qsg_family = false;
    bool delJ_alpha_positive = false;
};

// One displayed example. Real structure equations are keyed by 1-based index; complex
// equations list d zeta^r for every r with nonzero differential.
struct CatalogEntry {
    std::string name;
    std::string description;
    int dim = 0;
    std::vector<std::pair<int, std::string>> structure_equations;
    std::vector<std::pair<int, std::string>> complex_equations;
    std::function<JoyceData()> joyce;  // set for Joyce entries instead of structure equations
    Expectation expect;
};

struct CheckLine {
    std::string what;
    bool pass = false;
    std::string detail;
};

struct EntryReport {
    std::string name;
    ClassificationReport report;
    std::vector<CheckLine> checks;
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
    }
};

namespace catalog_detail {

inline std::string e(int k) { return "e" + std::to_string(k); }

inline std::string sum(const std::vector<std::pair<int, int>>& terms) {
    std::string s;
    for (auto [a, b] : terms) s += (s.empty() ? "" : " + ") + e(a) + "^" + e(b);
    return s;
}

inline CatalogEntry nilpotent(std::string name, std::string description, int dim,
                              std::vector<std::pair<int, std::string>> eqs,
                              std::vector<std::pair<int, std::string>> complex) {
    CatalogEntry c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.dim = dim;
    c.structure_equations = std::move(eqs);
    c.complex_equations = std::move(complex);
    c.expect.alpha_zero = true;
    c.expect.abelian_structure = false;
    return c;
}

inline CatalogEntry qgau(int n) {
    int dim = 4 * n;
    std::vector<std::pair<int, int>> a, b, cc;
    std::string z1, z2;
    for (int k = 1; k < n; ++k) {
        a.push_back({4 * k - 3, 4 * k - 2});
        b.push_back({4 * k - 3, 4 * k - 1});
        cc.push_back({4 * k - 3, 4 * k});
        std::string o = std::to_string(2 * k - 1), t = std::to_string(2 * k);
        z1 += (k > 1 ? " + " : "") + ("z" + o + "^zb" + o);
        z2 += (k > 1 ? " + " : "") + ("z" + o + "^z" + t + " + zb" + o + "^z" + t);
    }
    CatalogEntry c = nilpotent("qgau" + std::to_string(dim),
                               "nilpotent family, quaternionic dimension " + std::to_string(n) +
                                   ": quaternionic Gauduchon, no quaternionic strongly Gauduchon metric",
                               dim, {{dim - 2, sum(a)}, {dim - 1, sum(b)}, {dim, sum(cc)}},
                               {{2 * n - 1, "-1/2*(" + z1 + ")"}, {2 * n, "1/2*(" + z2 + ")"}});
    c.expect.q_gauduchon = true;
    c.expect.q_strongly_gauduchon = false;
    c.expect.q_balanced = false;
    c.expect.no_qsg_family = true;
    return c;
}

inline CatalogEntry abelian(int dim) {
    CatalogEntry c;
    c.name = "abelian" + std::to_string(dim);
    c.description = "abelian R^" + std::to_string(dim) + ", flat hyperkahler";
    c.dim = dim;
    c.expect.hyperkahler = true;
    c.expect.strong_hkt = true;
    c.expect.abelian_structure = true;
    c.expect.alpha_zero = true;
    c.expect.lambda = Scalar(0);
    c.expect.s_chern = Scalar(0);
    c.expect.alpha = "0";
    return c;
}

inline CatalogEntry joyce(std::string name, std::string description, std::function<JoyceData()> data, int dim) {
    CatalogEntry c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.dim = dim;
    c.joyce = std::move(data);
    c.expect.strong_hkt = true;
    c.expect.hyperkahler = false;
    c.expect.lambda = Scalar(1);
    c.expect.alpha_zero = false;
    c.expect.delJ_alpha_positive = true;
    return c;
}

inline std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> out;
    auto qbal = [&](CatalogEntry c) {
        c.expect.q_balanced = true;
        c.expect.hkt = false;
        out.push_back(std::move(c));
    };
    qbal(nilpotent("qbal12", "nilpotent, quaternionic balanced unitary metric, no HKT (non-abelian structure)", 12,
                   {{9, "e1^e5"}, {10, "e1^e6"}, {11, "e1^e7"}, {12, "e1^e8"}},
                   {{5, "1/2*(z1^z3 + zb1^z3)"}, {6, "1/2*(z1^z4 + zb1^z4)"}}));
    qbal(nilpotent("qbal16", "nilpotent, quaternionic balanced unitary metric, no HKT (non-abelian structure)", 16,
                   {{13, "e1^e5 + e1^e9"}, {14, "e1^e6 + e1^e10"}, {15, "e1^e7 + e1^e11"}, {16, "e1^e8 + e1^e12"}},
                   {{7, "1/2*(z1^z3 + zb1^z3 + z1^z5 + zb1^z5)"}, {8, "1/2*(z1^z4 + zb1^z4 + z1^z6 + zb1^z6)"}}));
    qbal(nilpotent("qbal20", "nilpotent, quaternionic balanced unitary metric, no HKT (non-abelian structure)", 20,
                   {{17, "e1^e5 + e9^e13"}, {18, "e1^e6 + e9^e14"}, {19, "e1^e7 + e9^e15"}, {20, "e1^e8 + e9^e16"}},
                   {{9, "1/2*(z1^z3 + zb1^z3 + z5^z7 + zb5^z7)"}, {10, "1/2*(z1^z4 + zb1^z4 + z5^z8 + zb5^z8)"}}));

    auto qsg = [&](CatalogEntry c, std::string witness) {
        c.expect.q_strongly_gauduchon = true;
        c.expect.q_balanced = false;
        c.expect.qsg_witness = std::move(witness);
        c.expect.qbal_psi = "2*z" + std::to_string(c.dim / 2 - 1);
        out.push_back(std::move(c));
    };
    qsg(nilpotent("qsg12", "nilpotent, quaternionic strongly Gauduchon unitary metric, no quaternionic balanced metric",
                  12, {{9, "e1^e3"}, {10, "e1^e4 + e7^e8"}, {11, "e5^e7"}, {12, "-e3^e4 + e5^e8"}},
                  {{5, "1/2*(z1^z2 + zb1^z2 - z4^zb4)"}, {6, "1/2*(z3^z4 + zb3^z4 + z2^zb2)"}}),
        "2*(z3^z4^z5^z6 - z1^z2^z5^z6)");
    // witnesses below come from the exactness solver
    qsg(nilpotent("qsg16", "nilpotent, quaternionic strongly Gauduchon unitary metric, no quaternionic balanced metric",
                  16,
                  {{13, "e1^e3"}, {14, "e1^e4 + e7^e8 + e11^e12"}, {15, "e5^e7 + e9^e11"},
                   {16, "-e3^e4 + e5^e8 + e9^e12"}},
                  {{7, "1/2*(z1^z2 + zb1^z2 - z4^zb4 - z6^zb6)"},
                   {8, "1/2*(z3^z4 + zb3^z4 + z5^z6 + zb5^z6 + z2^zb2)"}}),
        "12*z3^z4^z5^z6^z7^z8 - 6*z1^z2^z3^z4^z7^z8");
    qsg(nilpotent("qsg20", "nilpotent, quaternionic strongly Gauduchon unitary metric, no quaternionic balanced metric",
                  20,
                  {{17, "e1^e3 + e5^e7"}, {18, "e1^e4 + e5^e8 + e11^e12 + e15^e16"}, {19, "e9^e11 + e13^e15"},
                   {20, "-e3^e4 - e7^e8 + e9^e12 + e13^e16"}},
                  {{9, "1/2*(z1^z2 + zb1^z2 + z3^z4 + zb3^z4 - z6^zb6 - z8^zb8)"},
                   {10, "1/2*(z5^z6 + zb5^z6 + z7^z8 + zb7^z8 + z2^zb2 + z4^zb4)"}}),
        "48*z1^z2^z5^z6^z7^z8^z9^z10 - 48*z1^z2^z3^z4^z5^z6^z9^z10");

    for (int n = 2; n <= 6; ++n) out.push_back(qgau(n));

    auto solv = [&](std::string name, std::string description, std::vector<std::pair<int, std::string>> eqs,
                    std::vector<std::pair<int, std::string>> complex, Scalar lambda, std::string alpha) {
        CatalogEntry c;
        c.name = std::move(name);
        c.description = std::move(description);
        c.dim = 4;
        c.structure_equations = std::move(eqs);
        c.complex_equations = std::move(complex);
        c.expect.hkt = true;
        c.expect.lambda = lambda;
        c.expect.s_chern = Scalar(2) * lambda;
        c.expect.alpha = std::move(alpha);
        c.expect.alpha_zero = false;
        out.push_back(std::move(c));
    };
    solv("solv_aff_c", "aff(C): HKT-Einstein with vanishing Einstein constant",
         {{1, "-e1^e4 + e2^e3"}, {3, "e1^e2 - e3^e4"}},
         {{1, "i/2*(zb1^z2 - z1^zb2)"}, {2, "i/2*(z1^zb1 - z2^zb2)"}}, Scalar(0), "-i*z2");
    solv("solv_rank1", "rank-one solvable: HKT-Einstein with lambda = -1/2",
         {{2, "-e1^e2"}, {3, "-e1^e3"}, {4, "-e1^e4"}}, {{1, "1/2*z1^zb1"}, {2, "-1/2*(z1^z2 + zb1^z2)"}},
         Scalar(-1, 2), "-z1");
    // de2 carries 1/2 e3^e4; with any other coefficient J is not integrable
    solv("solv_third", "solvable: HKT-Einstein with lambda = -3/16",
         {{2, "-e1^e2 + 1/2*e3^e4"}, {3, "-1/2*e1^e3"}, {4, "-1/2*e1^e4"}},
         {{1, "1/2*z1^zb1 - 1/4*z2^zb2"}, {2, "-1/4*(z1^z2 + zb1^z2)"}}, Scalar(-3, 16), "-3/4*z1");

    out.push_back(joyce("joyce_su2", "T^1 x SU(2): strong HKT-Einstein, lambda = 1", joyce_su2, 4));
    out.push_back(joyce("joyce_su2xsu2", "T^2 x SU(2) x SU(2): strong HKT-Einstein, lambda = 1", joyce_su2xsu2, 8));
    out.push_back(joyce("joyce_su3", "SU(3): strong HKT-Einstein, lambda = 1", joyce_su3, 8));

    for (int d : {4, 8, 12, 16}) out.push_back(abelian(d));
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.name < b.name; });
    return out;
}

}  // namespace catalog_detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = catalog_detail::build();
    return entries;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> v;
    for (auto& c : catalog()) v.push_back(c.name);
    return v;
}

inline const CatalogEntry& get_example(const std::string& name) {
    for (auto& c : catalog())
        if (c.name == name) return c;
    throw InputError("unknown catalog entry '" + name + "'");
}

inline LieAlgebra entry_algebra(const CatalogEntry& c) {
    std::vector<Form> de(c.dim, Form(c.dim));
    for (auto& [k, s] : c.structure_equations) de[k - 1] = parse_form(s, c.dim, real_resolver(c.dim));
    return LieAlgebra::from_structure_equations(de, c.name);
}

// The entry's algebra with the standard structure and its reference metric.
inline HyperhermitianMetric entry_metric(const CatalogEntry& c) {
    if (c.joyce) return joyce_build(c.joyce()).metric;
    auto h = std::make_shared<const HypercomplexAlgebra>(make_standard(entry_algebra(c)));
    return HyperhermitianMetric::unitary(h);
}

inline EntryReport run_entry(const CatalogEntry& c) {
    EntryReport out;
    out.name = c.name;
    HyperhermitianMetric m = entry_metric(c);
    const auto& h = m.hc();
    out.report = classify_metric(m);
    const auto& r = out.report;
    const auto& x = c.expect;
    auto check = [&](const std::string& what, bool pass, const std::string& detail = "") {
        out.checks.push_back({what, pass, detail});
    };
    auto flag = [&](const std::string& what, const std::optional<bool>& want, bool got) {
        if (want) check(what + " = " + (*want ? "true" : "false"), *want == got, got ? "got true" : "got false");
    };
    auto frame_form = [&](const std::string& s) { return parse_form(s, h.real_dim(), frame_resolver(h.N())); };

    if (!c.complex_equations.empty()) {
        std::vector<Form> want(h.N(), Form(h.real_dim()));
        for (auto& [k, s] : c.complex_equations) want[k - 1] = frame_form(s);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < h.N(); ++i) {
            Form got = h.d(h.zeta(i));
            if (got != want[i]) {
                ok = false;
                detail = "d z" + std::to_string(i + 1) + " = " + (got.is_zero() ? "0" : h.str(got));
                break;
            }
        }
        check("complex structure equations", ok, detail);
    }
    flag("hyperkahler", x.hyperkahler, r.hyperkahler.value);
    flag("hkt", x.hkt, r.hkt.value);
    flag("strong_hkt", x.strong_hkt, r.strong_hkt.value);
    flag("q_balanced", x.q_balanced, r.q_balanced.value);
    flag("q_strongly_gauduchon", x.q_strongly_gauduchon, r.q_strongly_gauduchon.value);
    flag("q_gauduchon", x.q_gauduchon, r.q_gauduchon.value);
    flag("abelian_structure", x.abelian_structure, r.abelian_structure);
    flag("alpha_zero", x.alpha_zero, r.sl.alpha_zero);
    if (x.lambda)
        check("lambda = " + x.lambda->str(), r.einstein.lambda && *r.einstein.lambda == *x.lambda,
              r.einstein.lambda ? "got " + r.einstein.lambda->str() : "not Einstein");
    if (x.s_chern) check("s_chern = " + x.s_chern->str(), r.s_chern == *x.s_chern, "got " + r.s_chern.str());
    if (x.alpha)
        check("alpha = " + *x.alpha, r.alpha == frame_form(*x.alpha),
              "got " + (r.alpha.is_zero() ? std::string("0") : h.str(r.alpha)));
    if (x.qsg_witness) {
        Form w = frame_form(*x.qsg_witness);
        check("delJ(stored witness) = del Omega^{n-1}", h.delJ(w) == h.del(m.omega_power(m.n() - 1)));
    }
    if (x.qbal_psi) {
        auto cert = certify_qbal_nonexistence(h, frame_form(*x.qbal_psi));
        check("qbal certificate for psi = " + *x.qbal_psi, cert.accepted, cert.reason);
    }
    if (x.no_qsg_family) {
        auto f = certify_no_qsg_family(h);
        check("no invariant q-strongly-Gauduchon metric (family)", f.holds, f.reason);
    }
    if (x.delJ_alpha_positive) {
        Definiteness d = hermitian_definiteness(q_hermitian_matrix(r.delJ_alpha, m.N()));
        bool ok = !r.delJ_alpha.is_zero() &&
                  (d == Definiteness::positive_semidefinite || d == Definiteness::positive_definite);
        check("delJ alpha q-semipositive and nonzero", ok, to_string(d));
    }
    return out;
}

inline std::vector<EntryReport> run_report(const std::vector<std::string>& names) {
    std::vector<EntryReport> out;
    for (auto& n : names) out.push_back(run_entry(get_example(n)));
    return out;
}

}  // namespace hha
