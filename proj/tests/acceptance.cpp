// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hha/catalog.hpp"

using namespace hha;
using fixture::sphere_pairs;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

AlgebraPtr standard_of(const std::string& name) {
    const auto& c = get_example(name);
    return c.joyce ? entry_metric(c).hc_ptr()
                   : std::make_shared<const HypercomplexAlgebra>(make_standard(entry_algebra(c)));
}

Form random_q_real(const HyperhermitianMetric& m, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    Form s(m.hc().real_dim());
    for (int r = 0; r < m.N(); ++r)
        for (int t = r + 1; t < m.N(); ++t) s.add_term((Mask(1) << r) | (Mask(1) << t), Complex(Scalar(d(rng)), Scalar(d(rng))));
    return s + m.hc().J_action(m.hc().conj(s));
}

// 1: golden catalog
Outcome golden_catalog(std::string& summary) {
    Outcome o;
    auto reports = run_report(catalog_names());
    for (auto& r : reports) {
        for (auto& c : r.checks) o.require(c.pass, r.name + ": " + c.what + " " + c.detail);
        const auto& rep = r.report;
        if (r.name.rfind("qbal", 0) == 0) {
            o.require(rep.q_balanced.value, r.name + " q_balanced");
            o.require(!rep.abelian_structure, r.name + " abelian structure");
        }
        if (r.name.rfind("qsg", 0) == 0) {
            o.require(rep.q_strongly_gauduchon.value && !rep.q_balanced.value, r.name + " q_strongly_gauduchon");
            o.require(rep.qsg_witness.has_value() && !rep.qsg_witness->is_zero(), r.name + " witness");
            const auto& e = get_example(r.name);
            auto h = standard_of(r.name);
            o.require(certify_qbal_nonexistence(*h, fixture::frame(*h, *e.expect.qbal_psi)).accepted, r.name + " certificate");
        }
        if (r.name.rfind("qgau", 0) == 0)
            o.require(rep.q_gauduchon.value && !rep.q_strongly_gauduchon.value, r.name + " q_gauduchon family");
    }
    int checked = 0;
    for (auto& n : catalog_names())
        if (n.rfind("qbal", 0) == 0 || n.rfind("qsg", 0) == 0 || n.rfind("qgau", 0) == 0) ++checked;
    o.require(checked == 11, "expected 3 qbal, 3 qsg and 5 qgau entries");
    summary = std::to_string(reports.size()) + " entries";
    return o;
}

// 2: Einstein table
Outcome einstein_table(std::string& summary) {
    Outcome o;
    const std::vector<std::pair<std::string, Scalar>> table{
        {"solv_aff_c", Scalar(0)},   {"solv_rank1", Scalar(-1, 2)}, {"solv_third", Scalar(-3, 16)},
        {"joyce_su2", Scalar(1)},    {"joyce_su2xsu2", Scalar(1)},
    };
    for (auto& [name, lambda] : table) {
        auto m = entry_metric(get_example(name));
        auto r = classify_metric(m);
        bool ok = r.einstein.lambda && *r.einstein.lambda == lambda && r.delJ_alpha == Complex(lambda) * m.omega();
        o.require(ok, name + ": lambda = " + (r.einstein.lambda ? r.einstein.lambda->str() : "none"));
        summary += name + " " + (r.einstein.lambda ? r.einstein.lambda->str() : "none") + "; ";
    }
    auto aff = entry_metric(get_example("solv_aff_c"));
    auto r = classify_metric(aff);
    o.require(r.alpha == Complex(0, -1) * fixture::frame(aff.hc(), "z2"), "solv_aff_c alpha");
    o.require(r.delJ_alpha.is_zero(), "solv_aff_c delJ alpha");
    if (!summary.empty()) summary.resize(summary.size() - 2);
    return o;
}

// 3: identity suite on randomized exact metrics
Outcome identity_suite(std::string& summary) {
    Outcome o;
    std::mt19937 rng(20261016);
    const std::vector<std::string> algebras{"qsg12",     "qbal12",     "qgau8",     "solv_aff_c",   "solv_rank1",
                                            "solv_third", "joyce_su2", "abelian8", "joyce_su2xsu2"};
    int metrics = 0, checks = 0;
    for (auto& name : algebras) {
        auto h = standard_of(name);
        for (int t = 0; t < 12; ++t) {
            auto m = fixture::random_metric(h, rng, t % 3 == 0);
            ++metrics;
            int n = m.n();
            std::string tag = name + "#" + std::to_string(t) + ": ";
            auto check = [&](bool ok, const std::string& what) {
                ++checks;
                o.require(ok, tag + what);
            };
            check(m.volume() == m.omega_I().power(2 * n) * Complex(factorial(2 * n).inverse()), "volume identity");
            check(Complex(m.pfaffian_value().norm2()) == determinant(m.hermitian()), "|pf|^2 = det");
            auto c = canonical_forms(m);
            check(c.alpha == c.alpha_lambda, "alpha routes");
            check(c.beta == c.beta_lambda, "beta routes");
            auto k = curvature(m, c);
            check(Complex(k.s_chern) == k.s_chern_trace, "s^Ch = 2 tr delJ alpha");
            check(m.trace_omega_I_wedge(k.ric_chern) == k.s_chern_trace, "s^Ch = tr Ric^Ch");
            if (n >= 2) {
                Form psi = random_q_real(m, rng), zeta = random_q_real(m, rng);
                Form lhs = psi.wedge(zeta).wedge(m.omega_power(n - 2)) * Complex(factorial(n - 2).inverse());
                Complex cf = m.trace_omega(psi) * m.trace_omega(zeta) - m.inner(psi, h->J_action(h->conj(zeta)));
                check(lhs == cf * m.omega_power(n) * Complex(factorial(n).inverse()), "product identity");
            }
            Form dob = h->del(m.omega_bar());
            Complex v = Complex(k.s_chern) / Complex(2) +
                        m.inner(h->del(h->delJ(m.omega_bar())), m.omega().wedge(m.omega_bar())) - Complex(m.norm2(dob));
            check(v == Complex(), "scalar identity");
            if (t < 2) {
                for (std::size_t p = 0; p < sphere_pairs().size(); ++p) {
                    auto mr = m.transport(fixture::rotated(h, p));
                    auto kr = curvature(mr, canonical_forms(mr));
                    check(kr.s_chern == k.s_chern && kr.s_bismut == k.s_bismut, "pair independence " + std::to_string(p));
                }
            }
        }
    }
    o.require(metrics >= 100, "fewer than 100 metrics");
    summary = std::to_string(metrics) + " metrics, " + std::to_string(checks) + " identities";
    return o;
}

// 4: equivalence audits
Outcome equivalence_audits(std::string& summary) {
    Outcome o;
    int comparisons = 0;
    for (auto& c : catalog()) {
        auto m = entry_metric(c);
        const auto& h = m.hc();
        int n = m.n();
        ClassificationReport r;
        try {
            r = classify_metric(m);
        } catch (const ConsistencyError& e) {
            o.require(false, c.name + ": " + e.what());
            continue;
        }
        auto cf = canonical_forms(m);
        auto k = curvature(m, cf);
        Form pn1 = m.omega_power(n - 1);
        Form mixed = pn1.wedge_unchecked(m.omega_bar_power(n));
        Form wtop = m.omega_I().power(2 * n - 1);
        auto agree = [&](bool a, bool b, const std::string& what) {
            ++comparisons;
            o.require(a == b, c.name + ": " + what);
        };
        bool gau = h.del(h.delbar(wtop)).is_zero();
        agree(gau, r.gauduchon.value, "Gauduchon flag");
        agree(gau, (k.s_chern - k.s_bismut - Scalar(2) * m.norm2(cf.alpha + cf.beta)).is_zero(), "Gauduchon scalar form");
        agree(gau, h.del(h.delJ(mixed)).is_zero(), "Gauduchon del delJ form");
        bool bal = h.d(wtop).is_zero();
        agree(bal, r.balanced.value, "balanced flag");
        agree(bal, (cf.alpha + cf.beta).is_zero(), "balanced alpha + beta");
        agree(bal, h.del(mixed).is_zero(), "balanced del form");
        bool qgau = h.del(h.delJ(pn1)).is_zero();
        agree(qgau, r.q_gauduchon.value, "q-Gauduchon flag");
        agree(qgau, (k.s_bismut + Scalar(2) * m.norm2(cf.beta)).is_zero(), "q-Gauduchon scalar form");
        if (n >= 2) agree(h.del(pn1).is_zero(), cf.beta.is_zero(), "q-balanced beta");
        agree(h.del(m.omega()).is_zero(), r.hkt.value, "HKT flag");
    }
    summary = std::to_string(catalog().size()) + " metrics, " + std::to_string(comparisons) + " comparisons";
    return o;
}

// 5: strong HKT positivity
Outcome positivity(std::string& summary) {
    Outcome o;
    for (std::string name : {"joyce_su2xsu2", "joyce_su3"}) {
        auto m = entry_metric(get_example(name));
        auto r = classify_metric(m);
        o.require(r.strong_hkt.value, name + " strong HKT");
        auto d = m.q_definiteness(r.delJ_alpha);
        bool psd = d == Definiteness::positive_definite || d == Definiteness::positive_semidefinite;
        o.require(psd && !r.delJ_alpha.is_zero(), name + " delJ alpha PSD and nonzero");
        summary += name + " " + (d == Definiteness::positive_definite ? "definite" : psd ? "semidefinite" : "not PSD") + "; ";
    }
    for (std::string name : {"abelian8", "abelian16"}) {
        auto r = classify_metric(entry_metric(get_example(name)));
        o.require(r.hyperkahler.value && r.delJ_alpha.is_zero(), name + " control");
    }
    summary += "abelian control delJ alpha = 0";
    return o;
}

// 6: constructions
Outcome constructions(std::string& summary) {
    Outcome o;
    auto unit = [](int dim, int k) {
        Vec v(dim);
        v[k] = Scalar(1);
        return v;
    };
    auto iff = [&](const std::string& a, const std::string& b, int ka, int kb) {
        auto m1 = entry_metric(get_example(a)), m2 = entry_metric(get_example(b));
        auto g = arroyo_nicolini(m1, unit(m1.hc().real_dim(), ka), m2, unit(m2.hc().real_dim(), kb));
        auto r1 = classify_metric(m1), r2 = classify_metric(m2), r = classify_metric(g);
        std::string tag = "an(" + a + ", " + b + ") ";
        o.require(g.hc().real_dim() == m1.hc().real_dim() + m2.hc().real_dim() + 4, tag + "dimension");
        o.require(r.hkt.value == (r1.hkt.value && r2.hkt.value), tag + "HKT iff");
        o.require(r.q_balanced.value == (r1.q_balanced.value && r2.q_balanced.value), tag + "q-balanced iff");
        o.require(r.q_strongly_gauduchon.value == (r1.q_strongly_gauduchon.value && r2.q_strongly_gauduchon.value),
                  tag + "q-strongly-Gauduchon iff");
        return std::make_pair(g.hc().real_dim(), r);
    };
    auto [an_dim, ro] = iff("qbal12", "qbal12", 1, 1);
    o.require(an_dim == 28, "an(qbal12, qbal12) is 28-dimensional");
    o.require(ro.q_balanced.value && !ro.hkt.value, "an(qbal12, qbal12) q-balanced, not HKT");
    iff("qsg12", "abelian4", 1, 0);

    auto base = entry_metric(get_example("joyce_su2"));
    auto bf = barberis_fino(base, spin_half_rep(base.hc().algebra()));
    o.require(bf.symplectic, "rho is sp(1)-valued");
    o.require(bf.pullback && bf.pullback->all(), "pullback identities");
    const auto& t = bf.metric.hc();
    auto cb = canonical_forms(base), ct = canonical_forms(bf.metric);
    o.require(ct.alpha == pull_back(base.hc(), t, cb.alpha), "alpha~ = alpha o p");
    auto rt = classify_metric(bf.metric);
    o.require(classify_metric(base).strong_hkt.value && rt.strong_hkt.value, "strong HKT preserved");
    summary = "an(qbal12, qbal12) dim " + std::to_string(an_dim) + ", bf(joyce_su2) dim " +
              std::to_string(t.real_dim());
    return o;
}

// 7: pair dependence on qsg12
Outcome pair_dependence(std::string& summary) {
    Outcome o;
    auto h = standard_of("qsg12");
    auto m = HyperhermitianMetric::unitary(h);
    auto r = classify_metric(m);
    o.require(r.q_strongly_gauduchon.value, "(I,J) q-strongly-Gauduchon");
    bool qbal_none = certify_qbal_nonexistence(*h, fixture::frame(*h, "2*z5")).accepted;
    o.require(qbal_none, "q-balanced nonexistence certificate");
    auto ji = fixture::rotated(h, 0);
    auto fam = certify_no_qsg_family(*ji, qbal_none);
    o.require(fam.holds, "(J,I) family certificate: " + fam.reason);
    o.require(!classify_metric(m.transport(ji)).q_strongly_gauduchon.value, "(J,I) unitary metric");
    std::mt19937 rng(7);
    int compared = 0;
    for (int t = 0; t < 3; ++t) {
        auto mt = t == 0 ? m : fixture::random_metric(h, rng);
        auto base = classify_metric(mt);
        for (std::size_t p = 0; p < sphere_pairs().size(); ++p) {
            auto rp = classify_metric(mt.transport(fixture::rotated(h, p)));
            o.require(rp.q_balanced.value == base.q_balanced.value, "q-balanced pair " + std::to_string(p));
            o.require(rp.q_gauduchon.value == base.q_gauduchon.value, "q-Gauduchon pair " + std::to_string(p));
            ++compared;
        }
    }
    summary = "(J,I) family certificate: span " + std::to_string(fam.span_dim) + ", image rank " +
              std::to_string(fam.image_rank) + ", joint rank " + std::to_string(fam.joint_rank) + "; " +
              std::to_string(compared) + " rotated classifications";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome(std::string&)>>> criteria{
        {"golden catalog", golden_catalog},         {"Einstein table", einstein_table},
        {"identity suite", identity_suite},         {"equivalence audits", equivalence_audits},
        {"strong HKT positivity", positivity},      {"construction round-trips", constructions},
        {"pair dependence", pair_dependence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string summary;
        Outcome o;
        try {
            o = criteria[i].second(summary);
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
        if (!summary.empty()) line << " (" << summary << ")";
        line << " [" << secs << " s]";
        std::cout << line.str() << "\n";
        for (auto& n : o.notes) std::cout << "    " << n << "\n";
        if (!o.pass) ++failures;
    }
    return failures ? 1 : 0;
}
