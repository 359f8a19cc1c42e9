#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hha/hermitian.hpp"

namespace hha {

// A primary definition and one of its equivalent forms disagree.
struct ConsistencyError : MathError {
    using MathError::MathError;
};

// ---------------------------------------------------------------- linear algebra on forms

// Coordinates of forms in the monomial basis they jointly use.
class FormCoordinates {
public:
    explicit FormCoordinates(const std::vector<Form>& forms) {
        for (const Form& f : forms)
            for (auto& [m, c] : f.terms()) index_.emplace(m, 0);
        std::size_t k = 0;
        for (auto& [m, i] : index_) i = k++;
    }
    void add(const Form& f) {
        for (auto& [m, c] : f.terms())
            if (!index_.count(m)) index_.emplace(m, 0);
        std::size_t k = 0;
        for (auto& [m, i] : index_) i = k++;
    }
    std::size_t size() const { return index_.size(); }
    // Columns are the given forms.
    ComplexMatrix matrix(const std::vector<Form>& forms) const {
        ComplexMatrix a(index_.size(), forms.size());
        for (std::size_t j = 0; j < forms.size(); ++j)
            for (auto& [m, c] : forms[j].terms()) a(index_.at(m), j) = c;
        return a;
    }
    std::vector<Complex> vector(const Form& f) const {
        std::vector<Complex> v(index_.size());
        for (auto& [m, c] : f.terms()) v[index_.at(m)] = c;
        return v;
    }

private:
    std::map<Mask, std::size_t> index_;
};

inline std::size_t span_rank(const std::vector<Form>& forms) {
    if (forms.empty()) return 0;
    FormCoordinates co(forms);
    return rank(co.matrix(forms));
}

// ---------------------------------------------------------------- exactness

enum class ExactnessOperator { del, delJ, del_delJ };

inline std::string to_string(ExactnessOperator op) {
    switch (op) {
        case ExactnessOperator::del: return "del";
        case ExactnessOperator::delJ: return "delJ";
        case ExactnessOperator::del_delJ: return "del_delJ";
    }
    return "?";
}

inline Form apply_operator(const HypercomplexAlgebra& h, ExactnessOperator op, const Form& f) {
    switch (op) {
        case ExactnessOperator::del: return h.del(f);
        case ExactnessOperator::delJ: return h.delJ(f);
        case ExactnessOperator::del_delJ: return h.del(h.delJ(f));
    }
    return f;
}

struct ExactnessResult {
    bool exact = false;
    std::optional<Form> witness;
    std::size_t source_dim = 0;
    std::size_t image_rank = 0;
    std::size_t augmented_rank = 0;  // exceeds image_rank exactly when no witness exists
};

inline std::vector<Form> monomial_basis(const HypercomplexAlgebra& h, int p, int q) {
    std::vector<Form> out;
    for (Mask m : bidegree_masks(h.N(), p, q)) {
        Form f(h.real_dim());
        f.add_term(m, Complex(1));
        out.push_back(f);
    }
    return out;
}

inline ExactnessResult solve_exactness(const HypercomplexAlgebra& h, ExactnessOperator op, const Form& target,
                                       int p, int q) {
    ExactnessResult r;
    auto basis = monomial_basis(h, p, q);
    std::vector<Form> images;
    images.reserve(basis.size());
    for (const Form& b : basis) images.push_back(apply_operator(h, op, b));
    r.source_dim = basis.size();
    FormCoordinates co(images);
    co.add(target);
    ComplexMatrix a = co.matrix(images);
    r.image_rank = rank(a);
    std::vector<Form> aug = images;
    aug.push_back(target);
    r.augmented_rank = rank(co.matrix(aug));
    auto x = solve(a, co.vector(target));
    if (!x) return r;
    Form w(h.real_dim());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!(*x)[i].is_zero()) w += (*x)[i] * basis[i];
    if (apply_operator(h, op, w) != target) throw ConsistencyError("exactness witness does not verify");
    r.exact = true;
    r.witness = w;
    return r;
}

// ---------------------------------------------------------------- report

struct Flag {
    bool value = false;
    std::string residual;  // printed defining form; empty when it vanishes
};

struct SLCheck {
    bool alpha_zero = false;
    bool d_eta_zero = false;
    bool delJ_alpha_zero = false;
};

struct EinsteinResult {
    std::optional<Scalar> lambda;
    std::string residual;
};

struct ClassificationReport {
    int n = 0;
    bool degenerate_n1 = false;
    bool abelian_structure = false;
    Flag hyperkahler, hkt, strong_hkt, q_balanced, q_strongly_gauduchon, q_gauduchon, balanced, gauduchon;
    std::array<Flag, 3> skt;  // per I, J, K
    std::optional<Form> qsg_witness;
    Scalar s_chern, s_bismut;
    EinsteinResult einstein;
    SLCheck sl;
    Form alpha, beta;
    Form delJ_alpha;
    std::string scope = "invariant metrics";
};

inline std::string residual_of(const HypercomplexAlgebra& h, const Form& f) { return f.is_zero() ? "" : h.str(f); }

inline Flag make_flag(const HypercomplexAlgebra& h, const Form& defining) {
    return {defining.is_zero(), residual_of(h, defining)};
}

inline void require_agreement(bool primary, bool equivalent, const std::string& what) {
    if (primary != equivalent) throw ConsistencyError(what + ": definition and equivalent characterization disagree");
}

inline Form L_inverse_action(const HypercomplexAlgebra& h, int which, const Form& f) {
    Form out(f.dim());
    for (auto& [m, c] : f.terms()) {
        Form t(f.dim());
        t.add_term(m, c);
        Form lt = which == 0 ? h.I_action(t) : which == 1 ? h.J_action(t) : h.K_action(t);
        out += popcount(m) % 2 ? -lt : lt;
    }
    return out;
}

inline EinsteinResult einstein_factor(const HyperhermitianMetric& m, const Form& delJ_alpha, const Curvature& k) {
    EinsteinResult e;
    const auto& h = m.hc();
    auto [mask, c0] = *m.omega().terms().begin();
    Complex l = delJ_alpha.coefficient(mask) / c0;
    Form resid = delJ_alpha - l * m.omega();
    if (!resid.is_zero()) {
        e.residual = h.str(resid);
        return e;
    }
    if (!l.is_real()) throw ConsistencyError("Einstein factor is not real");
    e.lambda = l.re();
    if (k.s_chern != Scalar(2 * m.n()) * l.re()) throw ConsistencyError("s^Ch differs from 2 n lambda");
    Form anti = (k.ric_chern - h.J_action(k.ric_chern)) * Complex(Scalar(1, 2));
    if (anti != l * m.omega_I()) throw ConsistencyError("J-anti-invariant Chern-Ricci part differs from lambda omega_I");
    return e;
}

inline SLCheck sl_check(const HypercomplexAlgebra& h, const CanonicalForms& c) {
    return {c.alpha.is_zero(), h.d(c.eta).is_zero(), h.delJ(c.alpha).is_zero()};
}

inline ClassificationReport classify_metric(const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    int n = m.n();
    ClassificationReport r;
    r.n = n;
    r.degenerate_n1 = n == 1;
    r.abelian_structure = is_abelian_structure(h.algebra(), h.structure());
    CanonicalForms c = canonical_forms(m);
    if (c.alpha != c.alpha_lambda) throw ConsistencyError("alpha: division and Lambda routes disagree");
    if (c.beta != c.beta_lambda) throw ConsistencyError("beta: division and Lambda routes disagree");
    Curvature k = curvature(m, c);
    if (Complex(k.s_chern) != k.s_chern_trace) throw ConsistencyError("s^Ch trace cross-check failed");
    if (Complex(k.s_bismut) != k.s_bismut_trace) throw ConsistencyError("s^Bis trace cross-check failed");
    r.alpha = c.alpha;
    r.beta = c.beta;
    r.delJ_alpha = k.delJ_alpha;
    r.s_chern = k.s_chern;
    r.s_bismut = k.s_bismut;

    const Form& om = m.omega();
    Form omb = m.omega_bar();
    Form wI = m.omega_I(), wJ = m.omega_J(), wK = m.omega_K();

    Form dW = h.d(wI);
    r.hyperkahler = {dW.is_zero() && h.d(wJ).is_zero() && h.d(wK).is_zero(), residual_of(h, dW + h.d(om))};
    r.hkt = make_flag(h, h.del(om));
    Form ddjb = h.del(h.delJ(omb));
    r.strong_hkt = {r.hkt.value && ddjb.is_zero(), r.hkt.value ? residual_of(h, ddjb) : r.hkt.residual};

    Form pn1 = m.omega_power(n - 1);
    Form dpn1 = h.del(pn1);
    r.q_balanced = make_flag(h, dpn1);
    if (n >= 2) require_agreement(r.q_balanced.value, c.beta.is_zero(), "quaternionic balanced");

    if (r.q_balanced.value) {
        r.q_strongly_gauduchon = {true, ""};
        r.qsg_witness = Form(h.real_dim());
    } else {
        auto ex = solve_exactness(h, ExactnessOperator::delJ, dpn1, 2 * n - 2, 0);
        r.q_strongly_gauduchon = {ex.exact, r.q_balanced.residual};
        if (ex.exact) r.qsg_witness = ex.witness;
    }

    Form ddj = h.del(h.delJ(pn1));
    r.q_gauduchon = make_flag(h, ddj);
    Scalar nb = m.norm2(c.beta);
    require_agreement(r.q_gauduchon.value, (k.s_bismut + Scalar(2) * nb).is_zero(), "quaternionic Gauduchon");

    Form wtop = wI.power(2 * n - 1);
    Form mixed = pn1.wedge_unchecked(m.omega_bar_power(n));
    r.balanced = make_flag(h, h.d(wtop));
    require_agreement(r.balanced.value, (c.alpha + c.beta).is_zero(), "balanced (alpha + beta)");
    require_agreement(r.balanced.value, h.del(mixed).is_zero(), "balanced (del of Omega^{n-1} Omegabar^n)");

    r.gauduchon = make_flag(h, h.del(h.delbar(wtop)));
    Scalar gs = k.s_chern - k.s_bismut - Scalar(2) * m.norm2(c.alpha + c.beta);
    require_agreement(r.gauduchon.value, gs.is_zero(), "Gauduchon (scalar form)");
    require_agreement(r.gauduchon.value, h.del(h.delJ(mixed)).is_zero(), "Gauduchon (del delJ form)");

    const Form* wl[3] = {&wI, &wJ, &wK};
    for (int l = 0; l < 3; ++l) r.skt[l] = make_flag(h, h.d(L_inverse_action(h, l, h.d(*wl[l]))));
    require_agreement(r.skt[0].value, h.del(h.delbar(wI)).is_zero(), "SKT for I");

    r.einstein = einstein_factor(m, k.delJ_alpha, k);
    r.sl = sl_check(h, c);

    // implication chain
    bool chain[5] = {r.hyperkahler.value, r.hkt.value, r.q_balanced.value, r.q_strongly_gauduchon.value,
                     r.q_gauduchon.value};
    for (int i = 0; i + 1 < 5; ++i)
        if (chain[i] && !chain[i + 1]) throw ConsistencyError("implication chain of special metrics violated");
    if (r.strong_hkt.value && !r.hkt.value) throw ConsistencyError("strong HKT without HKT");
    return r;
}

// ---------------------------------------------------------------- conformal class

struct ConformalObstruction {
    Scalar c1;              // s^Ch - 2 |alpha|^2
    Scalar gamma_unit;      // s^Bis at unit volume
    Scalar gamma_metric;    // s^Bis times the metric volume density
    bool q_gauduchon_in_class = false;
    bool q_balanced_in_class = false;
};

inline ConformalObstruction conformal_class_obstruction(const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    CanonicalForms c = canonical_forms(m);
    Curvature k = curvature(m, c);
    Scalar gs = k.s_chern - k.s_bismut - Scalar(2) * m.norm2(c.alpha + c.beta);
    if (!gs.is_zero()) throw InputError("metric is not Gauduchon: s^Ch - s^Bis - 2|alpha+beta|^2 = " + gs.str());
    ConformalObstruction o;
    o.c1 = k.s_chern - Scalar(2) * m.norm2(c.alpha);
    o.gamma_unit = k.s_bismut;
    int R = h.real_dim();
    Mask full = R >= 64 ? ~Mask(0) : ((Mask(1) << R) - 1);
    Complex density = h.to_real(m.volume()).coefficient(full);
    o.gamma_metric = k.s_bismut * real_or_throw(density, "volume density");
    o.q_gauduchon_in_class = o.c1.is_zero() && o.gamma_unit.sign() <= 0;
    o.q_balanced_in_class = o.c1.is_zero() && o.gamma_unit.is_zero();
    return o;
}

// ---------------------------------------------------------------- certificates

struct Certificate {
    bool accepted = false;
    std::string reason;
    Form sigma;
    std::vector<std::string> transcript;
};

// alpha for the frame volume form; it does not depend on the metric.
inline Form frame_alpha(const HypercomplexAlgebra& h) {
    Mask anti = ~h.holo_mask() & (h.real_dim() >= 64 ? ~Mask(0) : ((Mask(1) << h.real_dim()) - 1));
    Form top(h.real_dim());
    top.add_term(anti, Complex(1));
    Form d = h.del(top);
    Form a(h.real_dim());
    for (int r = 0; r < h.N(); ++r) a.add_term(Mask(1) << r, d.coefficient((Mask(1) << r) | anti));
    return a;
}

// Accepts when sigma = del psi is a nonzero q-real q-semipositive (2,0)-form on an
// algebra where invariant exact top forms vanish and alpha is zero for every metric.
inline Certificate certify_qbal_nonexistence(const HypercomplexAlgebra& h, const Form& psi) {
    Certificate c;
    c.sigma = h.del(psi);
    auto reject = [&](const std::string& why) {
        c.accepted = false;
        c.reason = why;
        c.transcript.push_back("rejected: " + why);
        return c;
    };
    c.transcript.push_back("sigma = del psi = " + (c.sigma.is_zero() ? std::string("0") : h.str(c.sigma)));
    if (c.sigma.is_zero()) return reject("sigma is zero");
    for (auto& [mk, v] : c.sigma.terms())
        if (popcount(mk) != 2 || (mk & ~h.holo_mask()) != 0) return reject("sigma is not a (2,0)-form");
    if (h.J_action(h.conj(c.sigma)) != c.sigma) return reject("sigma is not q-real");
    Definiteness d = hermitian_definiteness(q_hermitian_matrix(c.sigma, h.N()));
    c.transcript.push_back("q-Hermitian matrix of sigma: " + to_string(d));
    if (d != Definiteness::positive_semidefinite && d != Definiteness::positive_definite)
        return reject("sigma is not q-semipositive (" + to_string(d) + ")");
    if (!algebra_profile(h.algebra()).unimodular) return reject("algebra is not unimodular");
    c.transcript.push_back("unimodular: invariant exact top-degree forms vanish");
    Form a = frame_alpha(h);
    if (!a.is_zero()) return reject("alpha is nonzero for invariant metrics");
    c.transcript.push_back("alpha = 0 for every invariant metric");
    c.transcript.push_back(
        "for q-balanced Omega: sigma ^ Omega^{n-1} ^ Omegabar^n = d(psi ^ Omega^{n-1} ^ Omegabar^n) = 0, "
        "while tr_Omega sigma > 0; contradiction");
    c.accepted = true;
    c.reason = "no invariant quaternionic balanced metric";
    return c;
}

// Every metric fails the strongly Gauduchon condition: del Omega^{n-1} always lies in
// V = span del(Lambda^{2n-2,0}) which meets im delJ trivially, and no metric is q-balanced.
struct FamilyCertificate {
    bool holds = false;
    std::size_t span_dim = 0;
    std::size_t image_rank = 0;
    std::size_t joint_rank = 0;
    bool positive_combination = false;  // del Omega^{n-1} is a positive sum of pair minors
    std::string reason;
};

inline FamilyCertificate certify_no_qsg_family(const HypercomplexAlgebra& h, bool qbal_excluded_elsewhere = false) {
    FamilyCertificate f;
    int n = h.n();
    if (n < 2) {
        f.reason = "n = 1: every metric is quaternionic balanced";
        return f;
    }
    auto basis = monomial_basis(h, 2 * n - 2, 0);
    std::vector<Form> dv, dj;
    for (const Form& b : basis) {
        Form x = h.del(b);
        if (!x.is_zero()) dv.push_back(x);
        Form y = h.delJ(b);
        if (!y.is_zero()) dj.push_back(y);
    }
    f.span_dim = span_rank(dv);
    f.image_rank = span_rank(dj);
    std::vector<Form> all = dv;
    all.insert(all.end(), dj.begin(), dj.end());
    f.joint_rank = span_rank(all);
    if (f.joint_rank != f.span_dim + f.image_rank) {
        f.reason = "span of del meets im delJ";
        return f;
    }
    // Omega^{n-1}/(n-1)! = sum_{i<j} pf(A(i,j)) zeta^{complement of ij}; only quaternionic pairs may contribute.
    int N = h.N();
    Mask holo = h.holo_mask();
    std::optional<Form> common;
    bool ok = true;
    for (int i = 0; i < N && ok; ++i)
        for (int j = i + 1; j < N && ok; ++j) {
            Form b(h.real_dim());
            b.add_term(holo & ~((Mask(1) << i) | (Mask(1) << j)), Complex(1));
            Form x = h.del(b);
            bool pair = i % 2 == 0 && j == i + 1;
            if (x.is_zero()) continue;
            if (!pair) {
                ok = false;
                break;
            }
            if (!common)
                common = x;
            else if (*common != x)
                ok = false;
        }
    f.positive_combination = ok && common.has_value();
    if (!f.positive_combination && !qbal_excluded_elsewhere) {
        f.reason = "cannot exclude quaternionic balanced metrics";
        return f;
    }
    f.holds = true;
    f.reason = f.positive_combination ? "del Omega^{n-1} is a positive combination of a form outside im delJ"
                                      : "span of del meets im delJ trivially and q-balanced metrics are excluded";
    return f;
}

// ---------------------------------------------------------------- search

enum class Predicate {
    hyperkahler,
    hkt,
    strong_hkt,
    q_balanced,
    q_strongly_gauduchon,
    q_gauduchon,
    balanced,
    gauduchon
};

inline const std::vector<std::pair<std::string, Predicate>>& predicate_names() {
    static const std::vector<std::pair<std::string, Predicate>> names{
        {"hyperkahler", Predicate::hyperkahler},
        {"hkt", Predicate::hkt},
        {"strong_hkt", Predicate::strong_hkt},
        {"q_balanced", Predicate::q_balanced},
        {"q_strongly_gauduchon", Predicate::q_strongly_gauduchon},
        {"q_gauduchon", Predicate::q_gauduchon},
        {"balanced", Predicate::balanced},
        {"gauduchon", Predicate::gauduchon},
    };
    return names;
}

inline Predicate parse_predicate(const std::string& s) {
    for (auto& [name, p] : predicate_names())
        if (name == s) return p;
    throw InputError("unknown predicate '" + s + "'");
}

inline bool evaluate_predicate(const HyperhermitianMetric& m, Predicate p) {
    const auto& h = m.hc();
    int n = m.n();
    switch (p) {
        case Predicate::hyperkahler:
            return h.d(m.omega()).is_zero() && h.d(m.omega_I()).is_zero();
        case Predicate::hkt: return h.del(m.omega()).is_zero();
        case Predicate::strong_hkt:
            return h.del(m.omega()).is_zero() && h.del(h.delJ(m.omega_bar())).is_zero();
        case Predicate::q_balanced: return h.del(m.omega_power(n - 1)).is_zero();
        case Predicate::q_strongly_gauduchon: {
            Form t = h.del(m.omega_power(n - 1));
            return t.is_zero() || solve_exactness(h, ExactnessOperator::delJ, t, 2 * n - 2, 0).exact;
        }
        case Predicate::q_gauduchon: return h.del(h.delJ(m.omega_power(n - 1))).is_zero();
        case Predicate::balanced: return h.d(m.omega_I().power(2 * n - 1)).is_zero();
        case Predicate::gauduchon: {
            Form w = m.omega_I().power(2 * n - 1);
            return h.del(h.delbar(w)).is_zero();
        }
    }
    return false;
}

enum class SearchFamily { diagonal, full };

struct SearchResult {
    std::optional<HyperhermitianMetric> witness;
    std::size_t tried = 0;
    bool exhausted = false;  // the whole grid was examined
};

inline std::vector<Scalar> height_values(int height) {
    std::vector<Scalar> v;
    for (int p = 1; p <= height; ++p)
        for (int q = 1; q <= height; ++q) {
            Scalar s(p, q);
            if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
        }
    std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    return v;
}

inline SearchResult search_metrics(std::shared_ptr<const HypercomplexAlgebra> h, SearchFamily family, Predicate p,
                                   int height, std::size_t budget) {
    SearchResult r;
    auto values = height_values(height);
    int lines = h->n();
    if (family == SearchFamily::diagonal) {
        // first entry fixed to 1: every predicate is scale invariant. Grid order starts at 1.
        std::stable_partition(values.begin(), values.end(), [](const Scalar& v) { return v == Scalar(1); });
        std::vector<std::size_t> idx(lines, 0);
        while (r.tried < budget) {
            std::vector<Scalar> c;
            for (auto i : idx) c.push_back(values[i]);
            auto m = HyperhermitianMetric::diagonal(h, c);
            ++r.tried;
            if (evaluate_predicate(m, p)) {
                r.witness = m;
                return r;
            }
            int k = lines - 1;
            while (k >= 1 && idx[k] + 1 == values.size()) idx[k--] = 0;
            if (k < 1) {
                r.exhausted = true;
                return r;
            }
            ++idx[k];
        }
        return r;
    }
    std::mt19937 rng(12345);
    while (r.tried < budget) {
        auto m = HyperhermitianMetric::from_gram(h, random_invariant_gram(h->structure(), rng, height));
        ++r.tried;
        if (evaluate_predicate(m, p)) {
            r.witness = m;
            return r;
        }
    }
    return r;
}

}  // namespace hha
