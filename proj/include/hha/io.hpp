#pragma once

#include <openssl/evp.h>

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "json.hpp"

namespace hha {

inline constexpr const char* kLibraryVersion = "0.3.0";

using ojson = nlohmann::ordered_json;

// Scalar field descriptor: "Q", "Q(sqrt(D))" or "float".
struct FieldSpec {
    bool is_float = false;
    long radicand = 0;  // 0 for Q

    std::string str() const {
        if (is_float) return "float";
        return radicand ? "Q(sqrt(" + std::to_string(radicand) + "))" : "Q";
    }

    static FieldSpec parse(const std::string& s) {
        FieldSpec f;
        if (s == "Q") return f;
        if (s == "float") {
            f.is_float = true;
            return f;
        }
        const std::string pre = "Q(sqrt(", post = "))";
        if (s.rfind(pre, 0) == 0 && s.size() > pre.size() + post.size() && s.substr(s.size() - 2) == post) {
            std::string d = s.substr(pre.size(), s.size() - pre.size() - post.size());
            try {
                std::size_t used = 0;
                f.radicand = std::stol(d, &used);
                if (used == d.size()) {
                    Scalar::quadratic(0, 1, f.radicand);  // squarefree check
                    return f;
                }
            } catch (const std::logic_error&) {
            } catch (const MathError&) {
            }
        }
        throw InputError("unknown scalar field '" + s + "' (expected Q, Q(sqrt(D)) or float)");
    }

    // Widens to hold s; Q(sqrt(D)) values never fit Q.
    void require(const Scalar& s, const std::string& where) const {
        if (is_float || s.is_rational()) return;
        if (s.radicand() != radicand)
            throw InputError(where + ": coefficient " + s.str() + " is outside the field " + str());
    }
};

inline FieldSpec default_field() {
    const char* env = std::getenv("HHA_DEFAULT_FIELD");
    return env && *env ? FieldSpec::parse(env) : FieldSpec{};
}

struct InputDocument {
    std::string name;
    int dimension = 0;
    FieldSpec field;
    LieAlgebra algebra;
    std::optional<HypercomplexStructure> structure;  // standard when empty
    enum class MetricKind { diagonal_unitary, omega, gram } metric_kind = MetricKind::diagonal_unitary;
    std::vector<Scalar> diagonal;
    std::vector<std::tuple<int, int, Complex>> omega;  // 1-based holomorphic indices
    std::optional<RealMatrix> gram;
    std::map<std::string, bool> expect;  // optional verdict expectations
    std::string source;                  // raw text, hashed into provenance
};

inline std::string sha256_hex(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

namespace io_detail {

inline const ojson& member(const ojson& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

inline std::string as_string(const ojson& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InputError(where + ": expected a string or integer coefficient");
}

inline Scalar scalar_at(const ojson& j, const FieldSpec& f, const std::string& where) {
    Scalar s;
    try {
        s = parse_scalar(as_string(j, where));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    f.require(s, where);
    return s;
}

inline RealMatrix matrix_at(const ojson& j, int dim, const FieldSpec& f, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) throw InputError(where + ": expected " + std::to_string(dim) + " rows");
    RealMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim)
            throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            m(r, c) = scalar_at(j[r][c], f, where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline int index_at(const ojson& j, int lo, int hi, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer index");
    int v = j.get<int>();
    if (v < lo || v > hi) throw InputError(where + ": index " + std::to_string(v) + " out of range");
    return v;
}

}  // namespace io_detail

inline InputDocument parse_input(const std::string& text, std::optional<FieldSpec> field_override = std::nullopt) {
    using namespace io_detail;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("input must be a JSON object");
    InputDocument d;
    d.source = text;
    d.name = j.value("name", std::string("unnamed"));
    const ojson& dim = member(j, "dimension", "document");
    if (!dim.is_number_integer()) throw InputError("dimension: expected an integer");
    d.dimension = dim.get<int>();
    if (d.dimension <= 0 || d.dimension % 4 != 0) throw InputError("dimension must be a multiple of 4");
    if (d.dimension > 32) throw InputError("dimension above 32 is not supported");
    d.field = j.contains("field") ? FieldSpec::parse(as_string(j["field"], "field")) : default_field();
    if (field_override) d.field = *field_override;
    int n = d.dimension;

    bool se = j.contains("structure_equations"), br = j.contains("brackets");
    if (se == br) throw InputError("exactly one of \"structure_equations\" and \"brackets\" is required");
    if (se) {
        const ojson& eqs = j["structure_equations"];
        if (!eqs.is_object()) throw InputError("structure_equations: expected an object keyed by index");
        std::vector<Form> de(n, Form(n));
        for (auto it = eqs.begin(); it != eqs.end(); ++it) {
            std::string where = "structure_equations[\"" + it.key() + "\"]";
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(it.key(), &used);
                if (used != it.key().size()) k = 0;
            } catch (const std::logic_error&) {
            }
            if (k < 1 || k > n) throw InputError(where + ": key must be an index in 1.." + std::to_string(n));
            try {
                de[k - 1] = parse_form(as_string(it.value(), where), n, real_resolver(n));
            } catch (const InputError& e) {
                throw InputError(where + ": " + e.what());
            }
            for (auto& [m, c] : de[k - 1].terms()) {
                d.field.require(c.re(), where);
                d.field.require(c.im(), where);
            }
        }
        d.algebra = LieAlgebra::from_structure_equations(de, d.name);
    } else {
        const ojson& b = j["brackets"];
        if (!b.is_array()) throw InputError("brackets: expected a list of [i, j, k, coefficient]");
        std::vector<std::tuple<int, int, int, Scalar>> entries;
        for (std::size_t t = 0; t < b.size(); ++t) {
            std::string where = "brackets[" + std::to_string(t) + "]";
            if (!b[t].is_array() || b[t].size() != 4) throw InputError(where + ": expected [i, j, k, coefficient]");
            int i = index_at(b[t][0], 1, n, where), jj = index_at(b[t][1], 1, n, where),
                k = index_at(b[t][2], 1, n, where);
            entries.emplace_back(i - 1, jj - 1, k - 1, scalar_at(b[t][3], d.field, where));
        }
        d.algebra = LieAlgebra::from_brackets(n, entries, d.name);
    }

    if (j.contains("hypercomplex")) {
        const ojson& h = j["hypercomplex"];
        if (h.is_string()) {
            if (h.get<std::string>() != "standard") throw InputError("hypercomplex: expected \"standard\" or {I, J}");
        } else if (h.is_object()) {
            d.structure = HypercomplexStructure{matrix_at(member(h, "I", "hypercomplex"), n, d.field, "hypercomplex.I"),
                                                matrix_at(member(h, "J", "hypercomplex"), n, d.field, "hypercomplex.J")};
        } else {
            throw InputError("hypercomplex: expected \"standard\" or {I, J}");
        }
    }

    d.diagonal.assign(n / 4, Scalar(1));
    if (j.contains("metric")) {
        const ojson& m = j["metric"];
        if (!m.is_object() || m.size() != 1) throw InputError("metric: expected exactly one of diagonal_unitary, omega, gram");
        if (m.contains("diagonal_unitary")) {
            const ojson& v = m["diagonal_unitary"];
            if (!v.is_array() || static_cast<int>(v.size()) != n / 4)
                throw InputError("metric.diagonal_unitary: expected " + std::to_string(n / 4) + " entries");
            for (int i = 0; i < n / 4; ++i)
                d.diagonal[i] = scalar_at(v[i], d.field, "metric.diagonal_unitary[" + std::to_string(i) + "]");
        } else if (m.contains("omega")) {
            d.metric_kind = InputDocument::MetricKind::omega;
            const ojson& v = m["omega"];
            if (!v.is_array()) throw InputError("metric.omega: expected a list of [i, j, re, im]");
            for (std::size_t t = 0; t < v.size(); ++t) {
                std::string where = "metric.omega[" + std::to_string(t) + "]";
                if (!v[t].is_array() || v[t].size() != 4) throw InputError(where + ": expected [i, j, re, im]");
                int a = index_at(v[t][0], 1, n / 2, where), b = index_at(v[t][1], 1, n / 2, where);
                d.omega.emplace_back(a, b, Complex(scalar_at(v[t][2], d.field, where), scalar_at(v[t][3], d.field, where)));
            }
        } else if (m.contains("gram")) {
            d.metric_kind = InputDocument::MetricKind::gram;
            d.gram = matrix_at(m["gram"], n, d.field, "metric.gram");
        } else {
            throw InputError("metric: expected one of diagonal_unitary, omega, gram");
        }
    }
    if (j.contains("expect")) {
        const ojson& e = j["expect"];
        if (!e.is_object()) throw InputError("expect: expected an object of flag -> bool");
        for (auto it = e.begin(); it != e.end(); ++it) {
            if (!it.value().is_boolean()) throw InputError("expect." + it.key() + ": expected a boolean");
            d.expect[it.key()] = it.value().get<bool>();
        }
    }
    return d;
}

inline AlgebraPtr build_algebra(const InputDocument& d) {
    LieAlgebra g = d.field.is_float ? d.algebra.to_float() : d.algebra;
    HypercomplexStructure s = d.structure ? *d.structure : standard_structure(d.dimension);
    return std::make_shared<const HypercomplexAlgebra>(std::move(g), std::move(s));
}

inline HyperhermitianMetric build_metric(const InputDocument& d, AlgebraPtr h) {
    switch (d.metric_kind) {
        case InputDocument::MetricKind::diagonal_unitary: return HyperhermitianMetric::diagonal(h, d.diagonal);
        case InputDocument::MetricKind::omega: {
            Form om(h->real_dim());
            for (auto& [a, b, c] : d.omega) {
                if (a == b) throw InputError("metric.omega: diagonal entry (" + std::to_string(a) + ", " + std::to_string(b) + ")");
                int lo = std::min(a, b) - 1, hi = std::max(a, b) - 1;
                om.add_term((Mask(1) << lo) | (Mask(1) << hi), a < b ? c : -c);
            }
            return HyperhermitianMetric::from_omega(h, om);
        }
        case InputDocument::MetricKind::gram: return HyperhermitianMetric::from_gram(h, *d.gram);
    }
    throw InputError("unknown metric kind");
}

// ---------------------------------------------------------------- export

inline ojson matrix_json(const RealMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

inline FieldSpec field_of(const LieAlgebra& g, const RealMatrix* gram = nullptr) {
    FieldSpec f;
    auto take = [&](const Scalar& s) {
        if (s.is_float()) f.is_float = true;
        else if (!s.is_rational()) f.radicand = s.radicand();
    };
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            for (auto& s : g.bracket(i, j)) take(s);
    if (gram)
        for (std::size_t i = 0; i < gram->rows(); ++i)
            for (std::size_t j = 0; j < gram->cols(); ++j) take((*gram)(i, j));
    return f;
}

inline ojson brackets_json(const LieAlgebra& g) {
    ojson b = ojson::array();
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            for (int k = 0; k < g.dim(); ++k)
                if (!g.bracket(i, j)[k].is_zero()) b.push_back({i + 1, j + 1, k + 1, g.bracket(i, j)[k].str()});
    return b;
}

inline bool is_standard(const HypercomplexStructure& s) {
    HypercomplexStructure t = standard_structure(static_cast<int>(s.I.rows()));
    return s.I == t.I && s.J == t.J;
}

// Input document for an arbitrary metric: brackets, structure and Gram matrix.
inline ojson export_metric(const std::string& name, const HyperhermitianMetric& m) {
    const auto& h = m.hc();
    ojson j;
    j["name"] = name;
    j["dimension"] = h.real_dim();
    j["field"] = field_of(h.algebra(), &m.gram()).str();
    j["brackets"] = brackets_json(h.algebra());
    if (is_standard(h.structure()))
        j["hypercomplex"] = "standard";
    else
        j["hypercomplex"] = {{"I", matrix_json(h.structure().I)}, {"J", matrix_json(h.structure().J)}};
    j["metric"] = {{"gram", matrix_json(m.gram())}};
    return j;
}

inline ojson export_entry(const CatalogEntry& c) {
    if (c.joyce) return export_metric(c.name, entry_metric(c));
    ojson j;
    j["name"] = c.name;
    j["dimension"] = c.dim;
    j["field"] = "Q";
    ojson eqs = ojson::object();
    for (auto& [k, s] : c.structure_equations) eqs[std::to_string(k)] = s;
    j["structure_equations"] = eqs;
    j["hypercomplex"] = "standard";
    j["metric"] = {{"diagonal_unitary", ojson(std::vector<std::string>(c.dim / 4, "1"))}};
    return j;
}

// ---------------------------------------------------------------- reports

inline std::string form_str(const HypercomplexAlgebra& h, const Form& f) { return f.is_zero() ? "0" : h.str(f); }

inline const char* kSlCaveat =
    "invariant level: d-exact invariant (1,0)-forms vanish, so alpha_zero is the SL(n,H) test, d_eta_zero the "
    "restricted Obata holonomy test and delJ_alpha_zero the vanishing of the first quaternionic Bott-Chern class";

inline ojson flag_json(const Flag& f) { return {{"value", f.value}, {"residual", f.residual}}; }

inline ojson report_json(const HyperhermitianMetric& m, const ClassificationReport& r) {
    const auto& h = m.hc();
    ojson j;
    j["n"] = r.n;
    j["abelian_structure"] = r.abelian_structure;
    ojson flags;
    flags["hyperkahler"] = flag_json(r.hyperkahler);
    flags["hkt"] = flag_json(r.hkt);
    flags["strong_hkt"] = flag_json(r.strong_hkt);
    flags["q_balanced"] = flag_json(r.q_balanced);
    flags["q_strongly_gauduchon"] = flag_json(r.q_strongly_gauduchon);
    flags["q_gauduchon"] = flag_json(r.q_gauduchon);
    flags["balanced"] = flag_json(r.balanced);
    flags["gauduchon"] = flag_json(r.gauduchon);
    flags["skt"] = {{"I", flag_json(r.skt[0])}, {"J", flag_json(r.skt[1])}, {"K", flag_json(r.skt[2])}};
    j["flags"] = flags;
    j["qsg_witness"] = r.qsg_witness ? ojson(form_str(h, *r.qsg_witness)) : ojson(nullptr);
    j["s_chern"] = r.s_chern.str();
    j["s_bismut"] = r.s_bismut.str();
    j["einstein"] = {{"lambda", r.einstein.lambda ? ojson(r.einstein.lambda->str()) : ojson(nullptr)},
                     {"residual", r.einstein.residual}};
    j["sl"] = {{"alpha_zero", r.sl.alpha_zero},
               {"d_eta_zero", r.sl.d_eta_zero},
               {"delJ_alpha_zero", r.sl.delJ_alpha_zero},
               {"caveat", kSlCaveat}};
    j["alpha"] = form_str(h, r.alpha);
    j["beta"] = form_str(h, r.beta);
    j["delJ_alpha"] = form_str(h, r.delJ_alpha);
    ojson ob;
    try {
        auto o = conformal_class_obstruction(m);
        ob = {{"c1", o.c1.str()},
              {"gamma_bismut_unit_volume", o.gamma_unit.str()},
              {"gamma_bismut_metric_volume", o.gamma_metric.str()},
              {"q_gauduchon_in_class", o.q_gauduchon_in_class},
              {"q_balanced_in_class", o.q_balanced_in_class}};
    } catch (const InputError& e) {
        ob = {{"error", e.what()}};
    }
    j["obstruction"] = ob;
    j["scope"] = r.scope;
    return j;
}

inline bool flag_value(const ClassificationReport& r, const std::string& name, bool& known) {
    known = true;
    if (name == "hyperkahler") return r.hyperkahler.value;
    if (name == "hkt") return r.hkt.value;
    if (name == "strong_hkt") return r.strong_hkt.value;
    if (name == "q_balanced") return r.q_balanced.value;
    if (name == "q_strongly_gauduchon") return r.q_strongly_gauduchon.value;
    if (name == "q_gauduchon") return r.q_gauduchon.value;
    if (name == "balanced") return r.balanced.value;
    if (name == "gauduchon") return r.gauduchon.value;
    if (name == "abelian_structure") return r.abelian_structure;
    if (name == "alpha_zero") return r.sl.alpha_zero;
    if (name == "einstein") return r.einstein.lambda.has_value();
    known = false;
    return false;
}

inline std::string report_text(const ojson& doc) {
    std::ostringstream os;
    const ojson& r = doc["report"];
    os << "name: " << doc["name"].get<std::string>() << "\n";
    os << "scope: " << r["scope"].get<std::string>() << "\n";
    for (auto it = r["flags"].begin(); it != r["flags"].end(); ++it) {
        if (it.key() == "skt") {
            for (auto s = it.value().begin(); s != it.value().end(); ++s)
                os << "skt_" << s.key() << ": " << (s.value()["value"].get<bool>() ? "true" : "false") << "\n";
            continue;
        }
        os << it.key() << ": " << (it.value()["value"].get<bool>() ? "true" : "false");
        std::string res = it.value()["residual"].get<std::string>();
        if (!res.empty()) os << "  [" << res << "]";
        os << "\n";
    }
    os << "abelian_structure: " << (r["abelian_structure"].get<bool>() ? "true" : "false") << "\n";
    if (!r["qsg_witness"].is_null()) os << "qsg_witness: " << r["qsg_witness"].get<std::string>() << "\n";
    os << "s_chern: " << r["s_chern"].get<std::string>() << "\n";
    os << "s_bismut: " << r["s_bismut"].get<std::string>() << "\n";
    os << "lambda: " << (r["einstein"]["lambda"].is_null() ? "none" : r["einstein"]["lambda"].get<std::string>()) << "\n";
    for (auto k : {"alpha_zero", "d_eta_zero", "delJ_alpha_zero"})
        os << "sl." << k << ": " << (r["sl"][k].get<bool>() ? "true" : "false") << "\n";
    os << "alpha: " << r["alpha"].get<std::string>() << "\n";
    os << "beta: " << r["beta"].get<std::string>() << "\n";
    const ojson& ob = r["obstruction"];
    if (ob.contains("error"))
        os << "obstruction: " << ob["error"].get<std::string>() << "\n";
    else
        os << "obstruction: c1 = " << ob["c1"].get<std::string>() << ", gamma = " << ob["gamma_bismut_unit_volume"].get<std::string>()
           << ", q_gauduchon_in_class = " << (ob["q_gauduchon_in_class"].get<bool>() ? "true" : "false")
           << ", q_balanced_in_class = " << (ob["q_balanced_in_class"].get<bool>() ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace hha
