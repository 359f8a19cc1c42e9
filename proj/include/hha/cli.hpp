#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "io.hpp"

namespace hha {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Loaded {
    InputDocument doc;
    AlgebraPtr h;
    HyperhermitianMetric metric;
};

inline Loaded load(const std::string& path, std::optional<FieldSpec> field) {
    Loaded l{parse_input(read_file(path), field), nullptr, {}};
    l.h = build_algebra(l.doc);
    l.metric = build_metric(l.doc, l.h);
    return l;
}

// Catalog name or input file.
inline std::pair<std::string, HyperhermitianMetric> metric_source(const std::string& s, std::optional<FieldSpec> field) {
    if (std::filesystem::exists(s)) {
        auto l = load(s, field);
        return {l.doc.name, l.metric};
    }
    const auto& c = get_example(s);
    return {c.name, entry_metric(c)};
}

inline std::array<Scalar, 3> parse_triple(const std::string& s) {
    std::array<Scalar, 3> v;
    std::stringstream ss(s);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i == 3) throw InputError("--pair: expected three coordinates per vector");
        v[i++] = parse_scalar(part);
    }
    if (i != 3) throw InputError("--pair: expected three coordinates per vector");
    return v;
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline Vec unit(int dim, int k) {
    Vec v(dim);
    v[k] = Scalar(1);
    return v;
}

// 1-based index; 0 picks the first basis vector that is central and outside the derived algebra.
inline Vec central_vector(const HyperhermitianMetric& m, int index, const std::string& which) {
    const LieAlgebra& g = m.hc().algebra();
    if (index != 0) {
        if (index < 1 || index > g.dim()) throw InputError(which + ": index out of range");
        Vec v = unit(g.dim(), index - 1);
        require_central_not_derived(g, v, which);
        return v;
    }
    for (int k = 0; k < g.dim(); ++k) {
        Vec v = unit(g.dim(), k);
        try {
            require_central_not_derived(g, v, which);
            return v;
        } catch (const InputError&) {
        }
    }
    throw InputError(which + ": no basis vector is central and outside the derived algebra");
}

}  // namespace cli_detail

// Exit codes: 0 success, 1 verdict mismatch or negative answer, 2 input error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Invariant hyperhermitian geometry on hypercomplex Lie algebras", "hha"};
    app.require_subcommand(1);
    bool use_float = false;
    app.add_flag("--float", use_float, "compute in float64 instead of exact arithmetic");

    std::string file, format = "json", pair, witness, predicate, family = "diagonal", rep = "zero";
    int height = 2, k = 1, e1 = 0, e2 = 0;
    std::size_t budget = 10000;
    std::vector<std::string> names;

    auto* check = app.add_subcommand("check", "validate an input document");
    check->add_option("FILE", file)->required();

    auto* classify = app.add_subcommand("classify", "classify the metric of an input document");
    classify->add_option("FILE", file)->required();
    classify->add_option("--pair", pair, "rotated pair as a,b,c;a',b',c'");
    classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* cat = app.add_subcommand("catalog", "list, run or export the example catalog");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list");
    auto* cat_run = cat->add_subcommand("run");
    cat_run->add_option("NAME", names, "entry names or 'all'")->required();
    auto* cat_all = cat->add_subcommand("all", "same as 'run all'");
    auto* cat_export = cat->add_subcommand("export");
    cat_export->add_option("NAME", file)->required();

    auto* construct = app.add_subcommand("construct", "build a new input document");
    construct->require_subcommand(1);
    std::string a_src, b_src;
    auto* an = construct->add_subcommand("an", "central gluing of two algebras with H");
    an->add_option("A", a_src)->required();
    an->add_option("B", b_src)->required();
    an->add_option("--e1", e1, "1-based central index in A (default: first admissible)");
    an->add_option("--e2", e2, "1-based central index in B (default: first admissible)");
    auto* bf = construct->add_subcommand("bf", "extension by a quaternionic representation");
    bf->add_option("BASE", a_src)->required();
    bf->add_option("--rep", rep)->check(CLI::IsMember({"zero", "spin-half"}));
    bf->add_option("--k", k)->check(CLI::Range(1, 4));
    auto* joyce = construct->add_subcommand("joyce", "Einstein strong HKT metric on a compact group");
    joyce->add_option("GROUP", a_src)->required()->check(CLI::IsMember({"su2", "su2xsu2", "su3"}));

    auto* cert = app.add_subcommand("certify-qbal", "certify that no invariant q-balanced metric exists");
    cert->add_option("FILE", file)->required();
    cert->add_option("--witness", witness, "(1,0)-form psi in the frame z1.., zb1..")->required();

    auto* search = app.add_subcommand("search", "search a metric family for a predicate");
    search->add_option("FILE", file)->required();
    std::vector<std::string> pnames;
    for (auto& [n, p] : predicate_names()) pnames.push_back(n);
    search->add_option("--predicate", predicate)->required()->check(CLI::IsMember(pnames));
    search->add_option("--height", height)->required()->check(CLI::Range(1, 6));
    search->add_option("--family", family)->check(CLI::IsMember({"diagonal", "full"}));
    search->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::optional<FieldSpec> field;
        if (use_float) field = FieldSpec{true, 0};

        if (*check) {
            auto l = load(file, field);
            const auto& g = l.h->algebra();
            auto p = algebra_profile(g);
            out << "ok: " << l.doc.name << ", dimension " << l.doc.dimension << ", field " << l.doc.field.str() << "\n";
            out << "nilpotent: " << (p.nilpotent_step ? "step " + std::to_string(*p.nilpotent_step) : std::string("no"))
                << ", solvable: " << (p.solvable ? "yes" : "no") << ", unimodular: " << (p.unimodular ? "yes" : "no")
                << ", center " << p.center_dim << ", derived " << p.derived_dim << "\n";
            out << "abelian structure: " << (is_abelian_structure(g, l.h->structure()) ? "true" : "false") << "\n";
            return 0;
        }

        if (*classify) {
            auto l = load(file, field);
            HyperhermitianMetric m = l.metric;
            ojson pair_json = nullptr;
            if (!pair.empty()) {
                auto semi = pair.find(';');
                if (semi == std::string::npos) throw InputError("--pair: expected a,b,c;a',b',c'");
                auto p = parse_triple(pair.substr(0, semi)), q = parse_triple(pair.substr(semi + 1));
                m = m.transport(std::make_shared<const HypercomplexAlgebra>(l.h->rotate_pair(p, q)));
                pair_json = {ojson::array({p[0].str(), p[1].str(), p[2].str()}),
                             ojson::array({q[0].str(), q[1].str(), q[2].str()})};
            }
            auto r = classify_metric(m);
            ojson doc;
            doc["provenance"] = {{"input_sha256", sha256_hex(l.doc.source)},
                                 {"library_version", kLibraryVersion},
                                 {"scalar_field", l.doc.field.str()}};
            doc["name"] = l.doc.name;
            doc["dimension"] = l.doc.dimension;
            doc["pair"] = pair_json;
            doc["report"] = report_json(m, r);
            if (format == "json")
                out << dump(doc);
            else
                out << report_text(doc);
            int status = 0;
            for (auto& [flag, want] : l.doc.expect) {
                bool known = false;
                bool got = flag_value(r, flag, known);
                if (!known) throw InputError("expect: unknown flag '" + flag + "'");
                if (got != want) {
                    err << "expectation failed: " << flag << " is " << (got ? "true" : "false") << "\n";
                    status = 1;
                }
            }
            return status;
        }

        if (*cat) {
            if (*cat_list) {
                for (auto& c : catalog()) out << c.name << "  " << c.dim << "  " << c.description << "\n";
                return 0;
            }
            if (*cat_export) {
                out << dump(export_entry(get_example(file)));
                return 0;
            }
            if (*cat_all || (names.size() == 1 && names[0] == "all")) names = catalog_names();
            for (auto& n : names) get_example(n);
            int failures = 0;
            for (auto& rep_ : run_report(names)) {
                out << (rep_.passed() ? "PASS " : "FAIL ") << rep_.name << "\n";
                for (auto& c : rep_.checks) {
                    out << "  " << (c.pass ? "ok   " : "FAIL ") << c.what;
                    if (!c.detail.empty()) out << ": " << c.detail;
                    out << "\n";
                }
                if (!rep_.passed()) ++failures;
            }
            out << names.size() - failures << "/" << names.size() << " entries passed\n";
            return failures ? 1 : 0;
        }

        if (*construct) {
            if (*an) {
                auto [na, ma] = metric_source(a_src, field);
                auto [nb, mb] = metric_source(b_src, field);
                auto m = arroyo_nicolini(ma, central_vector(ma, e1, "--e1"), mb, central_vector(mb, e2, "--e2"));
                out << dump(export_metric("an(" + na + "," + nb + ")", m));
                return 0;
            }
            if (*bf) {
                auto [nb, mb] = metric_source(a_src, field);
                QuaternionicRep r = rep == "zero" ? zero_rep(mb.hc().real_dim(), k) : spin_half_rep(mb.hc().algebra(), k);
                auto res = barberis_fino(mb, r);
                out << dump(export_metric("bf(" + nb + "," + rep + ")", res.metric));
                return 0;
            }
            JoyceData d = a_src == "su2" ? joyce_su2() : a_src == "su2xsu2" ? joyce_su2xsu2() : joyce_su3();
            out << dump(export_metric("joyce_" + a_src, joyce_build(d).metric));
            return 0;
        }

        if (*cert) {
            auto l = load(file, field);
            Form psi = parse_form(witness, l.h->real_dim(), frame_resolver(l.h->N()));
            auto c = certify_qbal_nonexistence(*l.h, psi);
            out << (c.accepted ? "accepted" : "rejected") << ": " << c.reason << "\n";
            out << "sigma = " << form_str(*l.h, c.sigma) << "\n";
            for (auto& t : c.transcript) out << "  " << t << "\n";
            return c.accepted ? 0 : 1;
        }

        if (*search) {
            auto l = load(file, field);
            auto r = search_metrics(l.h, family == "full" ? SearchFamily::full : SearchFamily::diagonal,
                                    parse_predicate(predicate), height, budget);
            err << "tried " << r.tried << " metrics"
                << (r.witness ? "" : r.exhausted ? ", grid exhausted" : ", budget reached") << "\n";
            if (!r.witness) {
                out << "no metric in the family satisfies " << predicate << "\n";
                return 1;
            }
            out << dump(export_metric(l.doc.name, *r.witness));
            return 0;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const MathError& e) {
        err << "invalid structure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace hha
