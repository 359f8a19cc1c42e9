#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"

namespace hha {

struct NotHomomorphism : InputError {
    NotHomomorphism(int i, int j)
        : InputError("rho is not a homomorphism on (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ")"),
          pair{i, j} {}
    std::array<int, 2> pair;
};

struct JoyceViolation : InputError {
    JoyceViolation(const std::string& prop, const std::string& detail)
        : InputError("Joyce decomposition violates " + prop + ": " + detail), property(prop) {}
    std::string property;
};

using AlgebraPtr = std::shared_ptr<const HypercomplexAlgebra>;

inline RealMatrix block_diagonal(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    std::vector<std::tuple<int, int, int, Scalar>> e;
    int p = a.dim();
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k)
                if (!a.bracket(i, j)[k].is_zero()) e.emplace_back(i, j, k, a.bracket(i, j)[k]);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = i + 1; j < b.dim(); ++j)
            for (int k = 0; k < b.dim(); ++k)
                if (!b.bracket(i, j)[k].is_zero()) e.emplace_back(p + i, p + j, p + k, b.bracket(i, j)[k]);
    return LieAlgebra::from_brackets(a.dim() + b.dim(), e);
}

inline HypercomplexStructure direct_sum(const HypercomplexStructure& a, const HypercomplexStructure& b) {
    return {block_diagonal(a.I, b.I), block_diagonal(a.J, b.J)};
}

inline HyperhermitianMetric direct_sum(const HyperhermitianMetric& a, const HyperhermitianMetric& b) {
    auto h = std::make_shared<const HypercomplexAlgebra>(direct_sum(a.hc().algebra(), b.hc().algebra()),
                                                         direct_sum(a.hc().structure(), b.hc().structure()));
    return HyperhermitianMetric::from_gram(h, block_diagonal(a.gram(), b.gram()));
}

// Real form on the first coordinates of a larger coframe, read in its frame.
inline Form pull_back(const HypercomplexAlgebra& base, const HypercomplexAlgebra& total, const Form& f) {
    std::vector<Form> images;
    for (int a = 0; a < base.real_dim(); ++a) images.push_back(Form::generator(total.real_dim(), a));
    return total.to_frame(base.to_real(f).substitute(images));
}

// ---------------------------------------------------------------- Arroyo-Nicolini

inline bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
    RealMatrix m(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = basis[j][i];
    return solve(m, v).has_value();
}

inline void require_central_not_derived(const LieAlgebra& g, const Vec& e, const std::string& which) {
    if (static_cast<int>(e.size()) != g.dim()) throw InputError(which + ": vector has the wrong length");
    for (int i = 0; i < g.dim(); ++i) {
        Vec b = g.bracket(e, g.basis_vector(i));
        for (auto& s : b)
            if (!s.is_zero()) throw InputError(which + " is not central");
    }
    if (in_span(g.derived_algebra(), e)) throw InputError(which + " lies in the derived algebra");
}

// g1 + g2 + <X,Y,Z,W> with [X,Y] = -[Z,W] = e1 + e2 and the standard structure on the new block.
inline HyperhermitianMetric arroyo_nicolini(const HyperhermitianMetric& m1, const Vec& e1, const HyperhermitianMetric& m2,
                                            const Vec& e2) {
    const LieAlgebra& g1 = m1.hc().algebra();
    const LieAlgebra& g2 = m2.hc().algebra();
    require_central_not_derived(g1, e1, "e1");
    require_central_not_derived(g2, e2, "e2");
    LieAlgebra s = direct_sum(g1, g2);
    int p = s.dim(), dim = p + 4;
    std::vector<std::tuple<int, int, int, Scalar>> entries;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            for (int k = 0; k < p; ++k)
                if (!s.bracket(i, j)[k].is_zero()) entries.emplace_back(i, j, k, s.bracket(i, j)[k]);
    for (int k = 0; k < g1.dim(); ++k)
        if (!e1[k].is_zero()) {
            entries.emplace_back(p, p + 1, k, e1[k]);
            entries.emplace_back(p + 2, p + 3, k, -e1[k]);
        }
    for (int k = 0; k < g2.dim(); ++k)
        if (!e2[k].is_zero()) {
            entries.emplace_back(p, p + 1, g1.dim() + k, e2[k]);
            entries.emplace_back(p + 2, p + 3, g1.dim() + k, -e2[k]);
        }
    LieAlgebra g = LieAlgebra::from_brackets(dim, entries);
    HypercomplexStructure st = direct_sum(direct_sum(m1.hc().structure(), m2.hc().structure()), standard_structure(4));
    auto h = std::make_shared<const HypercomplexAlgebra>(std::move(g), std::move(st));
    // zeta^1 ^ zeta^2 on the new block has Gram 2 Id
    RealMatrix gram = block_diagonal(block_diagonal(m1.gram(), m2.gram()), Scalar(2) * RealMatrix::identity(4));
    return HyperhermitianMetric::from_gram(h, gram);
}

// ---------------------------------------------------------------- Barberis-Fino

// rho(e_i) acting on H^k = R^{4k}; H^k carries the standard structure.
struct QuaternionicRep {
    int k = 0;
    std::vector<RealMatrix> rho;

    bool symplectic() const {
        for (auto& r : rho)
            if (!(r + r.transpose()).is_zero()) return false;
        return true;
    }
};

inline QuaternionicRep zero_rep(int base_dim, int k) {
    return {k, std::vector<RealMatrix>(base_dim, RealMatrix(4 * k, 4 * k))};
}

// Right multiplication by i, j, k on H = span(1, i, j, k); it commutes with the standard structure.
inline RealMatrix right_multiplication(int unit) {
    static const int table[3][4][2] = {
        {{1, 1}, {0, -1}, {3, -1}, {2, 1}},   // 1i = i, ii = -1, ji = -k, ki = j
        {{2, 1}, {3, 1}, {0, -1}, {1, -1}},   // 1j = j, ij = k, jj = -1, kj = -i
        {{3, 1}, {2, -1}, {1, 1}, {0, -1}},   // 1k = k, ik = -j, jk = i, kk = -1
    };
    RealMatrix m(4, 4);
    for (int c = 0; c < 4; ++c) m(table[unit][c][0], c) = table[unit][c][1];
    return m;
}

inline void check_rep(const LieAlgebra& g, const QuaternionicRep& r) {
    if (static_cast<int>(r.rho.size()) != g.dim()) throw InputError("rho needs one matrix per basis vector");
    HypercomplexStructure fiber = standard_structure(4 * r.k);
    for (auto& m : r.rho) {
        if (m.rows() != static_cast<std::size_t>(4 * r.k) || m.cols() != m.rows())
            throw InputError("rho matrices must be 4k x 4k");
        if (!(m * fiber.I == fiber.I * m) || !(m * fiber.J == fiber.J * m))
            throw InputError("rho does not commute with the quaternionic structure of H^k");
    }
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            RealMatrix lhs = r.rho[i] * r.rho[j] - r.rho[j] * r.rho[i];
            RealMatrix rhs(4 * r.k, 4 * r.k);
            const Vec& b = g.bracket(i, j);
            for (int c = 0; c < g.dim(); ++c)
                if (!b[c].is_zero()) rhs = rhs + b[c] * r.rho[c];
            if (!(lhs == rhs)) throw NotHomomorphism(i, j);
        }
}

// rho(e1) = 0, rho(e_{a+1}) = t R_a on each of k copies of H, with t fixed by [e2, e3] = c e4.
inline QuaternionicRep spin_half_rep(const LieAlgebra& g, int k = 1) {
    if (g.dim() != 4) throw InputError("spin-half needs a 4-dimensional base");
    Scalar t = -g.bracket(1, 2)[3] / Scalar(2);
    QuaternionicRep r = zero_rep(4, k);
    for (int a = 0; a < 3; ++a) {
        RealMatrix block = t * right_multiplication(a);
        for (int c = 0; c < k; ++c)
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) r.rho[a + 1](4 * c + x, 4 * c + y) = block(x, y);
    }
    return r;
}

struct PullbackCheck {
    bool alpha = false, beta = false, ric_chern = false, ric_bismut = false;
    bool flags = false;
    bool all() const { return alpha && beta && ric_chern && ric_bismut && flags; }
};

struct BarberisFinoResult {
    HyperhermitianMetric metric;
    bool symplectic = false;
    std::optional<PullbackCheck> pullback;  // computed when rho is sp(k)-valued
};

inline PullbackCheck check_pullbacks(const HyperhermitianMetric& base, const HyperhermitianMetric& total) {
    const auto& b = base.hc();
    const auto& t = total.hc();
    CanonicalForms cb = canonical_forms(base), ct = canonical_forms(total);
    Curvature kb = curvature(base, cb), kt = curvature(total, ct);
    PullbackCheck p;
    p.alpha = ct.alpha == pull_back(b, t, cb.alpha);
    p.beta = ct.beta == pull_back(b, t, cb.beta);
    p.ric_chern = kt.ric_chern == pull_back(b, t, kb.ric_chern);
    p.ric_bismut = kt.ric_bismut == pull_back(b, t, kb.ric_bismut);
    auto rb = classify_metric(base), rt = classify_metric(total);
    p.flags = rb.strong_hkt.value == rt.strong_hkt.value && rb.hkt.value == rt.hkt.value &&
              rb.hyperkahler.value == rt.hyperkahler.value && rb.balanced.value == rt.balanced.value &&
              rb.q_balanced.value == rt.q_balanced.value && rb.q_gauduchon.value == rt.q_gauduchon.value;
    return p;
}

// g + H^k with [X, V] = rho_X V, [U, V] = 0 and the standard metric on the fiber.
inline BarberisFinoResult barberis_fino(const HyperhermitianMetric& m, const QuaternionicRep& r) {
    const LieAlgebra& g = m.hc().algebra();
    check_rep(g, r);
    int p = g.dim(), dim = p + 4 * r.k;
    std::vector<std::tuple<int, int, int, Scalar>> entries;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            for (int k = 0; k < p; ++k)
                if (!g.bracket(i, j)[k].is_zero()) entries.emplace_back(i, j, k, g.bracket(i, j)[k]);
    for (int i = 0; i < p; ++i)
        for (int v = 0; v < 4 * r.k; ++v)
            for (int w = 0; w < 4 * r.k; ++w)
                if (!r.rho[i](w, v).is_zero()) entries.emplace_back(i, p + v, p + w, r.rho[i](w, v));
    auto h = std::make_shared<const HypercomplexAlgebra>(
        LieAlgebra::from_brackets(dim, entries), direct_sum(m.hc().structure(), standard_structure(4 * r.k)));
    BarberisFinoResult out{HyperhermitianMetric::from_gram(h, block_diagonal(m.gram(), RealMatrix::identity(4 * r.k))),
                           r.symplectic(), std::nullopt};
    if (out.symplectic) {
        out.pullback = check_pullbacks(m, out.metric);
        if (!out.pullback->all()) throw ConsistencyError("Barberis-Fino pullback identities fail for an sp(k) rho");
    }
    return out;
}

// ---------------------------------------------------------------- Joyce

struct JoyceBlock {
    Vec e2, e3, e4;      // [e2,e3] = 2 e4 and cyclic
    std::vector<Vec> f;  // one generator per quaternionic dimension of f_j
};

struct JoyceData {
    std::string name;
    LieAlgebra g;
    std::vector<Vec> b;  // abelian part, dim = rank - m
    std::vector<JoyceBlock> blocks;
    std::optional<std::vector<Scalar>> mu;  // defaults to 1/sqrt(2(1+d_j))
};

struct JoyceResult {
    HyperhermitianMetric metric;
    std::vector<Scalar> mu;
    int torus_dim = 0;
    std::optional<Scalar> lambda;
};

namespace detail {

inline Vec scaled(const Scalar& s, Vec v) {
    for (auto& x : v) x = s * x;
    return v;
}

inline bool vec_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline bool vec_equal(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline Scalar bilinear(const RealMatrix& q, const Vec& a, const Vec& b) {
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) s += a[i] * q(i, j) * b[j];
    return s;
}

inline std::string vec_label(const std::string& kind, std::size_t j) { return kind + std::to_string(j + 1); }

}  // namespace detail

// Quaternionic quadruple f, [e2,f], [e3,f], [e4,f] for each generator.
inline std::vector<Vec> joyce_module(const LieAlgebra& g, const JoyceBlock& b) {
    std::vector<Vec> out;
    for (auto& f : b.f) {
        out.push_back(f);
        out.push_back(g.bracket(b.e2, f));
        out.push_back(g.bracket(b.e3, f));
        out.push_back(g.bracket(b.e4, f));
    }
    return out;
}

inline void validate_joyce(const JoyceData& d) {
    const LieAlgebra& g = d.g;
    int m = static_cast<int>(d.blocks.size());
    if (m == 0) throw JoyceViolation("J4", "no su(2) blocks");
    if (static_cast<int>(d.b.size()) > m) throw JoyceViolation("J1", "abelian part larger than the number of blocks");
    auto bracket_zero = [&](const Vec& x, const Vec& y) { return detail::vec_zero(g.bracket(x, y)); };
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
        const auto& bl = d.blocks[j];
        if (!detail::vec_equal(g.bracket(bl.e2, bl.e3), detail::scaled(Scalar(2), bl.e4)) ||
            !detail::vec_equal(g.bracket(bl.e4, bl.e2), detail::scaled(Scalar(2), bl.e3)) ||
            !detail::vec_equal(g.bracket(bl.e3, bl.e4), detail::scaled(Scalar(2), bl.e2)))
            throw JoyceViolation("su(2)", detail::vec_label("block ", j) + " lacks the relations [e2,e3] = 2 e4");
        for (auto& x : d.b)
            for (const Vec* y : {&bl.e2, &bl.e3, &bl.e4})
                if (!bracket_zero(x, *y)) throw JoyceViolation("J1", detail::vec_label("[d_", j) + ", b] != 0");
        for (std::size_t i = 0; i < d.blocks.size(); ++i) {
            const auto& bi = d.blocks[i];
            for (const Vec* x : {&bl.e2, &bl.e3, &bl.e4}) {
                if (i != j)
                    for (const Vec* y : {&bi.e2, &bi.e3, &bi.e4})
                        if (!bracket_zero(*x, *y))
                            throw JoyceViolation("J2", "[d_" + std::to_string(j + 1) + ", d_" + std::to_string(i + 1) +
                                                           "] != 0");
                if (j < i)
                    for (auto& f : bi.f)
                        if (!bracket_zero(*x, f))
                            throw JoyceViolation("J3", "[d_" + std::to_string(j + 1) + ", f_" + std::to_string(i + 1) +
                                                           "] != 0");
            }
        }
        // J4: ad e2, ad e3 act on f_j as left multiplication by i, j
        auto mod = joyce_module(g, bl);
        for (std::size_t q = 0; q < bl.f.size(); ++q) {
            const Vec& f = bl.f[q];
            Vec If = mod[4 * q + 1], Jf = mod[4 * q + 2], Kf = mod[4 * q + 3];
            auto neg = [](const Vec& v) { return detail::scaled(Scalar(-1), v); };
            if (!detail::vec_equal(g.bracket(bl.e2, If), neg(f)) || !detail::vec_equal(g.bracket(bl.e3, Jf), neg(f)) ||
                !detail::vec_equal(g.bracket(bl.e2, Jf), Kf) || !detail::vec_equal(g.bracket(bl.e3, If), neg(Kf)))
                throw JoyceViolation("J4", detail::vec_label("generator ", q) + " of " +
                                               detail::vec_label("f_", j) + " does not span a copy of C^2");
        }
    }
    std::vector<Vec> all = d.b;
    for (auto& bl : d.blocks) {
        all.push_back(bl.e2);
        all.push_back(bl.e3);
        all.push_back(bl.e4);
        auto mod = joyce_module(g, bl);
        all.insert(all.end(), mod.begin(), mod.end());
    }
    RealMatrix basis(g.dim(), all.size());
    for (std::size_t c = 0; c < all.size(); ++c)
        for (int r = 0; r < g.dim(); ++r) basis(r, c) = all[c][r];
    if (static_cast<int>(all.size()) != g.dim() || static_cast<int>(rank(basis)) != g.dim())
        throw JoyceViolation("J4", "b + d_j + f_j is not a basis of g (J4 invariance of f_j fails)");
    // [d_j, f_j] must stay inside f_j
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
        auto mod = joyce_module(g, d.blocks[j]);
        for (const Vec* x : {&d.blocks[j].e2, &d.blocks[j].e3, &d.blocks[j].e4})
            for (auto& f : mod)
                if (!in_span(mod, g.bracket(*x, f))) throw JoyceViolation("J4", detail::vec_label("[d_", j) + ", f] not in f");
    }
}

// Orthonormal frame: mu_j e_a on d_j, and b, f rescaled to the same -B length as mu_j e_2.
inline JoyceResult joyce_build(const JoyceData& d) {
    validate_joyce(d);
    const LieAlgebra& g = d.g;
    int m = static_cast<int>(d.blocks.size());
    int torus = m - static_cast<int>(d.b.size());
    int gd = g.dim(), R = torus + gd;
    std::vector<Scalar> mu;
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
        if (d.mu) {
            if (d.mu->size() != d.blocks.size()) throw InputError("need one mu per block");
            mu.push_back((*d.mu)[j]);
        } else {
            mu.push_back(Scalar::sqrt(Scalar(1, 2 * (1 + static_cast<long>(d.blocks[j].f.size())))));
        }
    }
    RealMatrix q = g.killing_form();
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = -q(i, j);
    auto lift = [&](const Vec& v) {
        Vec out(R);
        for (int i = 0; i < gd; ++i) out[torus + i] = v[i];
        return out;
    };
    std::vector<Vec> frame;  // in torus + g coordinates
    std::size_t next_b = 0, next_t = 0;
    for (int j = 0; j < m; ++j) {
        const auto& bl = d.blocks[j];
        Scalar ref = detail::bilinear(q, bl.e2, bl.e2);
        auto unit = [&](const Vec& v) {
            Scalar n = detail::bilinear(q, v, v);
            return detail::scaled(mu[j] * Scalar::sqrt(ref / n), v);
        };
        if (next_b < d.b.size()) {
            frame.push_back(lift(unit(d.b[next_b++])));
        } else {
            Vec t(R);
            t[next_t++] = Scalar(1);
            frame.push_back(t);
        }
        frame.push_back(lift(detail::scaled(mu[j], bl.e2)));
        frame.push_back(lift(detail::scaled(mu[j], bl.e3)));
        frame.push_back(lift(detail::scaled(mu[j], bl.e4)));
        for (auto& f : bl.f) {
            Vec u = unit(f);
            frame.push_back(lift(u));
            frame.push_back(lift(g.bracket(bl.e2, u)));
            frame.push_back(lift(g.bracket(bl.e3, u)));
            frame.push_back(lift(g.bracket(bl.e4, u)));
        }
    }
    // the frame must be -B orthogonal with equal lengths inside each block
    for (int a = 0; a < R; ++a)
        for (int c = a + 1; c < R; ++c) {
            Vec x(frame[a].begin() + torus, frame[a].end()), y(frame[c].begin() + torus, frame[c].end());
            if (!detail::bilinear(q, x, y).is_zero())
                throw JoyceViolation("orthogonality", "frame vectors " + std::to_string(a + 1) + " and " +
                                                          std::to_string(c + 1) + " are not -B orthogonal");
        }
    RealMatrix v(R, R);
    for (int c = 0; c < R; ++c)
        for (int r = 0; r < R; ++r) v(r, c) = frame[c][r];
    RealMatrix vinv = inverse(v);
    std::vector<std::tuple<int, int, int, Scalar>> entries;
    for (int a = 0; a < R; ++a)
        for (int c = a + 1; c < R; ++c) {
            Vec x(frame[a].begin() + torus, frame[a].end()), y(frame[c].begin() + torus, frame[c].end());
            Vec br = lift(g.bracket(x, y));
            Vec coords = vinv.apply(br);
            for (int k = 0; k < R; ++k)
                if (!coords[k].is_zero()) entries.emplace_back(a, c, k, coords[k]);
        }
    std::string name = d.name.empty() ? "joyce" : d.name;
    auto h = std::make_shared<const HypercomplexAlgebra>(make_standard(LieAlgebra::from_brackets(R, entries, name)));
    JoyceResult out{HyperhermitianMetric::from_gram(h, RealMatrix::identity(R)), mu, torus, std::nullopt};
    CanonicalForms c = canonical_forms(out.metric);
    Curvature k = curvature(out.metric, c);
    out.lambda = einstein_factor(out.metric, k.delJ_alpha, k).lambda;
    if (!d.mu && (!out.lambda || *out.lambda != Scalar(1)))
        throw ConsistencyError("Joyce metric does not satisfy delJ alpha = Omega");
    return out;
}

// su(2) in the basis u2, u3, u4 with [u2,u3] = 2 u4 and cyclic.
inline LieAlgebra su2_algebra() {
    return LieAlgebra::from_brackets(3, {{0, 1, 2, Scalar(2)}, {2, 0, 1, Scalar(2)}, {1, 2, 0, Scalar(2)}}, "su(2)");
}

inline JoyceData joyce_su2() {
    JoyceData d;
    d.name = "R+su(2)";
    d.g = su2_algebra();
    d.blocks.push_back({{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)},
                        {Scalar(0), Scalar(0), Scalar(1)}, {}});
    return d;
}

inline JoyceData joyce_su2xsu2() {
    JoyceData d;
    d.name = "R^2+su(2)+su(2)";
    d.g = direct_sum(su2_algebra(), su2_algebra());
    for (int j = 0; j < 2; ++j) {
        JoyceBlock b;
        for (Vec* v : {&b.e2, &b.e3, &b.e4}) v->assign(6, Scalar(0));
        b.e2[3 * j] = b.e3[3 * j + 1] = b.e4[3 * j + 2] = Scalar(1);
        d.blocks.push_back(b);
    }
    return d;
}

// su(3) from 3x3 anti-Hermitian matrices: d = -i sigma_a on the upper block,
// b = diag(i, i, -2i) / (2 sqrt 3), f generated by (E13 - E31) / 2.
inline JoyceData joyce_su3() {
    using M3 = ComplexMatrix;
    auto mat = [] { return M3(3, 3); };
    Complex i = Complex::i();
    M3 b = mat();
    Scalar s3 = Scalar::quadratic(0, mpq_class(1, 6), 3);  // 1/(2 sqrt 3)
    b(0, 0) = i * Complex(s3);
    b(1, 1) = i * Complex(s3);
    b(2, 2) = Complex(Scalar(-2)) * i * Complex(s3);
    M3 e2 = mat(), e3 = mat(), e4 = mat();
    e2(0, 1) = e2(1, 0) = -i;
    e3(0, 1) = Complex(-1);
    e3(1, 0) = Complex(1);
    e4(0, 0) = -i;
    e4(1, 1) = i;
    M3 f = mat();
    f(0, 2) = Complex(Scalar(1, 2));
    f(2, 0) = Complex(Scalar(-1, 2));
    auto com = [](const M3& x, const M3& y) { return x * y - y * x; };
    std::vector<M3> basis{b, e2, e3, e4, f, com(e2, f), com(e3, f), com(e4, f)};
    RealMatrix coords(18, 8);
    auto flatten = [](const M3& x) {
        Vec v(18);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                v[2 * (3 * r + c)] = x(r, c).re();
                v[2 * (3 * r + c) + 1] = x(r, c).im();
            }
        return v;
    };
    for (int c = 0; c < 8; ++c) {
        Vec v = flatten(basis[c]);
        for (int r = 0; r < 18; ++r) coords(r, c) = v[r];
    }
    std::vector<std::tuple<int, int, int, Scalar>> entries;
    for (int a = 0; a < 8; ++a)
        for (int c = a + 1; c < 8; ++c) {
            auto x = solve(coords, flatten(com(basis[a], basis[c])));
            if (!x) throw MathError("su(3) basis is not closed under brackets");
            for (int k = 0; k < 8; ++k)
                if (!(*x)[k].is_zero()) entries.emplace_back(a, c, k, (*x)[k]);
        }
    JoyceData d;
    d.name = "su(3)";
    d.g = LieAlgebra::from_brackets(8, entries, "su(3)");
    auto unit = [](int k) {
        Vec v(8);
        v[k] = Scalar(1);
        return v;
    };
    d.b.push_back(unit(0));
    d.blocks.push_back({unit(1), unit(2), unit(3), {unit(4)}});
    return d;
}

}  // namespace hha
