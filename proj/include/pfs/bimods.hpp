#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pointed.hpp"

namespace pfs {

// A module over a finite group H, one matrix per element acting on columns.
struct GModule {
    FieldPtr F;
    GroupPtr H;
    std::size_t dim = 0;
    std::vector<Matrix> rho;
    Vec generator;  // cyclic vector; empty when unknown
    std::string tag;

    const Matrix& act(int h) const { return rho[static_cast<std::size_t>(h)]; }

    // identity acts trivially, matrices invertible and multiplicative on samples
    bool check(Rng& rng, std::size_t samples = 200) const {
        if (!(act(0) == Matrix::identity(F, dim))) return false;
        std::uniform_int_distribution<int> pick(0, H->n - 1);
        for (std::size_t t = 0; t < samples; ++t) {
            int a = pick(rng), b = pick(rng);
            if (!(act(a) * act(b) == act(H->mul(a, b)))) return false;
        }
        for (int h = 0; h < H->n; ++h)
            if (!(act(h) * act(H->inv(h)) == Matrix::identity(F, dim))) return false;
        return true;
    }
};

namespace detail {

inline std::optional<Matrix> inverse(const Matrix& A) {
    std::size_t n = A.rows;
    Matrix aug(A.F, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(A.row(i), A.row(i) + n, aug.row(i));
        aug(i, n + i) = 1;
    }
    auto r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(A.F, n, n);
    for (std::size_t i = 0; i < n; ++i) std::copy(r.R.row(i) + n, r.R.row(i) + 2 * n, inv.row(i));
    return inv;
}

inline Matrix columns_to_matrix(const FieldPtr& F, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix M(F, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
    return M;
}

// Whether v generates M.
inline bool generates(const GModule& M, const Vec& v) {
    if (v.empty()) return false;
    std::vector<Vec> rows;
    for (int h = 0; h < M.H->n; ++h) rows.push_back(M.act(h).apply(v));
    return rank(Matrix::from_rows(M.F, rows, M.dim)) == M.dim;
}

}  // namespace detail

// Module on the subspace FG·i with (g,u) ∈ G×P acting by x ↦ g x u^-1.
// Labels of G×P are g·|P| + (index of u in P).
inline GModule dia_module(const GroupAlgebra& FG, const Subgroup& P, const Vec& i, std::string tag = "") {
    const Group& G = *FG.G;
    std::vector<Vec> rows;
    for (int g = 0; g < G.n; ++g) rows.push_back(FG.mul(FG.element(g), i));
    Subspace S(Matrix::from_rows(FG.F, rows, FG.dim()));
    GModule M;
    M.F = FG.F;
    M.H = std::make_shared<const Group>(direct_product(G, subgroup_group(G, P)));
    M.dim = S.dim();
    M.tag = std::move(tag);
    for (int h = 0; h < M.H->n; ++h) {
        int g = h / P.order(), u = P.elems[static_cast<std::size_t>(h % P.order())];
        Vec gv = FG.element(g), uv = FG.element(G.inv(u));
        Matrix A(FG.F, M.dim, M.dim);
        for (std::size_t k = 0; k < M.dim; ++k) {
            Vec y = FG.mul(FG.mul(gv, S.basis.row_vec(k)), uv);
            Vec c = S.coords(y);
            check_internal(S.combine(c) == y, "FG·i is not stable under the two-sided action");
            for (std::size_t r = 0; r < M.dim; ++r) A(r, k) = c[r];
        }
        M.rho.push_back(std::move(A));
    }
    M.generator = S.coords(i);
    return M;
}

// Module over K through a homomorphism K -> H given by labels.
inline GModule pullback(const GModule& M, GroupPtr K, const std::vector<int>& to_H, std::string tag = "") {
    if (static_cast<int>(to_H.size()) != K->n) throw InputError("pullback map has the wrong length");
    GModule R;
    R.F = M.F;
    R.H = std::move(K);
    R.dim = M.dim;
    R.tag = tag.empty() ? M.tag : std::move(tag);
    for (int k = 0; k < R.H->n; ++k) R.rho.push_back(M.act(to_H[static_cast<std::size_t>(k)]));
    if (detail::generates(R, M.generator)) R.generator = M.generator;
    return R;
}

// Restriction of a G×P module to G×Q for Q ≤ P (both labelled as in dia_module).
inline GModule restrict_right(const GModule& M, const Group& G, const Subgroup& P, const Subgroup& Q) {
    if (!is_subset(Q, P)) throw InputError("restriction needs Q ≤ P");
    auto K = std::make_shared<const Group>(direct_product(G, subgroup_group(G, Q)));
    std::vector<int> to_H(static_cast<std::size_t>(K->n));
    for (int k = 0; k < K->n; ++k) {
        int g = k / Q.order(), u = Q.elems[static_cast<std::size_t>(k % Q.order())];
        to_H[static_cast<std::size_t>(k)] = g * P.order() + P.index_of(u);
    }
    return pullback(M, K, to_H, "Res(" + M.tag + ")");
}

// Basis of Hom_H(M, N) as matrices N.dim × M.dim, by spinning M's cyclic vector.
// Returned together with the values at the generator, which coordinatize it.
struct HomSpace {
    std::vector<Matrix> maps;
    Subspace values;  // rref basis of {f(v)}; maps[a](v) = values row a
};

inline HomSpace hom_space(const GModule& M, const GModule& N) {
    if (M.generator.empty()) throw InputError("Hom source needs a cyclic generator");
    if (M.H->n != N.H->n || M.H->tab != N.H->tab) throw InputError("modules over different groups");
    const FieldPtr& F = M.F;
    auto gens = M.H->generators();
    std::vector<Vec> basis{M.generator};
    std::vector<Matrix> W{Matrix::identity(F, N.dim)};
    struct Relation {
        std::size_t k;
        int s;
        Vec c;
    };
    std::vector<Relation> rels;
    detail::IncrementalSpan span(F, M.dim);
    Vec coeffs;
    span.add(M.generator, coeffs);
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (int s : gens) {
            Vec w = M.act(s).apply(basis[k]);
            if (span.add(w, coeffs)) {
                rels.push_back({k, s, coeffs});
            } else {
                basis.push_back(w);
                W.push_back(N.act(s) * W[k]);
            }
        }
    check_internal(basis.size() == M.dim, "generator does not generate the module");
    Matrix eqs(F, 0, N.dim);
    for (auto& r : rels) {
        Matrix C = N.act(r.s) * W[r.k];
        for (std::size_t l = 0; l < r.c.size(); ++l)
            if (r.c[l]) axpy(*F, F->neg(r.c[l]), W[l].a.data(), C.a.data(), C.a.size());
        for (std::size_t i = 0; i < C.rows; ++i) eqs.append_row(C.row_vec(i));
    }
    Matrix sol = eqs.rows ? nullspace(eqs) : Matrix::identity(F, N.dim);
    HomSpace out;
    out.values = Subspace(sol.rows ? sol : Matrix(F, 0, N.dim));
    auto Binv = detail::inverse(detail::columns_to_matrix(F, basis, M.dim));
    check_internal(Binv.has_value(), "spun basis is singular");
    for (std::size_t a = 0; a < out.values.dim(); ++a) {
        Vec w = out.values.basis.row_vec(a);
        std::vector<Vec> cols;
        for (auto& Wk : W) cols.push_back(Wk.apply(w));
        out.maps.push_back(detail::columns_to_matrix(F, cols, N.dim) * *Binv);
    }
    return out;
}

// End_H(M) with product f·g = f∘g, in the coordinates of hom_space(M, M).
struct EndAlgebra {
    HomSpace hom;
    Algebra alg;

    Matrix as_map(const Vec& coords) const {
        Matrix X(alg.F, hom.values.ambient(), hom.values.ambient());
        for (std::size_t a = 0; a < coords.size(); ++a)
            if (coords[a]) axpy(*alg.F, coords[a], hom.maps[a].a.data(), X.a.data(), X.a.size());
        return X;
    }
};

inline EndAlgebra end_algebra(const GModule& M) {
    EndAlgebra E;
    E.hom = hom_space(M, M);
    std::size_t d = E.hom.maps.size();
    E.alg = Algebra(M.F, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Vec w = E.hom.maps[a].apply(E.hom.values.basis.row_vec(b));
            Vec c = E.hom.values.coords(w);
            std::copy(c.begin(), c.end(), E.alg.prod(a, b));
        }
    E.alg.one = E.hom.values.coords(M.generator);
    check_internal(E.hom.values.combine(E.alg.one) == M.generator, "identity is not an endomorphism");
    return E;
}

namespace detail {

// The residue map End(L) -> End(L)/J ≅ F of an absolutely indecomposable L.
struct Residue {
    EndAlgebra E;
    Analysis an;
    Elt one_bar = 1;

    Elt operator()(const Vec& value_at_generator) const {
        Vec c = E.hom.values.coords(value_at_generator);
        Vec bar = an.W.project(c);
        return E.alg.F->div(bar[0], one_bar);
    }
};

inline Residue residue_of(const GModule& L) {
    Residue R;
    R.E = end_algebra(L);
    R.an = analyze(R.E.alg);
    if (R.an.ell() != 1 || R.an.W.msize[0] != 1)
        throw InputError("module " + L.tag + " is not absolutely indecomposable");
    R.one_bar = R.an.W.project(R.E.alg.one)[0];
    return R;
}

}  // namespace detail

// Multiplicity of the indecomposable L as a direct summand of M. Counted two
// ways: primitive idempotents e of End(M) with L | eM, and the rank of the
// composition pairing Hom(M,L) × Hom(L,M) -> End(L)/J.
inline int summand_multiplicity(const GModule& L, const GModule& M, Rng& rng) {
    auto res = detail::residue_of(L);
    HomSpace LM = hom_space(L, M), ML = hom_space(M, L);
    const FieldPtr& F = L.F;
    auto pairing = [&](const Matrix* e) {
        Matrix P(F, ML.maps.size(), LM.maps.size());
        for (std::size_t b = 0; b < LM.maps.size(); ++b) {
            Vec fv = LM.values.basis.row_vec(b);
            if (e) fv = e->apply(fv);
            for (std::size_t a = 0; a < ML.maps.size(); ++a) P(a, b) = res(ML.maps[a].apply(fv));
        }
        return rank(P);
    };
    if (LM.maps.empty() || ML.maps.empty()) return 0;
    int total = static_cast<int>(pairing(nullptr));
    EndAlgebra EM = end_algebra(M);
    Analysis an = analyze(EM.alg);
    int counted = 0;
    for (auto& e : decompose_identity(EM.alg, an, rng)) {
        Matrix X = EM.as_map(e);
        if (pairing(&X) > 0) ++counted;
    }
    check_internal(counted == total, "summand count disagrees with the composition pairing rank");
    return total;
}

inline bool modules_isomorphic(const GModule& L, const GModule& M, Rng& rng) {
    return L.dim == M.dim && summand_multiplicity(L, M, rng) == 1;
}

// m(Q_δ, P_γ) as the multiplicity of Dia(Q_δ) in the restriction of Dia(P_γ) to G×Q.
inline int multiplicity_via_bimodules(const GroupAlgebra& FG, const Subgroup& Q, const Vec& delta_rep,
                                      const Subgroup& P, const Vec& gamma_rep, Rng& rng) {
    if (!is_subset(Q, P)) return 0;
    GModule L = dia_module(FG, Q, delta_rep, "Dia(Q)");
    GModule M = restrict_right(dia_module(FG, P, gamma_rep, "Dia(P)"), *FG.G, P, Q);
    return summand_multiplicity(L, M, rng);
}

// Dia(^φ P_γ) ≅ Dia(P_γ) with the right action twisted through φ^-1.
// images: φ on the sorted elements of P; target_rep represents ^φγ.
inline bool lemma53_check(const GroupAlgebra& FG, const Subgroup& P, const Vec& gamma_rep,
                          const std::vector<int>& images, const Vec& target_rep, Rng& rng) {
    const Group& G = *FG.G;
    std::vector<int> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    Subgroup R{sorted};
    GModule L = dia_module(FG, R, target_rep, "Dia(phi P)");
    GModule M = dia_module(FG, P, gamma_rep, "Dia(P)");
    auto K = std::make_shared<const Group>(direct_product(G, subgroup_group(G, R)));
    std::vector<int> to_H(static_cast<std::size_t>(K->n));
    for (int k = 0; k < K->n; ++k) {
        int g = k / R.order(), v = R.elems[static_cast<std::size_t>(k % R.order())];
        int pre = -1;
        for (std::size_t t = 0; t < images.size(); ++t)
            if (images[t] == v) pre = static_cast<int>(t);
        check_internal(pre >= 0, "morphism images do not cover the image subgroup");
        to_H[static_cast<std::size_t>(k)] = g * P.order() + pre;
    }
    GModule T = pullback(M, K, to_H, "twisted Dia(P)");
    return modules_isomorphic(L, T, rng);
}

struct BrauerQuotient {
    Subspace fixed;    // M^{ΔR}
    Subspace traces;   // sum of relative traces from proper subgroups
    std::size_t dim = 0;
    std::vector<int> centralizer;    // C_G(R), labels of G
    std::vector<Matrix> action;      // induced action of (c,1), c ∈ C_G(R)
};

// M(ΔR) for a module over G×P labelled as in dia_module, R ≤ P.
inline BrauerQuotient brauer_construction(const GModule& M, const Group& G, const Subgroup& P, const Subgroup& R,
                                          bool with_action = false) {
    if (!is_subset(R, P)) throw InputError("Brauer construction needs R ≤ P");
    const FieldPtr& F = M.F;
    auto diag = [&](int u) { return u * P.order() + P.index_of(u); };
    auto fixed_by = [&](const Subgroup& Q) {
        Matrix eqs(F, 0, M.dim);
        Matrix I = Matrix::identity(F, M.dim);
        for (int u : Q.elems) {
            if (u == 0) continue;
            Matrix D = M.act(diag(u)) - I;
            for (std::size_t i = 0; i < D.rows; ++i) eqs.append_row(D.row_vec(i));
        }
        return eqs.rows ? Subspace(nullspace(eqs)) : Subspace(I);
    };
    BrauerQuotient out;
    out.fixed = fixed_by(R);
    Matrix tr(F, 0, M.dim);
    for (auto& Q : subgroups_of(G, R)) {
        if (Q.order() == R.order()) continue;
        // left coset representatives of Q in R
        std::vector<int> reps;
        std::set<std::vector<int>> seen;
        for (int u : R.elems) {
            std::vector<int> coset;
            for (int q : Q.elems) coset.push_back(G.mul(u, q));
            std::sort(coset.begin(), coset.end());
            if (seen.insert(coset).second) reps.push_back(u);
        }
        Subspace FQ = fixed_by(Q);
        for (std::size_t k = 0; k < FQ.dim(); ++k) {
            Vec m = FQ.basis.row_vec(k), t(M.dim, 0);
            for (int u : reps) axpy(*F, 1, M.act(diag(u)).apply(m), t);
            tr.append_row(t);
        }
    }
    out.traces = tr.rows ? Subspace(tr) : Subspace(Matrix(F, 0, M.dim));
    for (std::size_t k = 0; k < out.traces.dim(); ++k)
        check_internal(out.fixed.contains(out.traces.basis.row_vec(k)), "relative trace is not fixed");
    out.dim = out.fixed.dim() - out.traces.dim();
    out.centralizer = centralizer(G, R).elems;
    if (with_action && out.dim) {
        // quotient basis: fixed vectors completing the trace basis
        std::vector<Vec> qb;
        detail::IncrementalSpan span(F, M.dim);
        Vec c;
        for (std::size_t k = 0; k < out.traces.dim(); ++k) span.add(out.traces.basis.row_vec(k), c);
        for (std::size_t k = 0; k < out.fixed.dim(); ++k)
            if (!span.add(out.fixed.basis.row_vec(k), c)) qb.push_back(out.fixed.basis.row_vec(k));
        std::vector<Vec> all;
        for (std::size_t k = 0; k < out.traces.dim(); ++k) all.push_back(out.traces.basis.row_vec(k));
        for (auto& v : qb) all.push_back(v);
        Matrix B = detail::columns_to_matrix(F, all, M.dim);
        for (int cg : out.centralizer) {
            Matrix A(F, out.dim, out.dim);
            for (std::size_t k = 0; k < qb.size(); ++k) {
                auto s = solve(B, M.act(cg * P.order()).apply(qb[k]));
                check_internal(s.has_value(), "centralizer does not preserve the fixed points");
                for (std::size_t r = 0; r < out.dim; ++r) A(r, k) = (*s)[out.traces.dim() + r];
            }
            out.action.push_back(std::move(A));
        }
    }
    return out;
}

}  // namespace pfs
