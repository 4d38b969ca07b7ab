#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "group.hpp"

namespace pfs {

// FG with the group elements as basis.
class GroupAlgebra {
public:
    GroupPtr G;
    FieldPtr F;

    GroupAlgebra() = default;
    GroupAlgebra(GroupPtr g, FieldPtr f) : G(std::move(g)), F(std::move(f)) {}

    std::size_t dim() const { return static_cast<std::size_t>(G->n); }
    Vec zero() const { return Vec(dim(), 0); }
    Vec unit() const {
        Vec v = zero();
        v[0] = 1;
        return v;
    }
    Vec element(int g) const {
        Vec v = zero();
        v[g] = 1;
        return v;
    }
    Vec sum_of(const std::vector<int>& els) const {
        Vec v = zero();
        for (int g : els) v[g] = F->add(v[g], 1);
        return v;
    }

    Vec mul(const Vec& x, const Vec& y) const {
        const Field& f = *F;
        const int n = G->n;
        Vec r(dim(), 0);
        std::vector<int> ny;
        for (int h = 0; h < n; ++h)
            if (y[h]) ny.push_back(h);
        for (int g = 0; g < n; ++g) {
            if (!x[g]) continue;
            const Elt* m = f.mul_row(x[g]);
            const int* row = G->tab.data() + static_cast<std::size_t>(g) * n;
            for (int h : ny) {
                int gh = row[h];
                r[gh] = f.add(r[gh], m[y[h]]);
            }
        }
        return r;
    }

    // g x g^-1
    Vec conj(int g, const Vec& x) const {
        Vec r = zero();
        for (int h = 0; h < G->n; ++h)
            if (x[h]) r[G->conj(g, h)] = x[h];
        return r;
    }

    bool is_fixed(const Vec& x, const Subgroup& P) const {
        for (int u : P.elems)
            if (conj(u, x) != x) return false;
        return true;
    }

    Elt augmentation(const Vec& x) const {
        Elt s = 0;
        for (Elt c : x) s = F->add(s, c);
        return s;
    }

    Algebra as_algebra() const {
        Algebra A(F, dim());
        for (int g = 0; g < G->n; ++g)
            for (int h = 0; h < G->n; ++h) A.prod(g, h)[G->mul(g, h)] = 1;
        A.one = unit();
        return A;
    }

    bool is_central(const Vec& x) const {
        for (int g = 0; g < G->n; ++g)
            if (conj(g, x) != x) return false;
        return true;
    }
};

inline GroupAlgebra group_algebra(GroupPtr G, FieldPtr F) { return GroupAlgebra(std::move(G), std::move(F)); }

struct Block {
    Vec b;
    bool is_principal = false;
    std::size_t dim = 0;  // dim FGb
};

inline std::size_t ideal_dim(const GroupAlgebra& FG, const Vec& b) {
    Matrix M(FG.F, FG.dim(), FG.dim());
    for (int g = 0; g < FG.G->n; ++g) {
        Vec r = FG.mul(FG.element(g), b);
        std::copy(r.begin(), r.end(), M.row(static_cast<std::size_t>(g)));
    }
    return rank(M);
}

// Primitive idempotents of Z(FG), principal block first, then by
// (dim FGb, coefficient vector).
inline std::vector<Block> blocks(const GroupAlgebra& FG, std::uint64_t seed = 0) {
    auto classes = conjugacy_classes(*FG.G);
    Matrix sums(FG.F, 0, FG.dim());
    for (auto& c : classes) sums.append_row(FG.sum_of(c));
    Subspace Zs(sums);
    Algebra Z = Algebra::on_subspace(
        Zs, [&](const Vec& x, const Vec& y) { return FG.mul(x, y); }, FG.unit());
    Analysis an = analyze(Z, seed);
    Rng rng(seed + 0x5bd1e995ULL);
    auto prims = decompose_identity(Z, an, rng);
    std::vector<Block> out;
    for (auto& e : prims) {
        Block B;
        B.b = Zs.combine(e);
        B.is_principal = FG.augmentation(B.b) == 1;
        B.dim = ideal_dim(FG, B.b);
        out.push_back(std::move(B));
    }
    std::sort(out.begin(), out.end(), [](const Block& x, const Block& y) {
        if (x.is_principal != y.is_principal) return x.is_principal;
        if (x.dim != y.dim) return x.dim < y.dim;
        return x.b < y.b;
    });
    int principal = 0;
    for (auto& B : out) principal += B.is_principal;
    check_internal(principal == 1, "exactly one block must have augmentation 1");
    return out;
}

// Truncation of a P-fixed element to C_G(P); result stays in FG coordinates.
inline Vec brauer_map(const GroupAlgebra& FG, const Vec& x, const Subgroup& P, const Subgroup& CP) {
    if (!FG.is_fixed(x, P)) throw InputError("brauer_map: element is not fixed by the subgroup");
    Vec r = FG.zero();
    for (int g : CP.elems) r[g] = x[g];
    return r;
}

inline Vec brauer_map(const GroupAlgebra& FG, const Vec& x, const Subgroup& P) {
    return brauer_map(FG, x, P, centralizer(*FG.G, P));
}

// (FGb)^P inside FG, spanned by P-orbit sums times b.
inline SubAlgebra fixed_block_algebra(const GroupAlgebra& FG, const Vec& b, const Subgroup& P) {
    const Group& G = *FG.G;
    std::vector<int> seen(G.n, 0);
    Matrix M(FG.F, 0, FG.dim());
    for (int x = 0; x < G.n; ++x) {
        if (seen[x]) continue;
        std::vector<int> orbit;
        for (int u : P.elems) {
            int y = G.conj(u, x);
            if (!seen[y]) {
                seen[y] = 1;
                orbit.push_back(y);
            }
        }
        M.append_row(FG.mul(FG.sum_of(orbit), b));
    }
    SubAlgebra S;
    S.embed = Subspace(M);
    S.alg = Algebra::on_subspace(
        S.embed, [&](const Vec& x, const Vec& y) { return FG.mul(x, y); }, b);
    return S;
}

// Data attached to one p-subgroup P: its centralizer, the blocks of
// F C_G(P) (as FG vectors), and the algebra (FGb)^P with its analysis.
struct LocalData {
    Subgroup P, C;
    std::vector<Block> cblocks;
    SubAlgebra A;
    Analysis an;
};

struct PointInfo {
    std::size_t label = 0;
    Vec rep;            // FG coordinates
    std::size_t count = 0;  // members in a decomposition of b
    bool local = false;
};

class BlockContext {
public:
    GroupPtr G;
    FieldPtr F;
    int p = 2;
    GroupAlgebra FG;
    Block block;
    std::uint64_t seed = 0;

    BlockContext(GroupPtr g, FieldPtr f, int p_, Block b, std::uint64_t s)
        : G(g), F(f), p(p_), FG(g, f), block(std::move(b)), seed(s) {}

    const LocalData& local(const Subgroup& P) {
        auto it = cache_.find(P.elems);
        if (it != cache_.end()) return *it->second;
        auto L = std::make_unique<LocalData>();
        L->P = P;
        L->C = centralizer(*G, P);
        auto CG = std::make_shared<const Group>(subgroup_group(*G, L->C));
        GroupAlgebra FC(CG, F);
        for (auto& cb : blocks(FC, seed)) {
            Block lifted = cb;
            lifted.b = FG.zero();
            for (std::size_t i = 0; i < cb.b.size(); ++i) lifted.b[L->C.elems[i]] = cb.b[i];
            L->cblocks.push_back(std::move(lifted));
        }
        L->A = fixed_block_algebra(FG, block.b, P);
        L->an = analyze(L->A.alg, seed);
        auto& ref = *L;
        cache_.emplace(P.elems, std::move(L));
        return ref;
    }

    Vec brauer(const Vec& x, const Subgroup& P) { return brauer_map(FG, x, P, local(P).C); }

    // label of a primitive idempotent of (FGb)^P given in FG coordinates
    std::size_t label_in(const Subgroup& P, const Vec& e) {
        const auto& L = local(P);
        return point_label(L.an, L.A.to_sub(e));
    }

    // primitive decomposition of an idempotent of (FGb)^P, FG coordinates
    std::vector<Vec> decompose_in(const Subgroup& P, const Vec& e, Rng& rng) {
        const auto& L = local(P);
        std::vector<Vec> out;
        for (auto& v : decompose(L.A.alg, L.an, L.A.to_sub(e), rng)) out.push_back(L.A.from_sub(v));
        return out;
    }

    // points of P on FGb, one per Wedderburn component of (FGb)^P/J
    std::vector<PointInfo> points(const Subgroup& P, Rng& rng) {
        const auto& L = local(P);
        std::vector<PointInfo> pts(L.an.ell());
        auto prims = decompose_in(P, block.b, rng);
        for (auto& e : prims) {
            std::size_t lab = label_in(P, e);
            if (pts[lab].count++ == 0) pts[lab].rep = e;
        }
        for (std::size_t k = 0; k < pts.size(); ++k) {
            pts[k].label = k;
            check_internal(pts[k].count > 0, "point missing from a decomposition of the block identity");
            pts[k].local = !is_zero(brauer(pts[k].rep, P));
        }
        // locality must not depend on the representative
        Rng rng2(rng());
        auto again = decompose_in(P, block.b, rng2);
        for (auto& e : again) {
            std::size_t lab = label_in(P, e);
            check_internal(pts[lab].local == !is_zero(brauer(e, P)), "locality depends on the representative");
        }
        return pts;
    }

private:
    std::map<std::vector<int>, std::unique_ptr<LocalData>> cache_;
};

// Maximal p-subgroup (up to conjugacy) with br_P(b) ≠ 0.
inline Subgroup defect_group(BlockContext& ctx) {
    const Group& G = *ctx.G;
    auto reps = p_subgroups_up_to_conjugacy(G, ctx.p);
    std::vector<Subgroup> surv;
    for (auto& P : reps)
        if (!is_zero(brauer_map(ctx.FG, ctx.block.b, P))) surv.push_back(P);
    check_internal(!surv.empty(), "block with br_1(b) = 0");
    Subgroup D = surv.front();
    for (auto& P : surv)
        if (P.order() > D.order()) D = P;
    for (auto& P : surv) {
        check_internal(conjugate_into(G, P, D), "survivor not conjugate into the defect group");
        if (P.order() == D.order()) check_internal(are_conjugate(G, P, D), "maximal survivors are not conjugate");
    }
    return D;
}

// Blocks e of F C_G(P) with br_P(b) e = e (the Brauer pairs (P,e) of b).
inline std::vector<std::size_t> brauer_pairs_over(BlockContext& ctx, const Subgroup& P) {
    const auto& L = ctx.local(P);
    Vec bb = ctx.brauer(ctx.block.b, P);
    if (is_zero(bb)) throw InputError("brauer_pairs_over: br_P(b) = 0");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < L.cblocks.size(); ++i)
        if (ctx.FG.mul(bb, L.cblocks[i].b) == L.cblocks[i].b) out.push_back(i);
    return out;
}

struct SourceData {
    Subgroup D;
    std::vector<Subgroup> subs;   // subgroups of D, sorted by (order, elements)
    std::size_t eD_index = 0;     // index into the blocks of C_G(D)
    Vec i;                        // source idempotent, FG coordinates
    std::size_t i_label = 0;      // its point in (FGb)^D
    std::vector<std::size_t> eQ;  // per subgroup: index into centralizer blocks
    std::vector<Vec> eQvec;       // the same blocks as FG vectors

    std::size_t sub_index(const Subgroup& Q) const {
        for (std::size_t t = 0; t < subs.size(); ++t)
            if (subs[t] == Q) return t;
        return static_cast<std::size_t>(-1);
    }
};

namespace detail {

// random unit of a subalgebra, with its inverse (sub coordinates)
inline std::pair<Vec, Vec> random_unit(const Algebra& A, Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Vec u = random_vec(*A.F, A.d, rng);
        Matrix L = A.left_mult(u);
        auto x = solve(L, A.one);
        if (!x) continue;
        if (A.mul(u, *x) == A.one && A.mul(*x, u) == A.one) return {u, *x};
    }
    return {A.one, A.one};
}

}  // namespace detail

// Maximal Brauer pair (D, e_D), source idempotent i and the family e_Q.
// With vary_choices the eligible e_D and i are picked at random and i is
// conjugated by a random unit of (FGb)^D.
inline SourceData source_data(BlockContext& ctx, const Subgroup& D, Rng& rng, bool vary_choices = false) {
    const Group& G = *ctx.G;
    Subgroup S = sylow(G, ctx.p);
    check_internal(is_subset(D, S), "defect group must lie inside the fixed Sylow subgroup");
    SourceData sd;
    sd.D = D;
    sd.subs = subgroups_of(G, D);
    auto pairs = brauer_pairs_over(ctx, D);
    check_internal(!pairs.empty(), "no maximal Brauer pair");
    sd.eD_index = pairs.front();
    if (vary_choices) sd.eD_index = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
    const auto& LD = ctx.local(D);
    const Vec& eD = LD.cblocks[sd.eD_index].b;

    auto prims = ctx.decompose_in(D, ctx.block.b, rng);
    std::vector<std::pair<std::size_t, Vec>> cand;
    for (auto& e : prims) {
        Vec br = ctx.brauer(e, D);
        if (is_zero(br)) continue;
        if (ctx.FG.mul(eD, br) == br) cand.push_back({ctx.label_in(D, e), e});
    }
    check_internal(!cand.empty(), "no primitive idempotent compatible with the maximal Brauer pair");
    std::sort(cand.begin(), cand.end());
    std::size_t pick = 0;
    if (vary_choices) pick = std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng);
    sd.i = cand[pick].second;
    sd.i_label = cand[pick].first;
    if (vary_choices) {
        auto [u, uinv] = detail::random_unit(LD.A.alg, rng);
        Vec ic = LD.A.to_sub(sd.i);
        sd.i = LD.A.from_sub(LD.A.alg.mul3(u, ic, uinv));
        check_internal(ctx.label_in(D, sd.i) == sd.i_label, "unit conjugation moved the point");
    }

    for (auto& Q : sd.subs) {
        const auto& L = ctx.local(Q);
        Vec br = ctx.brauer(sd.i, Q);
        check_internal(!is_zero(br), "br_Q(i) vanishes for Q inside the defect group");
        std::vector<std::size_t> hits;
        for (std::size_t t = 0; t < L.cblocks.size(); ++t)
            if (ctx.FG.mul(L.cblocks[t].b, br) == br) hits.push_back(t);
        check_internal(hits.size() == 1, "e_Q is not unique");
        sd.eQ.push_back(hits[0]);
        sd.eQvec.push_back(L.cblocks[hits[0]].b);
    }

    // Independent derivation along normalizer chains: for Q < R = N_D(Q),
    // e_Q is the unique R-stable block f of C_G(Q) with e_R br_R(f) = e_R.
    for (std::size_t t = sd.subs.size(); t-- > 0;) {
        const Subgroup& Q = sd.subs[t];
        if (Q == D) {
            check_internal(sd.eQ[t] == sd.eD_index, "e_D disagrees with the chosen maximal pair");
            continue;
        }
        Subgroup N = normalizer(G, Q);
        Subgroup R;
        R.elems.clear();
        for (int x : D.elems)
            if (N.contains(x)) R.elems.push_back(x);
        std::size_t rt = sd.sub_index(R);
        const Vec& eR = sd.eQvec[rt];
        const auto& L = ctx.local(Q);
        std::vector<std::size_t> hits;
        for (std::size_t s = 0; s < L.cblocks.size(); ++s) {
            const Vec& f = L.cblocks[s].b;
            if (!ctx.FG.is_fixed(f, R)) continue;
            Vec brf = ctx.brauer(f, R);
            if (ctx.FG.mul(eR, brf) == eR) hits.push_back(s);
        }
        check_internal(hits.size() == 1 && hits[0] == sd.eQ[t], "normalizer-chain derivation of e_Q disagrees");
    }
    return sd;
}

struct PointedGroup {
    std::size_t sub = 0;    // index into SourceData::subs
    std::size_t label = 0;  // point label in (FGb)^Q
    Vec rep;                // representative primitive idempotent, FG coordinates
};

// Local pointed groups Q_γ (Q ≤ D) with e_Q br_Q(γ) = br_Q(γ).
inline std::vector<PointedGroup> overshadowed_objects(BlockContext& ctx, const SourceData& sd, Rng& rng) {
    std::vector<PointedGroup> out;
    for (std::size_t t = 0; t < sd.subs.size(); ++t) {
        const Subgroup& Q = sd.subs[t];
        auto pts = ctx.points(Q, rng);
        for (auto& pt : pts) {
            if (!pt.local) continue;
            Vec br = ctx.brauer(pt.rep, Q);
            if (ctx.FG.mul(sd.eQvec[t], br) == br) out.push_back({t, pt.label, pt.rep});
        }
    }
    return out;
}

// Members of point delta of Q in a primitive decomposition of rep inside (FGb)^Q.
inline int relative_multiplicity(BlockContext& ctx, const Subgroup& Q, std::size_t delta, const Subgroup& P,
                                 const Vec& rep, Rng& rng) {
    if (!is_subset(Q, P)) return 0;
    int m = 0;
    for (auto& e : ctx.decompose_in(Q, rep, rng))
        if (ctx.label_in(Q, e) == delta) ++m;
    return m;
}

}  // namespace pfs
