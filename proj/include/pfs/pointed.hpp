#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blocks.hpp"

namespace pfs {

// One morphism Q -> P of the fusion system; images align with the sorted
// elements of Q (labels of G).
struct Morphism {
    std::size_t from = 0, to = 0;
    std::vector<int> images;
    int witness = 0;
};

struct FusionSystem {
    std::vector<int> defect_elems;   // labels of G, sorted
    std::vector<int> defect_table;   // multiplication of D in local labels
    std::vector<Subgroup> subs;      // subgroups of D (labels of G), canonical order
    std::vector<std::string> names;  // "1", "D", X/Y/Z, or P<order>.<k>
    std::vector<Morphism> morphisms;

    std::size_t sub_index(const std::vector<int>& sorted) const {
        for (std::size_t t = 0; t < subs.size(); ++t)
            if (subs[t].elems == sorted) return t;
        return npos;
    }
    // morphism id from (from, to, images)
    std::size_t find(std::size_t from, std::size_t to, const std::vector<int>& images) const {
        auto it = index_.find(key(from, to, images));
        return it == index_.end() ? npos : it->second;
    }
    void reindex() {
        index_.clear();
        for (std::size_t m = 0; m < morphisms.size(); ++m)
            index_[key(morphisms[m].from, morphisms[m].to, morphisms[m].images)] = m;
    }
    std::vector<std::size_t> hom(std::size_t from, std::size_t to) const {
        std::vector<std::size_t> out;
        for (std::size_t m = 0; m < morphisms.size(); ++m)
            if (morphisms[m].from == from && morphisms[m].to == to) out.push_back(m);
        return out;
    }
    // image of x ∈ subs[m.from] under morphism m
    int apply(const Morphism& m, int x) const {
        int i = subs[m.from].index_of(x);
        check_internal(i >= 0, "morphism applied outside its domain");
        return m.images[static_cast<std::size_t>(i)];
    }
    std::vector<int> image_set(const Morphism& m) const {
        std::vector<int> s = m.images;
        std::sort(s.begin(), s.end());
        return s;
    }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    using Key = std::tuple<std::size_t, std::size_t, std::vector<int>>;
    static Key key(std::size_t a, std::size_t b, const std::vector<int>& im) { return {a, b, im}; }
    std::map<Key, std::size_t> index_;
};

struct FieldInfo {
    unsigned p = 2, k = 1;
    std::vector<unsigned> modulus;
};

struct PfsMeta {
    std::string group;
    int group_order = 1;
    int p = 2;
    FieldInfo field;
    int block_index = 0;
    bool is_principal = true;
    int dim_block = 0;
    int dim_source_algebra = 0;
    std::vector<std::vector<int>> cartan;
    int ell = 0;
    std::uint64_t seed = 0;
    bool stable_part = false;
};

struct PfsObject {
    std::string id;
    std::size_t sub = 0;
    std::size_t label = 0;  // point label in (FGb)^Q
};

struct PointedFusionSystem {
    PfsMeta meta;
    FusionSystem fusion;
    std::vector<PfsObject> objects;
    // per morphism id: object over the domain -> object over the image
    std::vector<std::map<std::size_t, std::size_t>> actions;
    std::map<std::pair<std::size_t, std::size_t>, int> mult;  // nonzero entries only

    int m(std::size_t x, std::size_t y) const {
        auto it = mult.find({x, y});
        return it == mult.end() ? 0 : it->second;
    }
    std::vector<std::size_t> objects_over(std::size_t sub) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i].sub == sub) out.push_back(i);
        return out;
    }
    std::size_t object_index(const std::string& id) const {
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i].id == id) return i;
        return FusionSystem::npos;
    }
    int max_multiplicity() const {
        int mx = 0;
        for (auto& [k, v] : mult) mx = std::max(mx, v);
        return mx;
    }
    int defect_order() const { return static_cast<int>(fusion.defect_elems.size()); }
};

namespace detail {

inline std::vector<std::string> subgroup_names(const std::vector<Subgroup>& subs) {
    std::vector<std::string> names(subs.size());
    int top = subs.back().order();
    std::size_t middle = 0;
    for (auto& s : subs)
        if (s.order() != 1 && s.order() != top) ++middle;
    bool klein = top == 4 && middle == 3;
    std::map<int, int> seen;
    const char* xyz[] = {"X", "Y", "Z"};
    for (std::size_t t = 0; t < subs.size(); ++t) {
        int o = subs[t].order();
        if (o == 1)
            names[t] = "1";
        else if (o == top)
            names[t] = "D";
        else if (klein)
            names[t] = xyz[seen[o]++];
        else
            names[t] = "P" + std::to_string(o) + "." + std::to_string(++seen[o]);
    }
    return names;
}

inline std::string show_images(const std::vector<int>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

}  // namespace detail

inline void assign_object_ids(PointedFusionSystem& P) {
    std::map<std::size_t, int> counter;
    std::vector<std::size_t> order(P.objects.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (P.objects[a].sub != P.objects[b].sub) return P.objects[a].sub < P.objects[b].sub;
        return P.objects[a].label < P.objects[b].label;
    });
    for (auto i : order)
        P.objects[i].id = P.fusion.names[P.objects[i].sub] + "_" + std::to_string(++counter[P.objects[i].sub]);
}

// Structural conditions on a pointed fusion system; throws AxiomViolation.
inline void validate(const PointedFusionSystem& P) {
    const FusionSystem& F = P.fusion;
    auto fail = [](const std::string& what, const std::string& witness) { throw AxiomViolation(what, witness); };
    const std::size_t ns = F.subs.size();

    // poset-category conditions on the fusion system
    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t r = 0; r < ns; ++r)
            if (is_subset(F.subs[q], F.subs[r]) && F.find(q, r, F.subs[q].elems) == FusionSystem::npos)
                fail("inclusion is not a morphism", F.names[q] + " -> " + F.names[r]);
    for (std::size_t a = 0; a < F.morphisms.size(); ++a) {
        const Morphism& phi = F.morphisms[a];
        auto img = F.image_set(phi);
        std::size_t is = F.sub_index(img);
        if (is == FusionSystem::npos) fail("morphism image is not a subgroup of D", detail::show_images(phi.images));
        if (img.size() != phi.images.size()) fail("morphism is not injective", detail::show_images(phi.images));
        if (!is_subset(F.subs[is], F.subs[phi.to])) fail("morphism image escapes its codomain", detail::show_images(phi.images));
        if (F.find(phi.from, is, phi.images) == FusionSystem::npos)
            fail("factorization through the image fails", detail::show_images(phi.images));
        for (std::size_t q = 0; q < ns; ++q) {
            if (!is_subset(F.subs[q], F.subs[phi.from])) continue;
            std::vector<int> res;
            for (int x : F.subs[q].elems) res.push_back(F.apply(phi, x));
            if (F.find(q, phi.to, res) == FusionSystem::npos)
                fail("restriction of a morphism is missing", F.names[q] + " under " + detail::show_images(phi.images));
        }
    }
    // act(phi restricted to sub q, object) for any domain sub q of phi
    auto act = [&](const Morphism& phi, std::size_t q, std::size_t obj) -> std::size_t {
        std::vector<int> res;
        for (int x : F.subs[q].elems) res.push_back(F.apply(phi, x));
        std::size_t mid = F.find(q, phi.to, res);
        check_internal(mid != FusionSystem::npos, "restriction missing");
        auto it = P.actions[mid].find(obj);
        if (it == P.actions[mid].end())
            fail("point action undefined", P.objects[obj].id + " under " + detail::show_images(res));
        return it->second;
    };
    for (std::size_t a = 0; a < F.morphisms.size(); ++a) {
        const Morphism& phi = F.morphisms[a];
        for (auto x : P.objects_over(phi.from)) {
            auto it = P.actions[a].find(x);
            if (it == P.actions[a].end()) fail("point action undefined", P.objects[x].id);
            std::size_t img = F.sub_index(F.image_set(phi));
            if (P.objects[it->second].sub != img) fail("point action lands over the wrong subgroup", P.objects[x].id);
        }
    }
    // (a) bijection composition
    for (auto& phi : F.morphisms)
        for (auto& psi : F.morphisms) {
            if (psi.from != phi.to) continue;
            std::vector<int> comp;
            for (int x : phi.images) comp.push_back(F.apply(psi, x));
            std::size_t c = F.find(phi.from, psi.to, comp);
            if (c == FusionSystem::npos) fail("composite of morphisms is missing", detail::show_images(comp));
            std::size_t img = F.sub_index(F.image_set(phi));
            for (auto x : P.objects_over(phi.from)) {
                std::size_t lhs = P.actions[c].at(x);
                std::size_t mid = P.actions[F.find(phi.from, phi.to, phi.images)].at(x);
                std::size_t rhs = act(psi, img, mid);
                if (lhs != rhs)
                    fail("bijection composition condition fails",
                         P.objects[x].id + ": " + P.objects[lhs].id + " vs " + P.objects[rhs].id);
            }
        }
    const std::size_t no = P.objects.size();
    // (b) multiposet and (c) refinement
    for (std::size_t x = 0; x < no; ++x) {
        if (P.m(x, x) != 1) fail("m(x,x) must be 1", P.objects[x].id);
        for (std::size_t y = 0; y < no; ++y) {
            int v = P.m(x, y);
            if (v < 0) fail("negative multiplicity", P.objects[x].id + "," + P.objects[y].id);
            if (!v) continue;
            if (!is_subset(F.subs[P.objects[x].sub], F.subs[P.objects[y].sub]))
                fail("refinement condition: nonzero multiplicity without inclusion", P.objects[x].id + " < " + P.objects[y].id);
            if (x != y && P.objects[x].sub == P.objects[y].sub)
                fail("refinement condition: distinct points of one subgroup related", P.objects[x].id + " < " + P.objects[y].id);
            if (x != y && P.m(y, x)) fail("multiposet condition: antisymmetry", P.objects[x].id + " <> " + P.objects[y].id);
            for (std::size_t z = 0; z < no; ++z)
                if (P.m(y, z) && !P.m(x, z))
                    fail("multiposet condition: transitivity", P.objects[x].id + " < " + P.objects[y].id + " < " + P.objects[z].id);
        }
    }
    // (d) compatibility
    for (std::size_t a = 0; a < F.morphisms.size(); ++a) {
        const Morphism& phi = F.morphisms[a];
        for (auto y : P.objects_over(phi.from))
            for (std::size_t x = 0; x < no; ++x) {
                std::size_t q = P.objects[x].sub;
                if (!is_subset(F.subs[q], F.subs[phi.from])) continue;
                std::size_t fx = act(phi, q, x), fy = P.actions[a].at(y);
                if (P.m(fx, fy) != P.m(x, y))
                    fail("compatibility condition fails",
                         P.objects[x].id + "," + P.objects[y].id + " under " + detail::show_images(phi.images));
            }
    }
    // chain inequality m(x,z) >= sum_e m(x,e) m(e,z) over each intermediate subgroup
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t z = 0; z < no; ++z) {
            const Subgroup& Q = F.subs[P.objects[x].sub];
            const Subgroup& Pz = F.subs[P.objects[z].sub];
            if (!is_subset(Q, Pz)) continue;
            for (std::size_t r = 0; r < ns; ++r) {
                if (!is_subset(Q, F.subs[r]) || !is_subset(F.subs[r], Pz)) continue;
                int s = 0;
                for (auto e : P.objects_over(r)) s += P.m(x, e) * P.m(e, z);
                if (P.m(x, z) < s)
                    fail("chain inequality fails", P.objects[x].id + " < " + F.names[r] + " < " + P.objects[z].id);
            }
        }
}

struct BuildOptions {
    bool vary_choices = false;
    bool check_multiplicities = true;  // recompute with a second decomposition
};

struct BuildResult {
    PointedFusionSystem pfs;
    SourceData source;
    std::vector<PointedGroup> objects;  // aligned with pfs.objects
};

// Build the pointed fusion system of one block inside an existing context.
inline BuildResult build_in_context(BlockContext& ctx, int block_index, const BuildOptions& opt = {}) {
    const Group& G = *ctx.G;
    Rng rng(ctx.seed);
    BuildResult R;
    PointedFusionSystem& P = R.pfs;
    P.meta.group = G.name;
    P.meta.group_order = G.n;
    P.meta.p = ctx.p;
    P.meta.field = {ctx.F->p, ctx.F->k, ctx.F->modulus};
    P.meta.block_index = block_index;
    P.meta.is_principal = ctx.block.is_principal;
    P.meta.dim_block = static_cast<int>(ctx.block.dim);
    P.meta.seed = ctx.seed;

    Subgroup D = defect_group(ctx);
    R.source = source_data(ctx, D, rng, opt.vary_choices);
    const SourceData& sd = R.source;
    FusionSystem& F = P.fusion;
    F.defect_elems = D.elems;
    Group Dg = subgroup_group(G, D);
    F.defect_table = Dg.tab;
    F.subs = sd.subs;
    F.names = detail::subgroup_names(F.subs);

    R.objects = overshadowed_objects(ctx, sd, rng);
    for (auto& o : R.objects) P.objects.push_back({"", o.sub, o.label});
    assign_object_ids(P);

    // class maps c_g|Q with ^g e_Q = e_{gQg^-1}; the first g found is the witness
    struct MapClass {
        std::size_t from, image;
        std::vector<int> images;
        std::vector<int> witnesses;
    };
    std::vector<MapClass> classes;
    for (std::size_t q = 0; q < F.subs.size(); ++q) {
        std::map<std::vector<int>, std::size_t> seen;
        for (int g = 0; g < G.n; ++g) {
            std::vector<int> im;
            for (int x : F.subs[q].elems) im.push_back(G.conj(g, x));
            std::vector<int> sorted = im;
            std::sort(sorted.begin(), sorted.end());
            std::size_t r = F.sub_index(sorted);
            if (r == FusionSystem::npos) continue;
            if (ctx.FG.conj(g, sd.eQvec[q]) != sd.eQvec[r]) continue;
            auto it = seen.find(im);
            if (it == seen.end()) {
                seen[im] = classes.size();
                classes.push_back({q, r, im, {g}});
            } else {
                classes[it->second].witnesses.push_back(g);
            }
        }
    }
    // point action of each class, checked across all witnesses
    std::vector<std::map<std::size_t, std::size_t>> class_action(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& mc = classes[c];
        for (auto x : P.objects_over(mc.from)) {
            std::optional<std::size_t> target;
            for (int g : mc.witnesses) {
                Vec e = ctx.FG.conj(g, R.objects[x].rep);
                std::size_t lab = ctx.label_in(F.subs[mc.image], e);
                std::size_t hit = FusionSystem::npos;
                for (auto y : P.objects_over(mc.image))
                    if (P.objects[y].label == lab) hit = y;
                if (hit == FusionSystem::npos)
                    throw InternalInconsistency("conjugated point of " + P.objects[x].id + " is not overshadowed");
                if (target && *target != hit)
                    throw InternalInconsistency("point action depends on the witness for " + P.objects[x].id);
                target = hit;
            }
            class_action[c][x] = *target;
        }
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t t = 0; t < F.subs.size(); ++t) {
            if (!is_subset(F.subs[classes[c].image], F.subs[t])) continue;
            F.morphisms.push_back({classes[c].from, t, classes[c].images, classes[c].witnesses.front()});
            P.actions.push_back(class_action[c]);
        }
    std::stable_sort(F.morphisms.begin(), F.morphisms.end(), [](const Morphism&, const Morphism&) { return false; });
    F.reindex();

    for (std::size_t y = 0; y < P.objects.size(); ++y)
        for (std::size_t x = 0; x < P.objects.size(); ++x) {
            const Subgroup& Q = F.subs[P.objects[x].sub];
            const Subgroup& Py = F.subs[P.objects[y].sub];
            if (!is_subset(Q, Py)) continue;
            int v = relative_multiplicity(ctx, Q, P.objects[x].label, Py, R.objects[y].rep, rng);
            if (opt.check_multiplicities) {
                Rng rng2(rng());
                int v2 = relative_multiplicity(ctx, Q, P.objects[x].label, Py, R.objects[y].rep, rng2);
                check_internal(v == v2, "relative multiplicity depends on the decomposition");
            }
            if (v) P.mult[{x, y}] = v;
        }

    Subgroup one;
    const auto& L1 = ctx.local(one);
    P.meta.ell = static_cast<int>(L1.an.ell());
    P.meta.cartan = cartan_matrix(L1.A.alg, L1.an, rng);
    Matrix iGi(ctx.F, static_cast<std::size_t>(G.n), static_cast<std::size_t>(G.n));
    for (int g = 0; g < G.n; ++g) {
        Vec v = ctx.FG.mul(ctx.FG.mul(sd.i, ctx.FG.element(g)), sd.i);
        std::copy(v.begin(), v.end(), iGi.row(static_cast<std::size_t>(g)));
    }
    P.meta.dim_source_algebra = static_cast<int>(rank(iGi));
    validate(P);
    return R;
}

// Default field degree: multiplicative order of p modulo the p'-part of exp(G).
inline unsigned default_field_degree(const Group& G, int p) {
    int e = G.exponent();
    while (e % p == 0) e /= p;
    if (e == 1) return 1;
    unsigned k = 1;
    long long x = p % e;
    while (x != 1) {
        x = x * p % e;
        ++k;
    }
    return k;
}

struct BlockSet {
    GroupPtr G;
    FieldPtr F;
    std::vector<Block> blocks;
};

inline BlockSet block_set(const Group& G, int p, unsigned k, std::uint64_t seed) {
    if (!is_prime(static_cast<unsigned>(p))) throw InputError("p = " + std::to_string(p) + " is not prime");
    BlockSet bs;
    bs.G = std::make_shared<const Group>(G);
    bs.F = make_field(static_cast<unsigned>(p), k ? k : default_field_degree(G, p));
    bs.blocks = blocks(GroupAlgebra(bs.G, bs.F), seed);
    return bs;
}

inline BuildResult build_full(const BlockSet& bs, int p, int block_index, std::uint64_t seed, const BuildOptions& opt = {}) {
    if (block_index < 0 || block_index >= static_cast<int>(bs.blocks.size()))
        throw InputError("block index " + std::to_string(block_index) + " out of range (" +
                         std::to_string(bs.blocks.size()) + " blocks)");
    BlockContext ctx(bs.G, bs.F, p, bs.blocks[static_cast<std::size_t>(block_index)], seed);
    return build_in_context(ctx, block_index, opt);
}

// k = 0 selects the default degree
inline PointedFusionSystem build_pfs(const Group& G, int p, int block_index, unsigned k, std::uint64_t seed,
                                     const BuildOptions& opt = {}) {
    return build_full(block_set(G, p, k, seed), p, block_index, seed, opt).pfs;
}

// Objects and fusion restricted to the non-trivial subgroups.
inline PointedFusionSystem stable_part(const PointedFusionSystem& P) {
    PointedFusionSystem S;
    S.meta = P.meta;
    S.meta.stable_part = true;
    const FusionSystem& F = P.fusion;
    std::vector<std::size_t> sub_map(F.subs.size(), FusionSystem::npos);
    S.fusion.defect_elems = F.defect_elems;
    S.fusion.defect_table = F.defect_table;
    for (std::size_t t = 0; t < F.subs.size(); ++t) {
        if (F.subs[t].order() == 1) continue;
        sub_map[t] = S.fusion.subs.size();
        S.fusion.subs.push_back(F.subs[t]);
        S.fusion.names.push_back(F.names[t]);
    }
    std::vector<std::size_t> obj_map(P.objects.size(), FusionSystem::npos);
    for (std::size_t i = 0; i < P.objects.size(); ++i) {
        if (sub_map[P.objects[i].sub] == FusionSystem::npos) continue;
        obj_map[i] = S.objects.size();
        PfsObject o = P.objects[i];
        o.sub = sub_map[o.sub];
        S.objects.push_back(o);
    }
    for (std::size_t a = 0; a < F.morphisms.size(); ++a) {
        const Morphism& m = F.morphisms[a];
        if (sub_map[m.from] == FusionSystem::npos) continue;
        S.fusion.morphisms.push_back({sub_map[m.from], sub_map[m.to], m.images, m.witness});
        std::map<std::size_t, std::size_t> act;
        for (auto& [x, y] : P.actions[a]) act[obj_map[x]] = obj_map[y];
        S.actions.push_back(act);
    }
    S.fusion.reindex();
    for (auto& [k, v] : P.mult)
        if (obj_map[k.first] != FusionSystem::npos && obj_map[k.second] != FusionSystem::npos)
            S.mult[{obj_map[k.first], obj_map[k.second]}] = v;
    return S;
}

inline std::vector<std::size_t> minimal_objects(const PointedFusionSystem& P) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < P.objects.size(); ++x) {
        bool minimal = true;
        for (std::size_t y = 0; y < P.objects.size(); ++y)
            if (y != x && P.m(y, x)) minimal = false;
        if (minimal) out.push_back(x);
    }
    return out;
}

inline bool ell_check(const PointedFusionSystem& P) {
    return static_cast<int>(minimal_objects(P).size()) == P.meta.ell;
}

enum class IsoMode { Multiposet, Category, FIdentical };

inline IsoMode parse_iso_mode(const std::string& s) {
    if (s == "multiposet") return IsoMode::Multiposet;
    if (s == "category") return IsoMode::Category;
    if (s == "F-identical" || s == "f-identical" || s == "fidentical") return IsoMode::FIdentical;
    throw InputError("unknown comparison mode '" + s + "'");
}

struct IsoResult {
    bool iso = false;
    std::vector<std::size_t> witness;  // object i of the first -> witness[i] of the second
    std::string reason;
};

namespace detail {

// |Hom_LP(x, y)|: morphisms phi: Q -> P with m(^phi x, y) != 0
inline std::vector<std::vector<int>> lp_hom_counts(const PointedFusionSystem& P) {
    const FusionSystem& F = P.fusion;
    std::size_t no = P.objects.size();
    std::vector<std::vector<int>> H(no, std::vector<int>(no, 0));
    for (std::size_t a = 0; a < F.morphisms.size(); ++a) {
        const Morphism& phi = F.morphisms[a];
        for (auto x : P.objects_over(phi.from)) {
            std::size_t fx = P.actions[a].at(x);
            for (auto y : P.objects_over(phi.to))
                if (P.m(fx, y)) ++H[x][y];
        }
    }
    return H;
}

using Invariant = std::function<bool(std::size_t, std::size_t)>;

inline bool backtrack(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& compatible,
                      const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& consistent,
                      std::vector<std::size_t>& sigma, std::vector<char>& used, std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j] || !compatible(i, j)) continue;
        sigma[i] = j;
        used[j] = 1;
        if (consistent(sigma, i) && backtrack(n, compatible, consistent, sigma, used, i + 1)) return true;
        used[j] = 0;
    }
    return false;
}

inline std::vector<int> sorted_row(const std::vector<std::vector<int>>& M, std::size_t i, bool column) {
    std::vector<int> r;
    for (std::size_t j = 0; j < M.size(); ++j) r.push_back(column ? M[j][i] : M[i][j]);
    std::sort(r.begin(), r.end());
    return r;
}

inline std::vector<std::vector<int>> mult_matrix(const PointedFusionSystem& P) {
    std::size_t n = P.objects.size();
    std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = P.m(i, j);
    return M;
}

}  // namespace detail

inline IsoResult iso_test(const PointedFusionSystem& A, const PointedFusionSystem& B, IsoMode mode) {
    IsoResult res;
    const std::size_t n = A.objects.size();
    if (n != B.objects.size()) {
        res.reason = "object counts differ (" + std::to_string(n) + " vs " + std::to_string(B.objects.size()) + ")";
        return res;
    }
    auto MA = detail::mult_matrix(A), MB = detail::mult_matrix(B);
    std::vector<std::vector<int>> HA, HB;
    if (mode == IsoMode::Category) {
        HA = detail::lp_hom_counts(A);
        HB = detail::lp_hom_counts(B);
    }
    if (mode == IsoMode::FIdentical) {
        const FusionSystem &FA = A.fusion, &FB = B.fusion;
        bool same = FA.defect_elems == FB.defect_elems && FA.subs.size() == FB.subs.size() &&
                    FA.morphisms.size() == FB.morphisms.size();
        if (same)
            for (std::size_t t = 0; t < FA.subs.size(); ++t) same = same && FA.subs[t] == FB.subs[t];
        if (same)
            for (auto& m : FA.morphisms) same = same && FB.find(m.from, m.to, m.images) != FusionSystem::npos;
        if (!same) throw InputError("F-identical comparison needs the same defect group and fusion system");
    }
    auto compatible = [&](std::size_t i, std::size_t j) {
        if (detail::sorted_row(MA, i, false) != detail::sorted_row(MB, j, false)) return false;
        if (detail::sorted_row(MA, i, true) != detail::sorted_row(MB, j, true)) return false;
        if (mode == IsoMode::Category) {
            if (detail::sorted_row(HA, i, false) != detail::sorted_row(HB, j, false)) return false;
            if (detail::sorted_row(HA, i, true) != detail::sorted_row(HB, j, true)) return false;
        }
        if (mode == IsoMode::FIdentical && A.objects[i].sub != B.objects[j].sub) return false;
        return true;
    };
    auto consistent = [&](const std::vector<std::size_t>& s, std::size_t i) {
        for (std::size_t a = 0; a <= i; ++a) {
            if (MA[a][i] != MB[s[a]][s[i]] || MA[i][a] != MB[s[i]][s[a]]) return false;
            if (mode == IsoMode::Category && (HA[a][i] != HB[s[a]][s[i]] || HA[i][a] != HB[s[i]][s[a]])) return false;
        }
        return true;
    };
    std::vector<std::size_t> sigma(n, 0);
    std::vector<char> used(n, 0);
    bool found = false;
    if (mode != IsoMode::FIdentical) {
        found = detail::backtrack(n, compatible, consistent, sigma, used, 0);
    } else {
        // point bijections must also commute with every morphism action
        auto commuting = [&](const std::vector<std::size_t>& s) {
            for (std::size_t a = 0; a < A.fusion.morphisms.size(); ++a) {
                const Morphism& m = A.fusion.morphisms[a];
                std::size_t b = B.fusion.find(m.from, m.to, m.images);
                for (auto& [x, y] : A.actions[a])
                    if (B.actions[b].at(s[x]) != s[y]) return false;
            }
            return true;
        };
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
            if (i == n) return commuting(sigma);
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j] || !compatible(i, j)) continue;
                sigma[i] = j;
                used[j] = 1;
                if (consistent(sigma, i) && rec(i + 1)) return true;
                used[j] = 0;
            }
            return false;
        };
        found = rec(0);
    }
    if (found) {
        res.iso = true;
        res.witness = sigma;
    } else {
        res.reason = "no structure-preserving bijection of objects";
    }
    return res;
}

// Isomorphism of fusion systems on possibly different defect groups:
// a group isomorphism α: D1 -> D2 with Hom2(αQ, αP) = α Hom1(Q,P) α^-1.
inline bool fusion_isomorphic(const FusionSystem& A, const FusionSystem& B, std::string* why = nullptr) {
    const std::size_t n = A.defect_elems.size();
    if (n != B.defect_elems.size() || A.subs.size() != B.subs.size() || A.morphisms.size() != B.morphisms.size()) {
        if (why) *why = "sizes differ";
        return false;
    }
    int ni = static_cast<int>(n);
    auto mulA = [&](int a, int b) { return A.defect_table[static_cast<std::size_t>(a) * n + b]; };
    auto mulB = [&](int a, int b) { return B.defect_table[static_cast<std::size_t>(a) * n + b]; };
    Group GA, GB;
    GA.n = GB.n = ni;
    GA.tab = A.defect_table;
    GB.tab = B.defect_table;
    GA.inv_.resize(n);
    GB.inv_.resize(n);
    for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b) {
            if (mulA(a, b) == 0) GA.inv_[a] = b;
            if (mulB(a, b) == 0) GB.inv_[a] = b;
        }
    auto gens = GA.generators();
    // local label of a G-label inside each defect group
    auto locA = [&](int g) { return static_cast<int>(std::lower_bound(A.defect_elems.begin(), A.defect_elems.end(), g) - A.defect_elems.begin()); };
    std::vector<int> img(gens.size(), 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
        if (t == gens.size()) {
            // extend to a map by BFS over words, checking well-definedness
            std::vector<int> alpha(n, -1);
            alpha[0] = 0;
            std::vector<int> queue{0};
            for (std::size_t h = 0; h < queue.size(); ++h)
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    int x = GA.mul(queue[h], gens[s]);
                    int y = GB.mul(alpha[queue[h]], img[s]);
                    if (alpha[x] < 0) {
                        alpha[x] = y;
                        queue.push_back(x);
                    } else if (alpha[x] != y) {
                        return false;
                    }
                }
            std::vector<char> hit(n, 0);
            for (int v : alpha) {
                if (v < 0 || hit[v]) return false;
                hit[v] = 1;
            }
            for (int a = 0; a < ni; ++a)
                for (int b = 0; b < ni; ++b)
                    if (alpha[GA.mul(a, b)] != GB.mul(alpha[a], alpha[b])) return false;
            auto mapG = [&](int g) { return B.defect_elems[alpha[locA(g)]]; };
            auto map_sub = [&](const Subgroup& S) {
                std::vector<int> v;
                for (int g : S.elems) v.push_back(mapG(g));
                std::sort(v.begin(), v.end());
                return B.sub_index(v);
            };
            std::vector<std::size_t> smap(A.subs.size());
            for (std::size_t q = 0; q < A.subs.size(); ++q) {
                smap[q] = map_sub(A.subs[q]);
                if (smap[q] == FusionSystem::npos) return false;
            }
            for (auto& m : A.morphisms) {
                // α m α^-1 on αQ, images aligned to the sorted elements of αQ
                const Subgroup& Qb = B.subs[smap[m.from]];
                std::vector<int> im(Qb.elems.size());
                for (std::size_t i = 0; i < A.subs[m.from].elems.size(); ++i) {
                    int x = A.subs[m.from].elems[i];
                    im[static_cast<std::size_t>(Qb.index_of(mapG(x)))] = mapG(m.images[i]);
                }
                if (B.find(smap[m.from], smap[m.to], im) == FusionSystem::npos) return false;
            }
            return true;
        }
        for (int y = 0; y < ni; ++y) {
            if (GB.order_of(y) != GA.order_of(gens[t])) continue;
            img[t] = y;
            if (rec(t + 1)) return true;
        }
        return false;
    };
    bool ok = rec(0);
    if (!ok && why) *why = "no group isomorphism carries one fusion system onto the other";
    return ok;
}

struct Prop44Report {
    int c = 0, m = 0, dimB = 0, ell = 0, defect = 1;
    bool c_le_dim = false, m_le_dim = false, dim_le_bound = false, ell_le_bound = false;
    bool all() const { return c_le_dim && m_le_dim && dim_le_bound && ell_le_bound; }
    std::string text() const {
        std::ostringstream os;
        os << "c=" << c << " m=" << m << " dimB=" << dimB << " ell=" << ell << " |D|=" << defect << "; "
           << "c<=dimB " << (c_le_dim ? "ok" : "FAIL") << ", m<=dimB " << (m_le_dim ? "ok" : "FAIL") << ", dimB<=c*m^2*ell^2="
           << c * m * m * ell * ell << " " << (dim_le_bound ? "ok" : "FAIL") << ", ell<=|D|^2/4+1 "
           << (ell_le_bound ? "ok" : "FAIL");
        return os.str();
    }
};

// Quantities: c = largest Cartan invariant, m = largest multiplicity,
// dim B = dimension of the source algebra, ell = number of simples.
inline Prop44Report prop44_check(const PointedFusionSystem& P) {
    Prop44Report r;
    for (auto& row : P.meta.cartan)
        for (int v : row) r.c = std::max(r.c, v);
    r.m = P.max_multiplicity();
    r.dimB = P.meta.dim_source_algebra;
    r.ell = P.meta.ell;
    r.defect = P.defect_order();
    r.c_le_dim = r.c <= r.dimB;
    r.m_le_dim = r.m <= r.dimB;
    r.dim_le_bound = r.dimB <= r.c * r.m * r.m * r.ell * r.ell;
    r.ell_le_bound = 4 * r.ell <= r.defect * r.defect + 4;
    return r;
}

}  // namespace pfs
