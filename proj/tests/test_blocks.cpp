#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "pfs/pfs.hpp"

using namespace pfs;

namespace {

struct Fixture {
    GroupPtr G;
    FieldPtr F;
    GroupAlgebra FG;
    std::vector<Block> bl;
};

Fixture setup(const std::string& name, unsigned p, unsigned k) {
    Fixture s;
    s.G = std::make_shared<const Group>(catalog(name));
    s.F = make_field(p, k);
    s.FG = GroupAlgebra(s.G, s.F);
    s.bl = blocks(s.FG, 1);
    return s;
}

int label_of(const Group& G, const Perm& p) {
    for (int i = 0; i < G.n; ++i)
        if (G.perms[i] == p) return i;
    return -1;
}

std::vector<int> involutions(const Group& G) {
    std::vector<int> out;
    for (int g = 0; g < G.n; ++g)
        if (G.order_of(g) == 2) out.push_back(g);
    return out;
}

// random element of (FG)^P as a combination of P-orbit sums
Vec random_fixed(const GroupAlgebra& FG, const Subgroup& P, Rng& rng) {
    const Group& G = *FG.G;
    Vec v = FG.zero();
    std::vector<char> seen(G.n, 0);
    std::uniform_int_distribution<unsigned> d(0, FG.F->q - 1);
    for (int x = 0; x < G.n; ++x) {
        if (seen[x]) continue;
        Elt c = static_cast<Elt>(d(rng));
        for (int u : P.elems) {
            int y = G.conj(u, x);
            if (!seen[y]) {
                seen[y] = 1;
                v[y] = c;
            }
        }
    }
    return v;
}

}  // namespace

TEST(Blocks, GroupAlgebraDimensions) {
    EXPECT_EQ(setup("C1", 2, 1).FG.dim(), 1u);
    Fixture v = setup("V4", 2, 2);
    EXPECT_EQ(v.FG.dim(), 4u);
    Rng rng(2);
    Algebra A = v.FG.as_algebra();
    EXPECT_TRUE(A.check_associative(rng));
    for (int i = 0; i < 20; ++i) {
        Vec x = random_vec(*v.F, 4, rng), y = random_vec(*v.F, 4, rng);
        EXPECT_EQ(v.FG.mul(x, y), v.FG.mul(y, x));
        EXPECT_EQ(v.FG.mul(x, y), A.mul(x, y));
    }
    EXPECT_EQ(setup("A5", 2, 2).FG.dim(), 60u);
}

TEST(Blocks, BlockDecompositions) {
    Fixture c3 = setup("C3", 2, 2);
    ASSERT_EQ(c3.bl.size(), 3u);
    for (auto& b : c3.bl) EXPECT_EQ(b.dim, 1u);

    Fixture a4 = setup("A4", 2, 2);
    ASSERT_EQ(a4.bl.size(), 1u);
    EXPECT_EQ(a4.bl[0].dim, 12u);
    EXPECT_EQ(a4.bl[0].b, a4.FG.unit());

    Fixture a5 = setup("A5", 2, 2);
    ASSERT_EQ(a5.bl.size(), 2u);
    EXPECT_TRUE(a5.bl[0].is_principal);
    EXPECT_EQ(a5.bl[0].dim, 44u);
    EXPECT_EQ(a5.bl[1].dim, 16u);

    for (Fixture* s : {&c3, &a4, &a5}) {
        Vec sum = s->FG.zero();
        for (std::size_t i = 0; i < s->bl.size(); ++i) {
            const Vec& b = s->bl[i].b;
            EXPECT_TRUE(s->FG.is_central(b));
            EXPECT_EQ(s->FG.mul(b, b), b);
            EXPECT_EQ(s->bl[i].is_principal, s->FG.augmentation(b) == 1);
            for (std::size_t j = i + 1; j < s->bl.size(); ++j)
                EXPECT_TRUE(is_zero(s->FG.mul(b, s->bl[j].b)));
            sum = added(*s->F, sum, b);
        }
        EXPECT_EQ(sum, s->FG.unit());
    }
}

TEST(Blocks, BlocksAreSeedInvariant) {
    Fixture a5 = setup("A5", 2, 2);
    for (std::uint64_t seed : {2, 3, 4}) {
        auto other = blocks(a5.FG, seed);
        ASSERT_EQ(other.size(), a5.bl.size());
        for (std::size_t i = 0; i < other.size(); ++i) EXPECT_EQ(other[i].b, a5.bl[i].b);
    }
}

TEST(Blocks, BrauerMapExamples) {
    Fixture a4 = setup("A4", 2, 2);
    Subgroup P = sylow(*a4.G, 2);
    EXPECT_EQ(brauer_map(a4.FG, a4.FG.unit(), P), a4.FG.unit());
    Vec inv = a4.FG.sum_of(involutions(*a4.G));
    EXPECT_EQ(brauer_map(a4.FG, inv, P), inv);
    int c = -1;
    for (int g = 0; g < a4.G->n; ++g)
        if (a4.G->order_of(g) == 3) c = g;
    EXPECT_THROW(brauer_map(a4.FG, a4.FG.element(c), P), InputError);

    Fixture a5 = setup("A5", 2, 2);
    int x = label_of(*a5.G, perm_from_cycles(5, {{1, 2}, {3, 4}}));
    Subgroup X = generate(*a5.G, {x});
    auto all = involutions(*a5.G);
    ASSERT_EQ(all.size(), 15u);
    std::vector<int> expect;
    for (auto& pr : std::vector<Perm>{perm_from_cycles(5, {{1, 2}, {3, 4}}), perm_from_cycles(5, {{1, 3}, {2, 4}}),
                                      perm_from_cycles(5, {{1, 4}, {2, 3}})})
        expect.push_back(label_of(*a5.G, pr));
    EXPECT_EQ(brauer_map(a5.FG, a5.FG.sum_of(all), X), a5.FG.sum_of(expect));
}

TEST(Blocks, BrauerMapIsMultiplicative) {
    Rng rng(8);
    for (auto& name : {"A4", "A5", "S4"}) {
        Fixture s = setup(name, 2, 2);
        for (auto& P : p_subgroups_up_to_conjugacy(*s.G, 2)) {
            Subgroup C = centralizer(*s.G, P);
            for (int t = 0; t < 5; ++t) {
                Vec x = random_fixed(s.FG, P, rng), y = random_fixed(s.FG, P, rng);
                EXPECT_EQ(brauer_map(s.FG, s.FG.mul(x, y), P, C),
                          s.FG.mul(brauer_map(s.FG, x, P, C), brauer_map(s.FG, y, P, C)))
                    << name;
            }
        }
    }
}

TEST(Blocks, DefectGroups) {
    Fixture a4 = setup("A4", 2, 2);
    BlockContext c4(a4.G, a4.F, 2, a4.bl[0], 1);
    Subgroup D = defect_group(c4);
    EXPECT_EQ(D.order(), 4);
    EXPECT_EQ(D, sylow(*a4.G, 2));

    Fixture a5 = setup("A5", 2, 2);
    BlockContext c5(a5.G, a5.F, 2, a5.bl[1], 1);
    EXPECT_EQ(defect_group(c5).order(), 1);
    for (auto& P : p_subgroups_up_to_conjugacy(*a5.G, 2))
        if (P.order() > 1) {
            EXPECT_TRUE(is_zero(brauer_map(a5.FG, a5.bl[1].b, P)));
        }
    BlockContext c5p(a5.G, a5.F, 2, a5.bl[0], 1);
    EXPECT_EQ(defect_group(c5p).order(), 4);

    Fixture c3 = setup("C3", 2, 2);
    for (auto& b : c3.bl) {
        BlockContext cc(c3.G, c3.F, 2, b, 1);
        EXPECT_EQ(defect_group(cc).order(), 1);
    }
    Fixture s3 = setup("S3", 3, 1);
    BlockContext cs(s3.G, s3.F, 3, s3.bl[0], 1);
    EXPECT_EQ(defect_group(cs).order(), 3);
}

TEST(Blocks, LocalPoints) {
    Rng rng(5);
    Fixture v = setup("V4", 2, 2);
    BlockContext cv(v.G, v.F, 2, v.bl[0], 1);
    for (auto& P : subgroups_of(*v.G, whole(*v.G))) {
        auto pts = cv.points(P, rng);
        ASSERT_EQ(pts.size(), 1u);
        EXPECT_TRUE(pts[0].local);
    }

    Fixture a5 = setup("A5", 2, 2);
    BlockContext c5(a5.G, a5.F, 2, a5.bl[0], 1);
    auto p1 = c5.points(Subgroup{{0}}, rng);
    ASSERT_EQ(p1.size(), 3u);
    for (auto& pt : p1) EXPECT_TRUE(pt.local);
    Subgroup D = defect_group(c5);
    int locals = 0;
    for (auto& pt : c5.points(D, rng)) locals += pt.local;
    EXPECT_EQ(locals, 1);
}

TEST(Blocks, LocalityAndPairAreRepresentativeIndependent) {
    Fixture a5 = setup("A5", 2, 2);
    BlockContext c5(a5.G, a5.F, 2, a5.bl[0], 1);
    for (auto& P : p_subgroups_up_to_conjugacy(*a5.G, 2)) {
        std::map<std::size_t, bool> loc;
        std::map<std::size_t, std::vector<bool>> pair_of;  // Brauer-pair membership per point
        const auto& cb = c5.local(P).cblocks;
        for (std::uint64_t seed : {1, 2, 3}) {
            Rng rng(seed);
            for (auto& e : c5.decompose_in(P, a5.bl[0].b, rng)) {
                std::size_t lab = c5.label_in(P, e);
                Vec br = c5.brauer(e, P);
                bool l = !is_zero(br);
                auto [it, fresh] = loc.emplace(lab, l);
                if (!fresh) {
                    EXPECT_EQ(it->second, l);
                }
                std::vector<bool> in;
                for (auto& c : cb) in.push_back(l && c5.FG.mul(c.b, br) == br);
                auto [jt, first] = pair_of.emplace(lab, in);
                if (!first) {
                    EXPECT_EQ(jt->second, in);
                }
            }
        }
    }
}

TEST(Blocks, SourceData) {
    Rng rng(6);
    Fixture v = setup("V4", 2, 2);
    BlockContext cv(v.G, v.F, 2, v.bl[0], 1);
    SourceData sv = source_data(cv, defect_group(cv), rng);
    EXPECT_EQ(sv.subs.size(), 5u);
    for (auto& e : sv.eQvec) EXPECT_EQ(e, v.FG.unit());

    Fixture a4 = setup("A4", 2, 2);
    BlockContext c4(a4.G, a4.F, 2, a4.bl[0], 1);
    SourceData s4 = source_data(c4, defect_group(c4), rng);
    EXPECT_EQ(s4.i, a4.FG.unit());

    Fixture a5 = setup("A5", 2, 2);
    BlockContext c5(a5.G, a5.F, 2, a5.bl[0], 1);
    SourceData s5 = source_data(c5, defect_group(c5), rng);
    std::vector<Vec> rows;
    for (int g = 0; g < a5.G->n; ++g) rows.push_back(a5.FG.mul(a5.FG.mul(s5.i, a5.FG.element(g)), s5.i));
    EXPECT_EQ(rank(Matrix::from_rows(a5.F, rows, a5.FG.dim())), 44u);
    for (std::size_t t = 0; t < s5.subs.size(); ++t) {
        Vec br = c5.brauer(s5.i, s5.subs[t]);
        EXPECT_FALSE(is_zero(br));
        EXPECT_EQ(a5.FG.mul(s5.eQvec[t], br), br);
    }
}

TEST(Blocks, OvershadowedObjects) {
    Rng rng(7);
    struct Case {
        const char* name;
        std::size_t objects, minimal;
    };
    for (auto [name, count, minimal] : {Case{"V4", 5, 1}, Case{"A4", 7, 3}, Case{"A5", 7, 3}}) {
        Fixture s = setup(name, 2, 2);
        BlockContext ctx(s.G, s.F, 2, s.bl[0], 1);
        SourceData sd = source_data(ctx, defect_group(ctx), rng);
        auto objs = overshadowed_objects(ctx, sd, rng);
        EXPECT_EQ(objs.size(), count) << name;
        std::size_t triv = 0;
        for (auto& o : objs) triv += sd.subs[o.sub].order() == 1;
        EXPECT_EQ(triv, minimal) << name;
        // the number of minimal objects equals the number of simple modules of the block
        SubAlgebra Bfix = fixed_block_algebra(s.FG, s.bl[0].b, Subgroup{{0}});
        EXPECT_EQ(analyze(Bfix.alg, 3).ell(), minimal) << name;
    }
}

TEST(Blocks, RelativeMultiplicities) {
    Rng rng(9);
    Fixture a4 = setup("A4", 2, 2);
    BlockContext c4(a4.G, a4.F, 2, a4.bl[0], 1);
    SourceData s4 = source_data(c4, defect_group(c4), rng);
    auto o4 = overshadowed_objects(c4, s4, rng);
    for (auto& y : o4)
        EXPECT_EQ(relative_multiplicity(c4, s4.subs[y.sub], y.label, s4.subs[y.sub], y.rep, rng), 1);
    for (auto& x : o4) {
        if (s4.subs[x.sub].order() != 1) continue;
        for (auto& y : o4)
            if (s4.subs[y.sub].order() == 2) {
                EXPECT_EQ(relative_multiplicity(c4, s4.subs[x.sub], x.label, s4.subs[y.sub], y.rep, rng), 1);
            }
    }

    Fixture a5 = setup("A5", 2, 2);
    BlockContext c5(a5.G, a5.F, 2, a5.bl[0], 1);
    SourceData s5 = source_data(c5, defect_group(c5), rng);
    auto o5 = overshadowed_objects(c5, s5, rng);
    const PointedGroup* D1 = nullptr;
    std::vector<const PointedGroup*> ones, twos;
    for (auto& o : o5) {
        int n = s5.subs[o.sub].order();
        if (n == 4) D1 = &o;
        if (n == 1) ones.push_back(&o);
        if (n == 2) twos.push_back(&o);
    }
    ASSERT_TRUE(D1);
    ASSERT_EQ(ones.size(), 3u);
    ASSERT_EQ(twos.size(), 3u);
    // label 0 is the trivial module
    std::vector<int> toD, toX;
    for (auto* x : ones) {
        toD.push_back(relative_multiplicity(c5, s5.subs[x->sub], x->label, s5.D, D1->rep, rng));
        toX.push_back(relative_multiplicity(c5, s5.subs[x->sub], x->label, s5.subs[twos[0]->sub], twos[0]->rep, rng));
    }
    EXPECT_EQ(ones[0]->label, 0u);
    EXPECT_EQ(toD, (std::vector<int>{1, 2, 2}));
    EXPECT_EQ(toX, (std::vector<int>{1, 0, 0}));

    // Q not inside P
    EXPECT_EQ(relative_multiplicity(c5, s5.subs[twos[0]->sub], twos[0]->label, s5.subs[twos[1]->sub],
                                    twos[1]->rep, rng),
              0);
}
