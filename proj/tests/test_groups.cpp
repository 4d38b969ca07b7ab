#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pfs/catalog.hpp"

using namespace pfs;

namespace {

int label_of(const Group& G, const Perm& p) {
    for (int i = 0; i < G.n; ++i)
        if (G.perms[i] == p) return i;
    return -1;
}

// class of x by brute force
std::set<int> class_of(const Group& G, int x) {
    std::set<int> c;
    for (int g = 0; g < G.n; ++g) c.insert(G.mul(G.mul(g, x), G.inv(g)));
    return c;
}

}  // namespace

TEST(Groups, FromPermutationsOrders) {
    EXPECT_EQ(Group::from_permutations("A4", {perm_from_cycles(4, {{1, 2}, {3, 4}}), perm_from_cycles(4, {{1, 2, 3}})}).n, 12);
    EXPECT_EQ(Group::from_permutations("A5", {perm_from_cycles(5, {{1, 2, 3, 4, 5}}), perm_from_cycles(5, {{1, 2, 3}})}).n, 60);
    EXPECT_EQ(Group::from_permutations("1", {}).n, 1);
}

TEST(Groups, OrderBoundRejected) {
    auto s7 = std::vector<Perm>{perm_from_cycles(7, {{1, 2, 3, 4, 5, 6, 7}}), perm_from_cycles(7, {{1, 2}})};
    EXPECT_THROW(Group::from_permutations("S7", s7), InputError);
    EXPECT_EQ(Group::from_permutations("S6", {perm_from_cycles(6, {{1, 2, 3, 4, 5, 6}}), perm_from_cycles(6, {{1, 2}})}).n, 720);
}

TEST(Groups, LabellingIsDeterministicBfs) {
    Group A = catalog("A4"), B = catalog("A4");
    EXPECT_EQ(A.tab, B.tab);
    // the first labels are the identity then the generators
    EXPECT_EQ(A.perms[1], perm_from_cycles(4, {{1, 2}, {3, 4}}));
    EXPECT_EQ(A.perms[2], perm_from_cycles(4, {{1, 2, 3}}));
}

TEST(Groups, PermutationsRegenerateTable) {
    for (auto& name : sweep_catalog()) {
        Group G = catalog(name);
        if (G.perms.empty()) continue;
        for (int a = 0; a < G.n; ++a)
            for (int b = 0; b < G.n; ++b) {
                // compose(a, b) applies b first
                Perm ab(G.perms[a].size());
                for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = G.perms[a][G.perms[b][i]];
                ASSERT_EQ(ab, G.perms[G.mul(a, b)]) << name;
            }
    }
}

TEST(Groups, CatalogBasics) {
    Group V4 = catalog("V4");
    EXPECT_EQ(V4.n, 4);
    EXPECT_TRUE(V4.is_abelian());
    EXPECT_EQ(V4.exponent(), 2);
    Group Q8 = catalog("Q8");
    EXPECT_EQ(Q8.n, 8);
    int involutions = 0;
    for (int x = 0; x < 8; ++x) involutions += Q8.order_of(x) == 2;
    EXPECT_EQ(involutions, 1);
    Group H = catalog("C3_semi_Q8");
    EXPECT_EQ(H.n, 24);
    EXPECT_FALSE(H.is_abelian());
    bool normal_c3 = false;
    for (int x = 1; x < H.n; ++x)
        if (H.order_of(x) == 3) {
            Subgroup S = generate(H, {x});
            normal_c3 = normal_c3 || normalizer(H, S).order() == H.n;
        }
    EXPECT_TRUE(normal_c3);
    EXPECT_EQ(catalog("C2xA4").n, 24);
    EXPECT_EQ(catalog("D8").n, 8);
    EXPECT_EQ(catalog("S3").n, 6);
    EXPECT_EQ(catalog("SL23").n, 24);
    EXPECT_EQ(catalog("S4").n, 24);
    EXPECT_EQ(catalog("C1").n, 1);
}

TEST(Groups, CatalogErrors) {
    EXPECT_THROW(catalog("Foo"), InputError);
    EXPECT_THROW(catalog("A4x"), InputError);
    EXPECT_THROW(catalog("D7"), InputError);
    EXPECT_THROW(catalog("D4"), InputError);
    EXPECT_THROW(catalog("A5xA5"), InputError);
}

TEST(Groups, AssociativityAndClassEquation) {
    for (auto& name : sweep_catalog()) {
        Group G = catalog(name);
        EXPECT_TRUE(G.check_associative(G.n <= 24 ? -1 : 1000, 17)) << name;
        auto classes = conjugacy_classes(G);
        std::size_t covered = 0;
        for (auto& c : classes) covered += c.size();
        EXPECT_EQ(covered, static_cast<std::size_t>(G.n));
        for (int s = 0; s < G.n; ++s) {
            Subgroup C = centralizer(G, generate(G, {s}));
            EXPECT_EQ(static_cast<std::size_t>(C.order()) * class_of(G, s).size(), static_cast<std::size_t>(G.n)) << name;
        }
    }
}

TEST(Groups, FromTableValidates) {
    std::vector<int> bad{0, 1, 1, 1};
    EXPECT_THROW(Group::from_table("bad", 2, bad), InputError);
    std::vector<int> c2{0, 1, 1, 0};
    EXPECT_EQ(Group::from_table("C2", 2, c2).n, 2);
    // a loop that is not associative: identity and Latin square of order 5
    std::vector<int> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    EXPECT_THROW(Group::from_table("loop", 5, loop), InputError);
}

TEST(Groups, Centralizers) {
    Group A4 = catalog("A4");
    Subgroup S = sylow(A4, 2);
    EXPECT_EQ(S.order(), 4);
    EXPECT_EQ(centralizer(A4, S), S);
    EXPECT_EQ(centralizer(A4, Subgroup{{0}}).order(), 12);

    Group A5 = catalog("A5");
    int x = label_of(A5, perm_from_cycles(5, {{1, 2}, {3, 4}}));
    ASSERT_GE(x, 0);
    Subgroup C = centralizer(A5, generate(A5, {x}));
    EXPECT_EQ(C.order(), 4);
    int y = label_of(A5, perm_from_cycles(5, {{1, 3}, {2, 4}}));
    EXPECT_TRUE(C.contains(y));
    EXPECT_EQ(C, generate(A5, {x, y}));
}

TEST(Groups, SubgroupLattices) {
    Group V4 = catalog("V4");
    auto subs = subgroups_of(V4, whole(V4));
    EXPECT_EQ(subs.size(), 5u);
    for (auto& s : subs) EXPECT_EQ(V4.n % s.order(), 0);

    Group A5 = catalog("A5");
    std::vector<int> orders;
    for (auto& s : p_subgroups_up_to_conjugacy(A5, 2)) orders.push_back(s.order());
    EXPECT_EQ(orders, (std::vector<int>{1, 2, 4}));

    // brute force: every 2-subgroup of A5 is conjugate to exactly one representative
    auto reps = p_subgroups_up_to_conjugacy(A5, 2);
    Subgroup S = sylow(A5, 2);
    for (auto& r : reps) EXPECT_TRUE(is_subset(r, S));
    for (int g = 0; g < A5.n; ++g)
        for (auto& Q : subgroups_of(A5, conjugate(A5, g, S))) {
            int hits = 0;
            for (auto& r : reps) hits += are_conjugate(A5, Q, r);
            EXPECT_EQ(hits, 1);
        }
    auto c3 = p_subgroups_up_to_conjugacy(catalog("C3"), 2);
    ASSERT_EQ(c3.size(), 1u);
    EXPECT_EQ(c3[0].order(), 1);

    // D8 has 10 subgroups; Q8 has 6
    EXPECT_EQ(subgroups_of(catalog("D8"), whole(catalog("D8"))).size(), 10u);
    EXPECT_EQ(subgroups_of(catalog("Q8"), whole(catalog("Q8"))).size(), 6u);
}

TEST(Groups, SubgroupLatticeBound) {
    Group G = catalog("C2xC2xC2xC2xC2xC2xC2");
    EXPECT_THROW(subgroups_of(G, whole(G)), InputError);
}

TEST(Groups, Conjugators) {
    Group A4 = catalog("A4");
    EXPECT_EQ(conjugators(A4, whole(A4), whole(A4)).size(), 12u);
    int x = label_of(A4, perm_from_cycles(4, {{1, 2}, {3, 4}}));
    Subgroup Q = generate(A4, {x}), P = sylow(A4, 2);
    EXPECT_EQ(conjugators(A4, Q, P).size(), 12u);

    Group A5 = catalog("A5");
    int y = label_of(A5, perm_from_cycles(5, {{1, 2}, {3, 4}}));
    Subgroup X = generate(A5, {y});
    auto c = conjugators(A5, X, X);
    EXPECT_EQ(c.size(), static_cast<std::size_t>(normalizer(A5, X).order()));
    EXPECT_EQ(c.size(), 4u);

    for (auto& name : {"S4", "SL23", "A5"}) {
        Group G = catalog(name);
        Subgroup S = sylow(G, 2);
        for (auto& R : subgroups_of(G, S))
            for (int g : conjugators(G, R, S))
                for (int r : R.elems) EXPECT_TRUE(S.contains(G.conj(g, r)));
    }
    // empty iff no conjugate fits
    Group S3 = catalog("S3");
    EXPECT_TRUE(conjugators(S3, sylow(S3, 3), sylow(S3, 2)).empty());
}

TEST(Groups, SylowAndPParts) {
    for (auto& name : sweep_catalog()) {
        Group G = catalog(name);
        for (int p : {2, 3, 5}) {
            Subgroup S = sylow(G, p);
            EXPECT_EQ(S.order(), p_part(G.n, p)) << name << " p=" << p;
            EXPECT_TRUE(is_subgroup(G, S));
        }
    }
}

TEST(Groups, SemidirectRejectsNonAutomorphism) {
    Group N = catalog("C3"), H = catalog("C2");
    std::vector<std::vector<int>> bad{{0, 1, 2}, {0, 1, 1}};
    EXPECT_THROW(semidirect_product(N, H, bad, "bad"), InputError);
    std::vector<std::vector<int>> inv{{0, 1, 2}, {0, 2, 1}};
    Group S = semidirect_product(N, H, inv, "C3:C2");
    EXPECT_EQ(S.n, 6);
    EXPECT_FALSE(S.is_abelian());
}
