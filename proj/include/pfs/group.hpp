#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pfs {

using Perm = std::vector<int>;  // 0-based images

// composition a∘b: apply b first
inline Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

// Cayley-table group; label 0 is the identity.
class Group {
public:
    std::string name;
    int n = 1;
    std::vector<int> tab{0};
    std::vector<int> inv_{0};
    std::vector<Perm> perms;      // permutation of each element, when known
    std::vector<Perm> perm_gens;  // generator provenance, when known

    int order() const { return n; }
    int mul(int a, int b) const { return tab[static_cast<std::size_t>(a) * n + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

    int order_of(int x) const {
        int k = 1, y = x;
        while (y != 0) {
            y = mul(y, x);
            ++k;
        }
        return k;
    }
    int power(int x, long long e) const {
        int r = 0;
        for (long long i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
    int exponent() const {
        int e = 1;
        for (int x = 0; x < n; ++x) e = std::lcm(e, order_of(x));
        return e;
    }
    bool is_abelian() const {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    // Greedy generating set: least label outside the span so far.
    std::vector<int> generators() const {
        std::vector<int> gens;
        std::vector<char> in(n, 0);
        in[0] = 1;
        std::vector<int> span{0};
        for (int x = 1; x < n; ++x) {
            if (in[x]) continue;
            gens.push_back(x);
            // close span under right multiplication by all generators
            std::deque<int> queue(span.begin(), span.end());
            while (!queue.empty()) {
                int y = queue.front();
                queue.pop_front();
                for (int s : gens) {
                    int z = mul(y, s);
                    if (!in[z]) {
                        in[z] = 1;
                        span.push_back(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        return gens;
    }

    static Group from_table(std::string name, int n, std::vector<int> tab) {
        if (n < 1 || tab.size() != static_cast<std::size_t>(n) * n)
            throw InputError("multiplication table has wrong size");
        Group G;
        G.name = std::move(name);
        G.n = n;
        G.tab = std::move(tab);
        for (int v : G.tab)
            if (v < 0 || v >= n) throw InputError("table entry out of range");
        for (int a = 0; a < n; ++a)
            if (G.mul(0, a) != a || G.mul(a, 0) != a) throw InputError("label 0 is not the identity");
        G.inv_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (G.mul(a, b) == 0) {
                    if (G.mul(b, a) != 0) throw InputError("inverses are not two-sided");
                    G.inv_[a] = b;
                }
        for (int a = 0; a < n; ++a)
            if (G.inv_[a] < 0) throw InputError("element without inverse");
        if (!G.check_associative(n <= 64 ? -1 : 20000, 1)) throw InputError("table is not associative");
        return G;
    }

    // samples < 0 means exhaustive
    bool check_associative(long samples, unsigned long long seed) const {
        if (samples < 0) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    int ab = mul(a, b);
                    for (int c = 0; c < n; ++c)
                        if (mul(ab, c) != mul(a, mul(b, c))) return false;
                }
            return true;
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> d(0, n - 1);
        for (long s = 0; s < samples; ++s) {
            int a = d(rng), b = d(rng), c = d(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        }
        return true;
    }

    // Closure of permutation generators. Elements are labelled in BFS
    // order: the queue is processed front to back and each element x is
    // extended by x∘s for the generators s in the given order.
    static Group from_permutations(std::string name, std::vector<Perm> gens, int bound = 1000) {
        std::size_t deg = 0;
        for (auto& g : gens) deg = std::max(deg, g.size());
        for (auto& g : gens) {
            std::size_t old = g.size();
            g.resize(deg);
            for (std::size_t i = old; i < deg; ++i) g[i] = static_cast<int>(i);
            std::vector<char> seen(deg, 0);
            for (int v : g) {
                if (v < 0 || static_cast<std::size_t>(v) >= deg || seen[v])
                    throw InputError("generator is not a permutation");
                seen[v] = 1;
            }
        }
        Perm id(deg);
        std::iota(id.begin(), id.end(), 0);
        std::map<Perm, int> label;
        std::vector<Perm> elems{id};
        label[id] = 0;
        for (std::size_t head = 0; head < elems.size(); ++head) {
            for (auto& s : gens) {
                Perm y = compose(elems[head], s);
                if (label.count(y)) continue;
                if (static_cast<int>(elems.size()) >= bound)
                    throw InputError("group order exceeds bound " + std::to_string(bound));
                label[y] = static_cast<int>(elems.size());
                elems.push_back(std::move(y));
            }
        }
        int n = static_cast<int>(elems.size());
        std::vector<int> tab(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) tab[static_cast<std::size_t>(a) * n + b] = label.at(compose(elems[a], elems[b]));
        Group G;
        G.name = std::move(name);
        G.n = n;
        G.tab = std::move(tab);
        G.inv_.assign(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (G.mul(a, b) == 0) G.inv_[a] = b;
        G.perms = std::move(elems);
        G.perm_gens = std::move(gens);
        return G;
    }
};

using GroupPtr = std::shared_ptr<const Group>;

// Sorted element list containing 0.
struct Subgroup {
    std::vector<int> elems{0};

    int order() const { return static_cast<int>(elems.size()); }
    bool contains(int x) const { return std::binary_search(elems.begin(), elems.end(), x); }
    bool operator==(const Subgroup& o) const { return elems == o.elems; }
    bool operator<(const Subgroup& o) const {
        if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
        return elems < o.elems;
    }
    // local label of a member
    int index_of(int x) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), x);
        if (it == elems.end() || *it != x) return -1;
        return static_cast<int>(it - elems.begin());
    }
};

inline bool is_subset(const Subgroup& a, const Subgroup& b) {
    return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
}

inline Subgroup whole(const Group& G) {
    Subgroup S;
    S.elems.resize(G.n);
    std::iota(S.elems.begin(), S.elems.end(), 0);
    return S;
}

inline Subgroup generate(const Group& G, const std::vector<int>& gens) {
    std::vector<char> in(G.n, 0);
    in[0] = 1;
    std::vector<int> el{0};
    for (std::size_t h = 0; h < el.size(); ++h)
        for (int s : gens) {
            int y = G.mul(el[h], s);
            if (!in[y]) {
                in[y] = 1;
                el.push_back(y);
            }
        }
    std::sort(el.begin(), el.end());
    return Subgroup{el};
}

inline bool is_subgroup(const Group& G, const Subgroup& S) {
    if (S.elems.empty() || S.elems[0] != 0) return false;
    for (int a : S.elems) {
        if (!S.contains(G.inv(a))) return false;
        for (int b : S.elems)
            if (!S.contains(G.mul(a, b))) return false;
    }
    return true;
}

inline Subgroup conjugate(const Group& G, int g, const Subgroup& S) {
    Subgroup R;
    R.elems.clear();
    for (int x : S.elems) R.elems.push_back(G.conj(g, x));
    std::sort(R.elems.begin(), R.elems.end());
    return R;
}

inline Subgroup centralizer(const Group& G, const Subgroup& S) {
    Subgroup C;
    C.elems.clear();
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (int x : S.elems)
            if (G.mul(g, x) != G.mul(x, g)) {
                ok = false;
                break;
            }
        if (ok) C.elems.push_back(g);
    }
    return C;
}

inline Subgroup normalizer(const Group& G, const Subgroup& S) {
    Subgroup N;
    N.elems.clear();
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (int x : S.elems)
            if (!S.contains(G.conj(g, x))) {
                ok = false;
                break;
            }
        if (ok) N.elems.push_back(g);
    }
    return N;
}

// all g with g Q g^-1 ⊆ P, in label order
inline std::vector<int> conjugators(const Group& G, const Subgroup& Q, const Subgroup& P) {
    std::vector<int> out;
    if (Q.order() > P.order()) return out;
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (int x : Q.elems)
            if (!P.contains(G.conj(g, x))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return out;
}

inline bool conjugate_into(const Group& G, const Subgroup& Q, const Subgroup& P) {
    if (P.order() % Q.order() != 0) return false;
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (int x : Q.elems)
            if (!P.contains(G.conj(g, x))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

inline bool are_conjugate(const Group& G, const Subgroup& A, const Subgroup& B) {
    return A.order() == B.order() && conjugate_into(G, A, B);
}

// Classes listed by least element; each class sorted.
inline std::vector<std::vector<int>> conjugacy_classes(const Group& G) {
    std::vector<int> cls(G.n, -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < G.n; ++x) {
        if (cls[x] >= 0) continue;
        std::set<int> c;
        for (int g = 0; g < G.n; ++g) c.insert(G.conj(g, x));
        for (int y : c) cls[y] = static_cast<int>(out.size());
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

inline int p_part(int n, int p) {
    int r = 1;
    while (n % p == 0) {
        n /= p;
        r *= p;
    }
    return r;
}

inline bool is_p_element(const Group& G, int x, int p) {
    int o = G.order_of(x);
    return p_part(o, p) == o;
}

// A Sylow p-subgroup grown one step at a time: the least g in N(P)\P
// with g^p ∈ P extends P to a p-group of order p|P|.
inline Subgroup sylow(const Group& G, int p) {
    int target = p_part(G.n, p);
    Subgroup P;
    while (P.order() < target) {
        Subgroup N = normalizer(G, P);
        int pick = -1;
        for (int g : N.elems) {
            if (P.contains(g)) continue;
            if (P.contains(G.power(g, p))) {
                pick = g;
                break;
            }
        }
        check_internal(pick >= 0, "Sylow growth stalled");
        std::vector<int> gens(P.elems.begin() + 1, P.elems.end());
        gens.push_back(pick);
        P = generate(G, gens);
    }
    return P;
}

// Complete subgroup lattice of S, sorted by (order, elements).
inline std::vector<Subgroup> subgroups_of(const Group& G, const Subgroup& S, int bound = 64) {
    if (S.order() > bound)
        throw InputError("subgroup lattice requested for a group of order " + std::to_string(S.order()) +
                         " > " + std::to_string(bound));
    std::set<Subgroup> found;
    std::vector<Subgroup> todo{Subgroup{}};
    found.insert(Subgroup{});
    while (!todo.empty()) {
        Subgroup H = todo.back();
        todo.pop_back();
        for (int x : S.elems) {
            if (H.contains(x)) continue;
            std::vector<int> gens(H.elems.begin() + 1, H.elems.end());
            gens.push_back(x);
            Subgroup K = generate(G, gens);
            if (found.insert(K).second) todo.push_back(K);
        }
    }
    return std::vector<Subgroup>(found.begin(), found.end());
}

// Representatives of the G-classes of p-subgroups, all inside sylow(G,p).
inline std::vector<Subgroup> p_subgroups_up_to_conjugacy(const Group& G, int p) {
    if (G.n % p != 0) return {Subgroup{}};
    Subgroup S = sylow(G, p);
    std::vector<Subgroup> reps;
    for (auto& H : subgroups_of(G, S)) {
        bool dup = false;
        for (auto& R : reps)
            if (are_conjugate(G, H, R)) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(H);
    }
    return reps;
}

// Subgroup as a group in its own right; local label i is S.elems[i].
inline Group subgroup_group(const Group& G, const Subgroup& S, std::string name = "") {
    int m = S.order();
    std::vector<int> tab(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int k = S.index_of(G.mul(S.elems[i], S.elems[j]));
            if (k < 0) throw InputError("not a subgroup");
            tab[static_cast<std::size_t>(i) * m + j] = k;
        }
    Group H;
    H.name = std::move(name);
    H.n = m;
    H.tab = std::move(tab);
    H.inv_.resize(m);
    for (int i = 0; i < m; ++i) H.inv_[i] = S.index_of(G.inv(S.elems[i]));
    return H;
}

// x ↦ g x g^-1 on domain, landing in codomain
struct GroupMap {
    Subgroup domain, codomain;
    int g = 0;
};

inline std::vector<int> map_images(const Group& G, const GroupMap& m) {
    std::vector<int> out;
    for (int x : m.domain.elems) out.push_back(G.conj(m.g, x));
    return out;
}

// Labels (a,b) ↦ a|B| + b.
inline Group direct_product(const Group& A, const Group& B, std::string name = "") {
    int n = A.n * B.n;
    std::vector<int> tab(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = A.mul(x / B.n, y / B.n), b = B.mul(x % B.n, y % B.n);
            tab[static_cast<std::size_t>(x) * n + y] = a * B.n + b;
        }
    if (name.empty()) name = A.name + "x" + B.name;
    Group G;
    G.name = std::move(name);
    G.n = n;
    G.tab = std::move(tab);
    G.inv_.resize(n);
    for (int x = 0; x < n; ++x) G.inv_[x] = A.inv(x / B.n) * B.n + B.inv(x % B.n);
    return G;
}

// N ⋊ H with (n1,h1)(n2,h2) = (n1·act[h1](n2), h1h2); label n|H| + h.
inline Group semidirect_product(const Group& N, const Group& H, const std::vector<std::vector<int>>& act,
                                std::string name) {
    if (static_cast<int>(act.size()) != H.n) throw InputError("action must list one automorphism per element");
    for (int h = 0; h < H.n; ++h) {
        if (static_cast<int>(act[h].size()) != N.n) throw InputError("automorphism has wrong length");
        for (int a = 0; a < N.n; ++a)
            for (int b = 0; b < N.n; ++b)
                if (act[h][N.mul(a, b)] != N.mul(act[h][a], act[h][b]))
                    throw InputError("action is not by automorphisms");
        for (int h2 = 0; h2 < H.n; ++h2)
            for (int a = 0; a < N.n; ++a)
                if (act[H.mul(h, h2)][a] != act[h][act[h2][a]]) throw InputError("action is not a homomorphism");
    }
    int n = N.n * H.n;
    std::vector<int> tab(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int n1 = x / H.n, h1 = x % H.n, n2 = y / H.n, h2 = y % H.n;
            tab[static_cast<std::size_t>(x) * n + y] = N.mul(n1, act[h1][n2]) * H.n + H.mul(h1, h2);
        }
    return Group::from_table(std::move(name), n, std::move(tab));
}

}  // namespace pfs
