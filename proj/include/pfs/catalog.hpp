#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "group.hpp"

namespace pfs {

// cycles use points 1..degree
inline Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0);
    for (auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int a = c[i], b = c[(i + 1) % c.size()];
            if (a < 1 || a > degree || b < 1 || b > degree) throw InputError("cycle point out of range");
            p[a - 1] = b - 1;
        }
    }
    return p;
}

namespace detail {

inline bool parse_uint(const std::string& s, int& out) {
    if (s.empty() || s.size() > 4) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = std::stoi(s);
    return true;
}

inline Group cyclic(int n) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 1);
    std::vector<Perm> gens;
    if (n > 1) gens.push_back(perm_from_cycles(n, {c}));
    return Group::from_permutations("C" + std::to_string(n), gens);
}

// symmetries of the n-gon: rotation (1 .. n) and the reflection fixing 1
inline Group dihedral(int order) {
    int n = order / 2;
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 1);
    std::vector<std::vector<int>> s;
    for (int i = 2; i < n + 2 - i; ++i) s.push_back({i, n + 2 - i});
    return Group::from_permutations("D" + std::to_string(order),
                                    {perm_from_cycles(n, {r}), perm_from_cycles(n, s)});
}

// SL(2,3) on the 8 nonzero vectors of F_3^2; vector (x,y) is point 3x+y
inline Group sl23() {
    auto mat_perm = [](int a, int b, int c, int d) {
        Perm p(8);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                if (x == 0 && y == 0) continue;
                int u = (a * x + b * y) % 3, v = (c * x + d * y) % 3;
                p[3 * x + y - 1] = 3 * u + v - 1;
            }
        return p;
    };
    return Group::from_permutations("SL23", {mat_perm(1, 1, 0, 1), mat_perm(1, 0, 1, 1)});
}

inline Group base_entry(const std::string& name) {
    int n = 0;
    if (name == "V4") return Group::from_permutations("V4", {perm_from_cycles(4, {{1, 2}, {3, 4}}), perm_from_cycles(4, {{1, 3}, {2, 4}})});
    if (name == "S3") {
        Group g = dihedral(6);
        g.name = "S3";
        return g;
    }
    if (name == "Q8")
        return Group::from_permutations(
            "Q8", {perm_from_cycles(8, {{1, 2, 3, 4}, {5, 6, 7, 8}}), perm_from_cycles(8, {{1, 5, 3, 7}, {2, 8, 4, 6}})});
    if (name == "A4") return Group::from_permutations("A4", {perm_from_cycles(4, {{1, 2}, {3, 4}}), perm_from_cycles(4, {{1, 2, 3}})});
    if (name == "A5")
        return Group::from_permutations("A5", {perm_from_cycles(5, {{1, 2, 3, 4, 5}}), perm_from_cycles(5, {{1, 2, 3}})});
    if (name == "S4") return Group::from_permutations("S4", {perm_from_cycles(4, {{1, 2, 3, 4}}), perm_from_cycles(4, {{1, 2}})});
    if (name == "SL23") return sl23();
    if (name == "C3_semi_Q8") {
        // Q8 acts on C3 through Q8/<i> ≅ C2, the non-trivial coset inverting
        Group N = cyclic(3), H = base_entry("Q8");
        Subgroup kernel = generate(H, {1});  // label 1 is the generator i
        std::vector<std::vector<int>> act(H.n);
        for (int h = 0; h < H.n; ++h) {
            act[h].resize(N.n);
            for (int a = 0; a < N.n; ++a) act[h][a] = kernel.contains(h) ? a : N.inv(a);
        }
        return semidirect_product(N, H, act, "C3_semi_Q8");
    }
    if (name.size() > 1 && name[0] == 'C' && parse_uint(name.substr(1), n) && n >= 1) {
        if (n > 1000) throw InputError("cyclic group too large");
        return cyclic(n);
    }
    if (name.size() > 1 && name[0] == 'D' && parse_uint(name.substr(1), n)) {
        if (n < 6 || n % 2) throw InputError("dihedral group D2n needs even order >= 6, got " + name);
        return dihedral(n);
    }
    throw InputError("unknown group name '" + name + "'");
}

}  // namespace detail

// Catalog entries (generators as permutations, elements labelled in BFS order):
//   Cn          (1 2 ... n)
//   V4          (1 2)(3 4), (1 3)(2 4)
//   D2n         (1 2 ... n), reflection i ↦ n+2-i; S3 is D6
//   Q8          i = (1 2 3 4)(5 6 7 8), j = (1 5 3 7)(2 8 4 6)
//   A4          (1 2)(3 4), (1 2 3)
//   A5          (1 2 3 4 5), (1 2 3)
//   S4          (1 2 3 4), (1 2)
//   SL23        [[1,1],[0,1]], [[1,0],[1,1]] on the nonzero vectors of F_3^2
//   C3_semi_Q8  C3 ⋊ Q8, Q8 acting through its quotient by <i> (order 2) by
//               inversion
//   AxB         direct product of catalog entries, e.g. C2xA4
inline Group catalog(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    for (auto& s : parts)
        if (s.empty()) throw InputError("malformed group name '" + name + "'");
    Group G = detail::base_entry(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) G = direct_product(G, detail::base_entry(parts[i]));
    G.name = name;
    if (G.n > 1000) throw InputError("group order exceeds bound 1000");
    return G;
}

// Groups of order at most 60 used for catalog-wide sweeps.
inline std::vector<std::string> sweep_catalog() {
    return {"C2", "C3", "C4", "C5", "C6", "V4", "S3", "D8", "D10", "D12", "Q8", "A4",
            "C3xS3", "C2xA4", "S4", "SL23", "C3_semi_Q8", "A5"};
}

}  // namespace pfs
