#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "catalog.hpp"
#include "pointed.hpp"

namespace pfs {

using ojson = nlohmann::ordered_json;

namespace detail {

// greedy generators of a subgroup of D, in G labels
inline std::vector<int> subgroup_gens(const FusionSystem& F, const Subgroup& S) {
    const std::size_t n = F.defect_elems.size();
    auto loc = [&](int g) {
        return static_cast<std::size_t>(std::lower_bound(F.defect_elems.begin(), F.defect_elems.end(), g) -
                                        F.defect_elems.begin());
    };
    std::vector<char> in(n, 0);
    in[0] = 1;
    std::vector<std::size_t> span{0};
    std::vector<int> gens;
    for (int g : S.elems) {
        std::size_t x = loc(g);
        if (in[x]) continue;
        gens.push_back(g);
        std::vector<std::size_t> gl;
        for (int h : gens) gl.push_back(loc(h));
        for (std::size_t i = 0; i < span.size(); ++i)
            for (auto s : gl) {
                std::size_t y = static_cast<std::size_t>(F.defect_table[span[i] * n + s]);
                if (!in[y]) {
                    in[y] = 1;
                    span.push_back(y);
                }
            }
    }
    return gens;
}

template <class T>
T get_field(const ojson& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("pfs.v1: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("pfs.v1: bad field '") + key + "': " + e.what());
    }
}

}  // namespace detail

// debugging dump: field, dimension, nonzero structure constants [i, j, m, c]
inline ojson algebra_to_json(const Algebra& A) {
    ojson j;
    j["field"] = {{"p", A.F->p}, {"k", A.F->k}, {"modulus", A.F->modulus}};
    j["dim"] = A.d;
    ojson sc = ojson::array();
    for (std::size_t a = 0; a < A.d; ++a)
        for (std::size_t b = 0; b < A.d; ++b) {
            const Elt* r = A.prod(a, b);
            for (std::size_t m = 0; m < A.d; ++m)
                if (r[m]) sc.push_back({a, b, m, r[m]});
        }
    j["structure_constants"] = sc;
    j["one"] = A.one;
    return j;
}

inline ojson to_json(const PointedFusionSystem& P) {
    const FusionSystem& F = P.fusion;
    ojson j;
    j["schema"] = "pfs.v1";
    ojson meta;
    meta["group"] = P.meta.group;
    meta["group_order"] = P.meta.group_order;
    meta["p"] = P.meta.p;
    meta["field"] = {{"p", P.meta.field.p}, {"k", P.meta.field.k}, {"modulus", P.meta.field.modulus}};
    meta["block_index"] = P.meta.block_index;
    meta["is_principal"] = P.meta.is_principal;
    meta["dim_block"] = P.meta.dim_block;
    meta["dim_source_algebra"] = P.meta.dim_source_algebra;
    meta["cartan"] = P.meta.cartan;
    meta["ell"] = P.meta.ell;
    meta["seed"] = P.meta.seed;
    meta["stable_part"] = P.meta.stable_part;
    j["meta"] = meta;
    j["defect_group"] = {{"elements", F.defect_elems}, {"table", F.defect_table}};
    ojson subs = ojson::array();
    for (std::size_t t = 0; t < F.subs.size(); ++t)
        subs.push_back({{"name", F.names[t]}, {"elements", F.subs[t].elems}, {"gens", detail::subgroup_gens(F, F.subs[t])}});
    j["subgroups"] = subs;
    ojson objs = ojson::array();
    for (auto& o : P.objects)
        objs.push_back({{"id", o.id},
                        {"subgroup", F.names[o.sub]},
                        {"subgroup_gens", detail::subgroup_gens(F, F.subs[o.sub])},
                        {"point_label", o.label}});
    j["objects"] = objs;
    ojson fus = ojson::array();
    for (std::size_t m = 0; m < F.morphisms.size(); ++m) {
        const Morphism& mo = F.morphisms[m];
        fus.push_back({{"id", m}, {"from", F.names[mo.from]}, {"to", F.names[mo.to]}, {"map_images", mo.images}, {"witness", mo.witness}});
    }
    j["fusion"] = fus;
    ojson acts = ojson::array();
    for (std::size_t m = 0; m < P.actions.size(); ++m) {
        ojson pm = ojson::array();
        for (auto& [x, y] : P.actions[m]) pm.push_back({P.objects[x].id, P.objects[y].id});
        acts.push_back({{"morphism_id", m}, {"point_map", pm}});
    }
    j["actions"] = acts;
    ojson mult = ojson::array();
    for (auto& [k, v] : P.mult) mult.push_back({P.objects[k.first].id, P.objects[k.second].id, v});
    j["multiplicities"] = mult;
    return j;
}

inline std::string to_json_string(const PointedFusionSystem& P) { return to_json(P).dump(2) + "\n"; }

// Parses pfs.v1 and re-validates the structural conditions.
inline PointedFusionSystem from_json(const ojson& j) {
    using detail::get_field;
    if (!j.is_object() || get_field<std::string>(j, "schema") != "pfs.v1") throw InputError("not a pfs.v1 document");
    PointedFusionSystem P;
    const ojson& meta = j.at("meta");
    P.meta.group = get_field<std::string>(meta, "group");
    P.meta.group_order = get_field<int>(meta, "group_order");
    P.meta.p = get_field<int>(meta, "p");
    const ojson& fld = meta.at("field");
    P.meta.field = {get_field<unsigned>(fld, "p"), get_field<unsigned>(fld, "k"), get_field<std::vector<unsigned>>(fld, "modulus")};
    P.meta.block_index = get_field<int>(meta, "block_index");
    P.meta.is_principal = get_field<bool>(meta, "is_principal");
    P.meta.dim_block = get_field<int>(meta, "dim_block");
    P.meta.dim_source_algebra = get_field<int>(meta, "dim_source_algebra");
    P.meta.cartan = get_field<std::vector<std::vector<int>>>(meta, "cartan");
    P.meta.ell = get_field<int>(meta, "ell");
    P.meta.seed = get_field<std::uint64_t>(meta, "seed");
    P.meta.stable_part = get_field<bool>(meta, "stable_part");

    FusionSystem& F = P.fusion;
    const ojson& dg = j.at("defect_group");
    F.defect_elems = get_field<std::vector<int>>(dg, "elements");
    F.defect_table = get_field<std::vector<int>>(dg, "table");
    std::size_t n = F.defect_elems.size();
    if (n == 0 || F.defect_table.size() != n * n || !std::is_sorted(F.defect_elems.begin(), F.defect_elems.end()))
        throw InputError("pfs.v1: malformed defect group");
    for (int v : F.defect_table)
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("pfs.v1: defect table entry out of range");
    std::map<std::string, std::size_t> sub_by_name;
    for (auto& s : j.at("subgroups")) {
        Subgroup S{get_field<std::vector<int>>(s, "elements")};
        if (!std::is_sorted(S.elems.begin(), S.elems.end())) throw InputError("pfs.v1: subgroup elements not sorted");
        for (int g : S.elems)
            if (!std::binary_search(F.defect_elems.begin(), F.defect_elems.end(), g))
                throw InputError("pfs.v1: subgroup leaves the defect group");
        std::string name = get_field<std::string>(s, "name");
        if (!sub_by_name.emplace(name, F.subs.size()).second) throw InputError("pfs.v1: duplicate subgroup " + name);
        F.subs.push_back(S);
        F.names.push_back(name);
    }
    auto sub_of = [&](const std::string& name) {
        auto it = sub_by_name.find(name);
        if (it == sub_by_name.end()) throw InputError("pfs.v1: unknown subgroup '" + name + "'");
        return it->second;
    };
    for (auto& o : j.at("objects"))
        P.objects.push_back({get_field<std::string>(o, "id"), sub_of(get_field<std::string>(o, "subgroup")),
                             get_field<std::size_t>(o, "point_label")});
    auto obj_of = [&](const std::string& id) {
        std::size_t i = P.object_index(id);
        if (i == FusionSystem::npos) throw InputError("pfs.v1: unknown object '" + id + "'");
        return i;
    };
    for (auto& m : j.at("fusion")) {
        Morphism mo{sub_of(get_field<std::string>(m, "from")), sub_of(get_field<std::string>(m, "to")),
                    get_field<std::vector<int>>(m, "map_images"), get_field<int>(m, "witness")};
        if (mo.images.size() != F.subs[mo.from].elems.size()) throw InputError("pfs.v1: map_images has the wrong length");
        for (int g : mo.images)
            if (!F.subs[mo.to].contains(g)) throw InputError("pfs.v1: morphism image outside its codomain");
        F.morphisms.push_back(mo);
    }
    F.reindex();
    P.actions.assign(F.morphisms.size(), {});
    for (auto& a : j.at("actions")) {
        std::size_t m = get_field<std::size_t>(a, "morphism_id");
        if (m >= F.morphisms.size()) throw InputError("pfs.v1: action for unknown morphism");
        for (auto& pr : a.at("point_map")) {
            auto v = pr.get<std::vector<std::string>>();
            if (v.size() != 2) throw InputError("pfs.v1: point_map entries are pairs");
            P.actions[m][obj_of(v[0])] = obj_of(v[1]);
        }
    }
    for (auto& t : j.at("multiplicities")) {
        if (!t.is_array() || t.size() != 3) throw InputError("pfs.v1: multiplicity entries are triples");
        int v = t[2].get<int>();
        if (v) P.mult[{obj_of(t[0].get<std::string>()), obj_of(t[1].get<std::string>())}] = v;
    }
    validate(P);
    return P;
}

inline PointedFusionSystem from_json_string(const std::string& s) {
    ojson j;
    try {
        j = ojson::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("pfs.v1: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline PointedFusionSystem load_pfs(const std::string& path) { return from_json_string(read_file(path)); }

// Hasse diagram of covering relations; multiplicity >= 2 gets a label and a heavier edge.
inline std::string to_dot(const PointedFusionSystem& P) {
    std::ostringstream os;
    os << "digraph pfs {\n  rankdir=BT;\n";
    for (auto& o : P.objects) os << "  \"" << o.id << "\";\n";
    const std::size_t n = P.objects.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y || !P.m(x, y)) continue;
            bool covers = true;
            for (std::size_t z = 0; z < n && covers; ++z)
                if (z != x && z != y && P.m(x, z) && P.m(z, y)) covers = false;
            if (!covers) continue;
            os << "  \"" << P.objects[x].id << "\" -> \"" << P.objects[y].id << "\"";
            int m = P.m(x, y);
            if (m >= 2) os << " [label=\"×" << m << "\", penwidth=2]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

// {"permutations": [[[1,2],[3,4]], [[1,2,3]]]} (cycles per generator) or {"table": [[...]]}.
inline Group group_from_json(const ojson& j, const std::string& fallback_name = "input") {
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : fallback_name;
    try {
        if (j.contains("permutations")) {
            auto gens = j.at("permutations").get<std::vector<std::vector<std::vector<int>>>>();
            int degree = 1;
            for (auto& g : gens)
                for (auto& c : g)
                    for (int x : c) degree = std::max(degree, x);
            if (j.contains("degree")) degree = j.at("degree").get<int>();
            std::vector<Perm> perms;
            for (auto& g : gens) perms.push_back(perm_from_cycles(degree, g));
            return Group::from_permutations(name, perms);
        }
        if (j.contains("table")) {
            auto t = j.at("table").get<std::vector<std::vector<int>>>();
            int n = static_cast<int>(t.size());
            std::vector<int> flat;
            for (auto& row : t) {
                if (static_cast<int>(row.size()) != n) throw InputError("group table must be square");
                flat.insert(flat.end(), row.begin(), row.end());
            }
            return Group::from_table(name, n, flat);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("group file: ") + e.what());
    }
    throw InputError("group file needs \"permutations\" or \"table\"");
}

inline Group load_group(const std::string& spec) {
    std::ifstream probe(spec);
    if (!probe) return catalog(spec);
    ojson j;
    try {
        j = ojson::parse(read_file(spec));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("group file " + spec + ": " + e.what());
    }
    return group_from_json(j, spec);
}

}  // namespace pfs
