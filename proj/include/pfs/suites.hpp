#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bimods.hpp"
#include "catalog.hpp"
#include "serialize.hpp"

namespace pfs {

// Every block of FG built over the least degree that splits everything in play.
struct GroupRun {
    std::string group;
    int p = 2;
    unsigned k = 1;
    BlockSet bs;
    std::vector<BuildResult> results;
};

inline GroupRun run_group(const Group& G, int p, std::uint64_t seed, unsigned k = 0, const BuildOptions& opt = {}) {
    unsigned lo = k ? k : 1, hi = k ? k : default_field_degree(G, p);
    for (unsigned d = lo; d <= hi; ++d) {
        try {
            GroupRun run;
            run.group = G.name;
            run.p = p;
            run.k = d;
            run.bs = block_set(G, p, d, seed);
            for (std::size_t b = 0; b < run.bs.blocks.size(); ++b)
                run.results.push_back(build_full(run.bs, p, static_cast<int>(b), seed, opt));
            return run;
        } catch (const SplitFieldError&) {
            if (d == hi) throw;
        }
    }
    throw InternalInconsistency("no field degree tried");
}

struct SuiteReport {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;

    void note(const std::string& s) { lines.push_back(s); }
    void fail(const std::string& s) {
        pass = false;
        lines.push_back("FAIL: " + s);
    }
    std::string text() const {
        std::ostringstream os;
        for (auto& l : lines) os << "  " << l << "\n";
        os << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
        return os.str();
    }
};

// Groups and primes swept by the catalog-wide suites.
struct SweepCase {
    std::string group;
    int p;
};

inline std::vector<SweepCase> sweep_cases(int max_order = 60) {
    std::vector<SweepCase> out;
    for (auto& name : sweep_catalog()) {
        Group G = catalog(name);
        if (G.n > max_order) continue;
        for (int p : {2, 3}) out.push_back({name, p});
    }
    return out;
}

class SweepCache {
public:
    explicit SweepCache(std::uint64_t seed) : seed_(seed) {}
    const GroupRun& get(const std::string& group, int p) {
        auto key = std::make_pair(group, p);
        auto it = runs_.find(key);
        if (it != runs_.end()) return it->second;
        return runs_.emplace(key, run_group(catalog(group), p, seed_)).first->second;
    }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::map<std::pair<std::string, int>, GroupRun> runs_;
};

// Covering edges of the multiplicity order by object id.
inline std::map<std::pair<std::string, std::string>, int> covering_edges(const PointedFusionSystem& P) {
    std::map<std::pair<std::string, std::string>, int> out;
    const std::size_t n = P.objects.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y || !P.m(x, y)) continue;
            bool covers = true;
            for (std::size_t z = 0; z < n; ++z)
                if (z != x && z != y && P.m(x, z) && P.m(z, y)) covers = false;
            if (covers) out[{P.objects[x].id, P.objects[y].id}] = P.m(x, y);
        }
    return out;
}

struct GoldenDiagram {
    std::string group;
    std::vector<std::string> objects;
    std::map<std::pair<std::string, std::string>, int> edges;
};

// The three Klein-four-defect diagrams: V4 itself, A4 and A5 principal blocks at p = 2.
inline std::vector<GoldenDiagram> klein4_golden() {
    std::vector<std::string> R{"X_1", "Y_1", "Z_1"};
    GoldenDiagram v4{"V4", {"1_1", "X_1", "Y_1", "Z_1", "D_1"}, {}};
    for (auto& r : R) {
        v4.edges[{"1_1", r}] = 1;
        v4.edges[{r, "D_1"}] = 1;
    }
    GoldenDiagram a4{"A4", {"1_1", "1_2", "1_3", "X_1", "Y_1", "Z_1", "D_1"}, {}};
    for (auto& r : R) {
        for (auto& b : {"1_1", "1_2", "1_3"}) a4.edges[{b, r}] = 1;
        a4.edges[{r, "D_1"}] = 1;
    }
    GoldenDiagram a5{"A5", a4.objects, {}};
    for (auto& r : R) {
        a5.edges[{"1_1", r}] = 1;
        a5.edges[{r, "D_1"}] = 1;
    }
    a5.edges[{"1_2", "D_1"}] = 2;
    a5.edges[{"1_3", "D_1"}] = 2;
    return {v4, a4, a5};
}

inline std::string describe_edges(const std::map<std::pair<std::string, std::string>, int>& e) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : e) {
        os << (first ? "" : " ") << k.first << "<" << k.second;
        if (v != 1) os << "x" << v;
        first = false;
    }
    return os.str();
}

inline const PointedFusionSystem& principal_of(const GroupRun& run) {
    for (auto& r : run.results)
        if (r.pfs.meta.is_principal) return r.pfs;
    throw InternalInconsistency("no principal block");
}

inline SuiteReport suite_klein4(SweepCache& cache) {
    SuiteReport rep{"klein4", true, {}};
    for (auto& g : klein4_golden()) {
        const auto& P = principal_of(cache.get(g.group, 2));
        std::vector<std::string> ids;
        for (auto& o : P.objects) ids.push_back(o.id);
        auto edges = covering_edges(P);
        bool ok = ids == g.objects && edges == g.edges;
        if (g.group == "V4")
            for (auto& [k, v] : P.mult) ok = ok && v == 1;
        if (ok)
            rep.note(g.group + ": " + std::to_string(ids.size()) + " objects, " + describe_edges(edges));
        else
            rep.fail(g.group + ": expected " + describe_edges(g.edges) + "; got " + describe_edges(edges));
    }
    return rep;
}

// Runs f over every block of the sweep.
inline void for_each_block(SweepCache& cache, int max_order,
                           const std::function<void(const GroupRun&, const BuildResult&)>& f) {
    for (auto& c : sweep_cases(max_order)) {
        const GroupRun& run = cache.get(c.group, c.p);
        for (auto& r : run.results) f(run, r);
    }
}

inline std::string block_tag(const GroupRun& run, const BuildResult& r) {
    return run.group + " p=" + std::to_string(run.p) + " block " + std::to_string(r.pfs.meta.block_index);
}

inline SuiteReport suite_axioms(SweepCache& cache, int max_order = 60) {
    SuiteReport rep{"axioms", true, {}};
    int n = 0;
    for_each_block(cache, max_order, [&](const GroupRun& run, const BuildResult& r) {
        try {
            validate(r.pfs);
            validate(stable_part(r.pfs));
            validate(from_json_string(to_json_string(r.pfs)));
            ++n;
        } catch (const AxiomViolation& e) {
            rep.fail(block_tag(run, r) + ": " + e.what() + " at " + e.witness);
        }
    });
    rep.note(std::to_string(n) + " blocks satisfy all conditions and the chain inequality");
    return rep;
}

inline SuiteReport suite_bounds(SweepCache& cache, int max_order = 60) {
    SuiteReport rep{"bounds", true, {}};
    for_each_block(cache, max_order, [&](const GroupRun& run, const BuildResult& r) {
        auto b = prop44_check(r.pfs);
        if (b.all())
            rep.note(block_tag(run, r) + ": " + b.text());
        else
            rep.fail(block_tag(run, r) + ": " + b.text());
    });
    return rep;
}

inline SuiteReport suite_ell(SweepCache& cache, int max_order = 60) {
    SuiteReport rep{"ell", true, {}};
    int n = 0;
    for_each_block(cache, max_order, [&](const GroupRun& run, const BuildResult& r) {
        std::size_t mins = minimal_objects(r.pfs).size();
        if (static_cast<int>(mins) == r.pfs.meta.ell)
            ++n;
        else
            rep.fail(block_tag(run, r) + ": " + std::to_string(mins) + " minimal objects, ell = " +
                     std::to_string(r.pfs.meta.ell));
    });
    rep.note(std::to_string(n) + " blocks with #minimal objects = #simple modules");
    return rep;
}

// Bimodule multiplicities against idempotent multiplicities for every pair of objects.
inline bool crosscheck_block(const GroupRun& run, const BuildResult& r, SuiteReport& rep, Rng& rng) {
    GroupAlgebra FG(run.bs.G, run.bs.F);
    const auto& P = r.pfs;
    bool ok = true;
    int pairs = 0;
    for (std::size_t x = 0; x < P.objects.size(); ++x)
        for (std::size_t y = 0; y < P.objects.size(); ++y) {
            const Subgroup& Q = P.fusion.subs[P.objects[x].sub];
            const Subgroup& R = P.fusion.subs[P.objects[y].sub];
            int mb = multiplicity_via_bimodules(FG, Q, r.objects[x].rep, R, r.objects[y].rep, rng);
            ++pairs;
            if (mb != P.m(x, y)) {
                ok = false;
                rep.fail(block_tag(run, r) + ": m(" + P.objects[x].id + "," + P.objects[y].id + ") = " +
                         std::to_string(P.m(x, y)) + " but bimodules give " + std::to_string(mb));
            }
        }
    if (ok) rep.note(block_tag(run, r) + ": " + std::to_string(pairs) + " pairs agree");
    return ok;
}

// Each point of each p-subgroup representative: local iff Dia(P_μ)(ΔP) ≠ 0.
inline bool locality_block(const GroupRun& run, const BuildResult& r, SuiteReport& rep, std::uint64_t seed) {
    const Group& G = *run.bs.G;
    BlockContext ctx(run.bs.G, run.bs.F, run.p, run.bs.blocks[static_cast<std::size_t>(r.pfs.meta.block_index)], seed);
    Rng rng(seed);
    bool ok = true;
    int n = 0;
    for (auto& S : p_subgroups_up_to_conjugacy(G, run.p))
        for (auto& pt : ctx.points(S, rng)) {
            auto bq = brauer_construction(dia_module(ctx.FG, S, pt.rep), G, S, S);
            ++n;
            if ((bq.dim > 0) != pt.local) {
                ok = false;
                rep.fail(block_tag(run, r) + ": point " + std::to_string(pt.label) + " of a subgroup of order " +
                         std::to_string(S.order()) + " local=" + (pt.local ? "yes" : "no") +
                         " but dim M(ΔP) = " + std::to_string(bq.dim));
            }
        }
    if (ok) rep.note(block_tag(run, r) + ": " + std::to_string(n) + " points agree");
    return ok;
}

inline SuiteReport suite_crosscheck(SweepCache& cache, bool include_a5 = true) {
    SuiteReport rep{"crosscheck", true, {}};
    Rng rng(cache.seed());
    for_each_block(cache, 24, [&](const GroupRun& run, const BuildResult& r) {
        crosscheck_block(run, r, rep, rng);
        locality_block(run, r, rep, cache.seed());
    });
    if (include_a5) {
        const GroupRun& run = cache.get("A5", 2);
        for (auto& r : run.results)
            if (r.pfs.meta.is_principal) crosscheck_block(run, r, rep, rng);
    }
    return rep;
}

struct Slq8Block {
    int index = 0;
    int defect = 1;
    int ell = 0;
    std::size_t minimal = 0;
    int fusion_class = 0;
};

inline SuiteReport suite_slq8(SweepCache& cache, std::vector<Slq8Block>* data = nullptr) {
    SuiteReport rep{"slq8", false, {}};
    const GroupRun& run = cache.get("C3_semi_Q8", 2);
    std::vector<Slq8Block> rows;
    std::vector<const FusionSystem*> classes;
    for (auto& r : run.results) {
        Slq8Block b;
        b.index = r.pfs.meta.block_index;
        b.defect = r.pfs.defect_order();
        b.ell = r.pfs.meta.ell;
        b.minimal = minimal_objects(r.pfs).size();
        b.fusion_class = -1;
        for (std::size_t c = 0; c < classes.size() && b.fusion_class < 0; ++c)
            if (fusion_isomorphic(*classes[c], r.pfs.fusion)) b.fusion_class = static_cast<int>(c);
        if (b.fusion_class < 0) {
            b.fusion_class = static_cast<int>(classes.size());
            classes.push_back(&r.pfs.fusion);
        }
        rows.push_back(b);
        std::ostringstream os;
        os << "block " << b.index << ": dim " << r.pfs.meta.dim_block << ", |D| = " << b.defect << ", ell = " << b.ell
           << ", minimal objects = " << b.minimal << ", fusion class " << b.fusion_class << ", |Hom| total "
           << r.pfs.fusion.morphisms.size();
        rep.note(os.str());
    }
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            if (rows[a].fusion_class == rows[b].fusion_class && rows[a].minimal != rows[b].minimal) {
                rep.pass = true;
                rep.note("blocks " + std::to_string(rows[a].index) + " and " + std::to_string(rows[b].index) +
                         " share a fusion system but differ in minimal objects");
            }
    if (!rep.pass) rep.lines.push_back("FAIL: no two 2-blocks share a fusion system while differing in minimal objects");
    if (data) *data = rows;
    return rep;
}

inline std::vector<std::string> suite_names() { return {"klein4", "axioms", "bounds", "ell", "crosscheck", "slq8"}; }

inline SuiteReport run_suite(const std::string& name, SweepCache& cache) {
    if (name == "klein4") return suite_klein4(cache);
    if (name == "axioms") return suite_axioms(cache);
    if (name == "bounds") return suite_bounds(cache);
    if (name == "ell") return suite_ell(cache);
    if (name == "crosscheck") return suite_crosscheck(cache);
    if (name == "slq8") return suite_slq8(cache);
    throw InputError("unknown suite '" + name + "'");
}

}  // namespace pfs
