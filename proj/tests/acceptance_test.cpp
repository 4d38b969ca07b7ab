// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance_test [--seed N] [--expect-fail 9,...] [--verbose]
//
// Exit status is 0 when every criterion passes, or when the only failures are
// the ones listed with --expect-fail. Those are still printed as FAIL.
#include <chrono>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "pfs/pfs.hpp"

using namespace pfs;

namespace {

// All comparisons are exact integer or structural matches.
constexpr int kMaxOrderSweep = 60;     // criteria 2, 3, 4
constexpr int kMaxOrderOracle = 24;    // criteria 5, 6
constexpr int kInvarianceSeeds = 10;   // criterion 7
constexpr unsigned kInvarianceK = 2;   // GF(4)
constexpr int kA5BlockDim = 44;        // criterion 4
constexpr int kA5MaxMult = 2;

struct Outcome {
    int id;
    std::string title;
    bool pass;
    std::string detail;
    double seconds;
};

bool verbose = false;

void dump(const SuiteReport& r) {
    if (verbose) std::cout << r.text();
}

Outcome timed(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    std::pair<bool, std::string> r;
    try {
        r = f();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {id, title, r.first, r.second, s};
}

std::string first_failure(const SuiteReport& r) {
    for (auto& l : r.lines)
        if (l.rfind("FAIL", 0) == 0) return l;
    return r.lines.empty() ? "" : r.lines.back();
}

std::pair<bool, std::string> from_report(const SuiteReport& r) {
    dump(r);
    return {r.pass, r.pass ? (r.lines.empty() ? "" : r.lines.back()) : first_failure(r)};
}

const BuildResult& principal_result(const GroupRun& run) {
    for (auto& r : run.results)
        if (r.pfs.meta.is_principal) return r;
    throw InternalInconsistency("no principal block");
}

std::pair<bool, std::string> bounds_with_a5(SweepCache& cache) {
    auto rep = suite_bounds(cache, kMaxOrderSweep);
    dump(rep);
    if (!rep.pass) return {false, first_failure(rep)};
    const auto& P = principal_of(cache.get("A5", 2));
    auto b = prop44_check(P);
    if (b.dimB != kA5BlockDim || b.m != kA5MaxMult)
        return {false, "A5 inputs: dim B = " + std::to_string(b.dimB) + ", m = " + std::to_string(b.m)};
    return {b.all(), "A5: " + b.text() + "; " + std::to_string(rep.lines.size()) + " blocks checked"};
}

std::pair<bool, std::string> oracle_equivalence(SweepCache& cache) {
    SuiteReport rep{"bimodule multiplicities", true, {}};
    Rng rng(cache.seed());
    int blocks = 0;
    for_each_block(cache, kMaxOrderOracle, [&](const GroupRun& run, const BuildResult& r) {
        crosscheck_block(run, r, rep, rng);
        ++blocks;
    });
    const GroupRun& a5 = cache.get("A5", 2);
    crosscheck_block(a5, principal_result(a5), rep, rng);
    dump(rep);
    return {rep.pass, rep.pass ? std::to_string(blocks) + " blocks with |G| <= 24 and the A5 principal block agree"
                               : first_failure(rep)};
}

std::pair<bool, std::string> locality(SweepCache& cache) {
    SuiteReport rep{"locality", true, {}};
    int blocks = 0;
    for_each_block(cache, kMaxOrderOracle, [&](const GroupRun& run, const BuildResult& r) {
        locality_block(run, r, rep, cache.seed());
        ++blocks;
    });
    dump(rep);
    return {rep.pass, rep.pass ? std::to_string(blocks) + " blocks agree" : first_failure(rep)};
}

std::pair<bool, std::string> invariance() {
    BuildOptions vary;
    vary.vary_choices = true;
    std::ostringstream os;
    for (auto& name : {"A4", "A5"}) {
        Group G = catalog(name);
        std::vector<BuildResult> runs;
        std::set<std::vector<unsigned>> sources, reps;
        for (int s = 1; s <= kInvarianceSeeds; ++s) {
            auto seed = static_cast<std::uint64_t>(s);
            runs.push_back(build_full(block_set(G, 2, kInvarianceK, seed), 2, 0, seed, vary));
            std::vector<unsigned> key;
            for (auto c : runs.back().source.i) key.push_back(static_cast<unsigned>(c));
            sources.insert(key);
            key.clear();
            for (auto& o : runs.back().objects)
                for (auto c : o.rep) key.push_back(static_cast<unsigned>(c));
            reps.insert(key);
        }
        for (std::size_t a = 0; a < runs.size(); ++a)
            for (std::size_t b = a + 1; b < runs.size(); ++b) {
                auto r = iso_test(runs[a].pfs, runs[b].pfs, IsoMode::FIdentical);
                if (!r.iso)
                    return {false, std::string(name) + ": seeds " + std::to_string(a + 1) + " and " +
                                       std::to_string(b + 1) + " differ: " + r.reason};
            }
        os << name << ": " << kInvarianceSeeds << " seeds, " << sources.size() << " distinct source idempotents, "
           << reps.size() << " distinct sets of point representatives; ";
    }
    return {true, os.str() + "all pairs F-identically isomorphic"};
}

std::pair<bool, std::string> stable_uniformity(SweepCache& cache) {
    std::vector<PointedFusionSystem> st;
    std::vector<std::string> names{"V4", "A4", "A5"};
    for (auto& n : names) {
        const auto& P = principal_of(cache.get(n, 2));
        if (P.defect_order() != 4) return {false, n + ": defect group of order " + std::to_string(P.defect_order())};
        st.push_back(stable_part(P));
        for (auto& [k, v] : st.back().mult)
            if (v != 1) return {false, n + ": stable multiplicity " + std::to_string(v)};
    }
    for (std::size_t a = 0; a < st.size(); ++a)
        for (std::size_t b = a + 1; b < st.size(); ++b) {
            auto r = iso_test(st[a], st[b], IsoMode::Multiposet);
            if (!r.iso) return {false, names[a] + " vs " + names[b] + ": " + r.reason};
        }
    return {true, "V4, A4, A5 stable parts pairwise isomorphic, " + std::to_string(st[0].objects.size()) +
                      " objects, all multiplicities 1"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = 1;
    std::vector<int> expect_fail;
    app.add_option("--seed", seed);
    app.add_option("--expect-fail", expect_fail)->delimiter(',');
    app.add_flag("--verbose", verbose);
    CLI11_PARSE(app, argc, argv);

    SweepCache cache(seed);
    std::vector<Outcome> out;
    auto report = [&](Outcome o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << o.id << " " << o.title << ": " << o.detail << " ("
                  << std::fixed << std::setprecision(1) << o.seconds << " s)" << std::endl;
        out.push_back(std::move(o));
    };

    report(timed(1, "Klein-four diagrams", [&] {
        auto rep = suite_klein4(cache);
        dump(rep);
        std::string all;
        for (auto& l : rep.lines) all += (all.empty() ? "" : "; ") + l;
        return std::make_pair(rep.pass, all);
    }));
    report(timed(2, "minimal objects = simple modules",
                 [&] { return from_report(suite_ell(cache, kMaxOrderSweep)); }));
    report(timed(3, "axioms and chain inequality", [&] { return from_report(suite_axioms(cache, kMaxOrderSweep)); }));
    report(timed(4, "dimension bounds", [&] { return bounds_with_a5(cache); }));
    report(timed(5, "bimodule oracle", [&] { return oracle_equivalence(cache); }));
    report(timed(6, "locality vs Brauer construction", [&] { return locality(cache); }));
    report(timed(7, "choice invariance", [&] { return invariance(); }));
    report(timed(8, "stable-part uniformity", [&] { return stable_uniformity(cache); }));
    report(timed(9, "C3_semi_Q8 blocks", [&] {
        auto rep = suite_slq8(cache);
        if (!rep.pass) {
            std::string rows;
            for (auto& l : rep.lines)
                if (l.rfind("FAIL", 0) != 0) rows += (rows.empty() ? "" : "; ") + l;
            return std::make_pair(false, rows);
        }
        return from_report(rep);
    }));

    std::set<int> allowed(expect_fail.begin(), expect_fail.end());
    int unexpected = 0, expected = 0;
    for (auto& o : out) {
        if (o.pass && allowed.count(o.id)) {
            std::cout << "criterion " << o.id << " passed but was listed as an expected failure" << std::endl;
            ++unexpected;
        } else if (!o.pass) {
            allowed.count(o.id) ? ++expected : ++unexpected;
        }
    }
    std::cout << out.size() - static_cast<std::size_t>(expected) - static_cast<std::size_t>(unexpected) << " passed, "
              << expected << " expected failures, " << unexpected << " unexpected" << std::endl;
    return unexpected == 0 ? 0 : 1;
}
