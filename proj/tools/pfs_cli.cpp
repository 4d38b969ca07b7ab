// pfs_cli: compute, verify and compare pointed fusion systems of p-blocks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pfs/pfs.hpp"

namespace {

using pfs::ojson;

enum Exit { kOk = 0, kFailure = 1, kAxiom = 2, kSplit = 3, kInternal = 4 };

void report_error(const char* kind, const std::string& msg, const std::string& witness = "") {
    ojson e;
    e["error"] = kind;
    e["message"] = msg;
    if (!witness.empty()) e["witness"] = witness;
    std::cerr << e.dump() << "\n";
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("PFS_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
            throw pfs::InputError(std::string("PFS_SEED is not an integer: ") + s);
        }
    }
    return 1;
}

// write to a sibling temp file, then rename
void write_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw pfs::InputError("cannot write " + path);
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

struct ComputeArgs {
    std::string group;
    int p = 2;
    std::string block = "principal";
    unsigned degree = 0;
    std::uint64_t seed = 1;
    std::string out, dot;
    bool stable = false, cross_check = false, vary = false;
};

std::string block_path(const std::string& base, int index) {
    std::filesystem::path p(base);
    std::string stem = p.stem().string(), ext = p.extension().string();
    if (ext.empty()) ext = ".json";
    return (p.parent_path() / (stem + ".block" + std::to_string(index) + ext)).string();
}

int cmd_compute(const ComputeArgs& a) {
    pfs::Group G = pfs::load_group(a.group);
    unsigned k = a.degree ? a.degree : pfs::default_field_degree(G, a.p);
    pfs::BlockSet bs = pfs::block_set(G, a.p, k, a.seed);
    std::vector<int> which;
    if (a.block == "all") {
        for (std::size_t b = 0; b < bs.blocks.size(); ++b) which.push_back(static_cast<int>(b));
    } else if (a.block == "principal") {
        for (std::size_t b = 0; b < bs.blocks.size(); ++b)
            if (bs.blocks[b].is_principal) which.push_back(static_cast<int>(b));
    } else {
        try {
            which.push_back(std::stoi(a.block));
        } catch (...) {
            throw pfs::InputError("block selector must be an index, 'principal' or 'all'");
        }
    }
    bool many = a.block == "all";
    pfs::BuildOptions opt;
    opt.vary_choices = a.vary;
    for (int b : which) {
        pfs::BuildResult r = pfs::build_full(bs, a.p, b, a.seed, opt);
        if (a.cross_check) {
            pfs::GroupRun run;
            run.group = G.name;
            run.p = a.p;
            run.k = k;
            run.bs = bs;
            pfs::SuiteReport rep{"cross-check", true, {}};
            pfs::Rng rng(a.seed);
            pfs::crosscheck_block(run, r, rep, rng);
            pfs::locality_block(run, r, rep, a.seed);
            std::cerr << rep.text();
            if (!rep.pass) throw pfs::AxiomViolation("bimodule cross-check disagrees", "block " + std::to_string(b));
        }
        pfs::PointedFusionSystem P = a.stable ? pfs::stable_part(r.pfs) : r.pfs;
        std::string json = pfs::to_json_string(P);
        if (a.out.empty() && !many) {
            std::cout << json;
        } else {
            std::string base = a.out.empty() ? G.name + "_p" + std::to_string(a.p) + ".json" : a.out;
            write_atomic(many ? block_path(base, b) : base, json);
        }
        if (!a.dot.empty()) write_atomic(many ? block_path(a.dot, b) : a.dot, pfs::to_dot(P));
    }
    return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    pfs::SweepCache cache(seed);
    std::vector<std::string> names = suite == "all" ? pfs::suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (auto& n : names) {
        auto rep = pfs::run_suite(n, cache);
        std::cout << rep.text();
        ok = ok && rep.pass;
    }
    return ok ? kOk : kFailure;
}

int cmd_compare(const std::string& f1, const std::string& f2, const std::string& mode) {
    auto A = pfs::load_pfs(f1), B = pfs::load_pfs(f2);
    auto res = pfs::iso_test(A, B, pfs::parse_iso_mode(mode));
    ojson j;
    j["mode"] = mode;
    j["isomorphic"] = res.iso;
    if (res.iso) {
        ojson w = ojson::array();
        for (std::size_t i = 0; i < res.witness.size(); ++i)
            w.push_back({A.objects[i].id, B.objects[res.witness[i]].id});
        j["witness"] = w;
    } else {
        j["reason"] = res.reason;
    }
    std::cout << j.dump(2) << "\n";
    return res.iso ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pointed fusion systems of p-blocks of finite groups"};
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "build the pointed fusion system of one or all blocks");
    compute->add_option("--group", ca.group, "catalog name (e.g. A4, C2xA4) or group JSON file")->required();
    compute->add_option("--p", ca.p, "prime")->required();
    compute->add_option("--block", ca.block, "block index, 'principal' or 'all'");
    compute->add_option("--field-degree", ca.degree, "degree k of GF(p^k); default from exp(G)");
    compute->add_option("--seed", ca.seed, "seed (default PFS_SEED or 1)");
    compute->add_option("--out", ca.out, "output JSON path (stdout when omitted)");
    compute->add_option("--dot", ca.dot, "also write the Hasse diagram as DOT");
    compute->add_flag("--stable", ca.stable, "emit only the stable part");
    compute->add_flag("--cross-check", ca.cross_check, "cross-check multiplicities with diagonal modules");
    compute->add_flag("--vary-choices", ca.vary, "randomize the maximal Brauer pair and source idempotent");

    std::string suite;
    std::uint64_t vseed = 1;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "klein4 | axioms | bounds | ell | crosscheck | slq8 | all")->required();
    verify->add_option("--seed", vseed, "seed (default PFS_SEED or 1)");

    std::string f1, f2, mode = "F-identical";
    auto* compare = app.add_subcommand("compare", "isomorphism test of two pfs.v1 files");
    compare->add_option("file1", f1)->required();
    compare->add_option("file2", f2)->required();
    compare->add_option("--mode", mode, "multiposet | category | F-identical");

    try {
        std::uint64_t s = default_seed();
        ca.seed = s;
        vseed = s;
    } catch (const pfs::InputError& e) {
        report_error("input", e.what());
        return kFailure;
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return cmd_compute(ca);
        if (*verify) return cmd_verify(suite, vseed);
        if (*compare) return cmd_compare(f1, f2, mode);
    } catch (const pfs::AxiomViolation& e) {
        report_error("axiom_violation", e.what(), e.witness);
        return kAxiom;
    } catch (const pfs::SplitFieldError& e) {
        report_error("split_field", e.what());
        return kSplit;
    } catch (const pfs::InputError& e) {
        report_error("input", e.what());
        return kFailure;
    } catch (const pfs::InternalInconsistency& e) {
        report_error("internal", e.what());
        return kInternal;
    } catch (const std::exception& e) {
        report_error("runtime", e.what());
        return kFailure;
    }
    return kFailure;
}
