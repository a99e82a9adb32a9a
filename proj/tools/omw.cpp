// Command-line front end for the oriented-matroid workbench: enumeration,
// axiom checking, polynomial-system reduction dumps, realization search,
// batch classification, and the polytope census.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "omw/classify.hpp"
#include "omw/io.hpp"

namespace {

std::vector<omw::Chirotope> read_chirotopes(const std::string& path, bool validate) {
    std::vector<omw::Chirotope> out;
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) throw std::runtime_error("cannot open input: " + path);
        in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(omw::parse_chirotope_line(line, validate));
    }
    return out;
}

std::uint64_t seed_from_env_or(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("OMW_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omw: exact-arithmetic workbench for small oriented matroids"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    long long trials = 2000;
    int cost = 12;
    int jobs = 1;
    bool full_branching = false;
    bool validate_input = false;
    long long enum_nodes = 500'000'000;
    app.add_option("--seed", seed, "global RNG seed (env OMW_SEED overrides)");
    app.add_option("--budget-trials", trials, "random realization trials per leaf");
    app.add_option("--budget-cost", cost, "max iterative-lengthening cost limit");
    app.add_option("--jobs", jobs, "worker threads for classify/census");
    app.add_flag("--full-branching", full_branching, "include zero sign patterns (system (8))");
    app.add_flag("--validate-input", validate_input, "run the axiom check on parsed chirotopes");
    app.add_option("--enum-node-limit", enum_nodes, "enumeration search node limit");

    auto make_budget = [&] {
        omw::Budget b;
        b.max_cost_limit = cost;
        b.random_trials = trials;
        b.rng_seed = seed_from_env_or(seed);
        b.full_branching = full_branching;
        return b;
    };

    // enumerate
    int en_n = 0, en_r = 0;
    bool en_uniform = false;
    auto* cmd_enum = app.add_subcommand("enumerate", "stream reorientation-class representatives");
    cmd_enum->add_option("-n", en_n, "number of elements")->required();
    cmd_enum->add_option("-r", en_r, "rank")->required();
    cmd_enum->add_flag("--uniform-only", en_uniform, "restrict signs to {+,-}");

    // check
    std::string check_in = "-";
    auto* cmd_check = app.add_subcommand("check", "axiom-check chirotope lines");
    cmd_check->add_option("--in", check_in, "input file of chirotope lines ('-' = stdin)");

    // reduce
    std::string reduce_in = "-";
    auto* cmd_reduce = app.add_subcommand("reduce", "dump the reduced polynomial system");
    cmd_reduce->add_option("--in", reduce_in, "input file of chirotope lines ('-' = stdin)");

    // realize
    std::string realize_in = "-";
    std::string realize_witness;
    auto* cmd_realize = app.add_subcommand("realize", "search for exact rational realizations");
    cmd_realize->add_option("--in", realize_in, "input file of chirotope lines ('-' = stdin)");
    cmd_realize->add_option("--witness-out", realize_witness, "write the first witness to this file");

    // classify
    std::string cl_in;
    int cl_n = 0, cl_r = 0;
    std::string cl_store = "classify.store";
    std::string cl_witness_dir = ".";
    auto* cmd_classify = app.add_subcommand("classify", "batch realizability with a resumable store");
    cmd_classify->add_option("--in", cl_in, "input file of chirotope lines");
    cmd_classify->add_option("-n", cl_n, "enumerate in-process: number of elements");
    cmd_classify->add_option("-r", cl_r, "enumerate in-process: rank");
    cmd_classify->add_option("--store", cl_store, "result store path");
    cmd_classify->add_option("--witness-dir", cl_witness_dir, "directory for witness files");

    // census
    int ce_n = 0, ce_r = 0;
    auto* cmd_census = app.add_subcommand("census", "polytope census for one (n, r) cell");
    cmd_census->add_option("-n", ce_n, "number of elements")->required();
    cmd_census->add_option("-r", ce_r, "rank")->required();

    // verify-witness
    std::string vw_chi, vw_file;
    auto* cmd_verify = app.add_subcommand("verify-witness", "re-run the exact determinant check");
    cmd_verify->add_option("--chi", vw_chi, "chirotope line `n r signstring`")->required();
    cmd_verify->add_option("--witness", vw_file, "witness file path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_enum) {
            omw::ClassEnumerator en(en_n, en_r, en_uniform, enum_nodes);
            long long count = 0;
            en.run([&](const omw::Chirotope& chi) {
                std::cout << omw::format_chirotope_line(chi) << '\n';
                ++count;
            });
            std::cerr << "classes: " << count << " (nodes " << en.nodes_visited() << ")\n";
        } else if (*cmd_check) {
            bool all_ok = true;
            for (const omw::Chirotope& chi : read_chirotopes(check_in, false)) {
                omw::AxiomCheck c = omw::check_axioms(chi);
                if (c.valid()) {
                    std::cout << "valid\n";
                } else if (std::holds_alternative<omw::AxiomCheck::IdenticallyZero>(*c.failure)) {
                    std::cout << "violation: identically zero\n";
                    all_ok = false;
                } else {
                    const auto& pair = std::get<omw::AxiomCheck::ViolatingPair>(*c.failure);
                    std::cout << "violation: (";
                    for (int x : pair.first) std::cout << x << ' ';
                    std::cout << "| ";
                    for (int x : pair.second) std::cout << x << ' ';
                    std::cout << ")\n";
                    all_ok = false;
                }
            }
            return all_ok ? 0 : 1;
        } else if (*cmd_reduce) {
            for (const omw::Chirotope& chi : read_chirotopes(reduce_in, validate_input)) {
                omw::Frame frame = omw::select_frame(chi);
                auto built = omw::build_system(chi, frame);
                std::cout << "# basis:";
                for (int x : frame.basis.tuple) std::cout << ' ' << x;
                std::cout << "  norm-row " << frame.norm_row + 1 << "  norm-col " << frame.norm_col
                          << "  |R| " << frame.reduced.tuple_indices.size() << "  degree-score "
                          << frame.degree_score << (frame.globally_negated ? "  (negated)" : "") << '\n';
                std::cout << omw::to_string(built.system);
            }
        } else if (*cmd_realize) {
            bool all_ok = true;
            for (const omw::Chirotope& chi : read_chirotopes(realize_in, validate_input)) {
                omw::RealizeOutcome ro = omw::realize(chi, make_budget());
                if (ro.feasible()) {
                    std::cout << "feasible\n";
                    if (!realize_witness.empty()) omw::write_witness_file(*ro.realization, realize_witness);
                } else {
                    std::cout << "unknown (" << omw::to_string(ro.reason) << ")\n";
                    all_ok = false;
                }
            }
            return all_ok ? 0 : 2;
        } else if (*cmd_classify) {
            std::vector<omw::Chirotope> inputs;
            if (!cl_in.empty()) {
                inputs = read_chirotopes(cl_in, validate_input);
            } else if (cl_n > 0 && cl_r > 0) {
                omw::EnumerationReport rep = omw::enumerate_classes(cl_n, cl_r, false, enum_nodes);
                for (const std::string& s : rep.representatives)
                    inputs.push_back(omw::chirotope_from_string(cl_n, cl_r, s));
            } else {
                throw std::runtime_error("classify: provide --in or both -n and -r");
            }
            omw::ResultStore store(cl_store);
            omw::ClassifyOptions opt;
            opt.budget = make_budget();
            opt.global_seed = seed_from_env_or(seed);
            opt.jobs = jobs;
            opt.witness_dir = cl_witness_dir;
            opt.validate_input = validate_input;
            omw::ClassifyResult res = omw::run_classify(inputs, store, opt);
            std::cerr << "classified " << res.processed << " (skipped " << res.skipped
                      << "), realizable " << res.realizable << ", unknown " << res.unknown << '\n';
        } else if (*cmd_census) {
            omw::EnumerationReport rep = omw::enumerate_classes(ce_n, ce_r, false, enum_nodes);
            omw::Budget b = make_budget();
            b.rng_seed = seed_from_env_or(seed);
            omw::CensusSummary sum = omw::census(rep, b);
            std::cout << omw::census_tsv_header() << '\n' << omw::census_tsv_row(sum) << '\n';
        } else if (*cmd_verify) {
            omw::Chirotope chi = omw::parse_chirotope_line(vw_chi, validate_input);
            omw::Realization V = omw::read_witness_file(vw_file, chi.n, chi.r);
            auto bad = omw::verify_realization_mismatch(V, chi);
            if (!bad) {
                std::cout << "verified\n";
            } else {
                std::cout << "mismatch at tuple (";
                for (std::size_t i = 0; i < bad->size(); ++i)
                    std::cout << (i ? " " : "") << (*bad)[i];
                std::cout << ")\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "omw: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
