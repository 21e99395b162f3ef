#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tempo/approx.hpp"
#include "tempo/brute.hpp"
#include "tempo/fpt.hpp"
#include "tempo/graph.hpp"
#include "tempo/io.hpp"
#include "tempo/reductions.hpp"
#include "tempo/setcover.hpp"
#include "tempo/treedec.hpp"
#include "tempo/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

// 0 ok, 1 verification found the input invalid, 2 bad flags,
// 3 unreadable or malformed input, 4 exhaustive-search budget exceeded
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kInput = 3;
constexpr int kBudget = 4;

constexpr const char* kHelpFooter = R"(Instance format (.tg):
  p tgraph <n> <m> <tau>
  e <u> <v> <t1,t2,...>      # u < v, strictly ascending times in 1..tau
Solution format:
  s <cover|matching> <count>
  e <u> <v>
Set system format (.ss):
  p setsys <n> <m>
  s <e1,e2,...>              # one line per set, over universe 1..n
Gadget generators also write '<out>.marks': a 't <threshold>' line and one
'm <u> <v> <mark>' line per marked edge.

solve prints one JSON object:
  {"instance", "problem", "method", "value", "n", "m", "tau", "wall_ms",
   "solution_path", "verified", ...}
plus "width" and "table_entries" (fpt), "bound_factor" (greedy/snapshot)
and "best_time" (snapshot). Every reported value is re-verified against
the emitted solution before the program exits.

Ratios printed by bench are approximation factors against brute force:
cover value/optimum, matching optimum/value (so snapshot stays within the
lifetime tau).

Environment:
  TEMPOC_BUDGET_EDGES  overrides the exhaustive-search edge cap (default 22)

Exit codes:
  0 success   1 verify found the solution invalid   2 invalid flags
  3 unreadable or malformed input                   4 budget exceeded)";

std::string instance_id(const std::string& path) { return fs::path(path).stem().string(); }

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

tempo::SearchBudget make_budget(std::optional<int> time_limit_ms) {
    tempo::SearchBudget budget;
    if (const char* env = std::getenv("TEMPOC_BUDGET_EDGES")) {
        try {
            budget.max_edges = std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("TEMPOC_BUDGET_EDGES must be an integer, got '" +
                                        std::string(env) + "'");
        }
    }
    if (time_limit_ms) budget.time_limit = std::chrono::milliseconds(*time_limit_ms);
    return budget;
}

tempo::NiceTreeDecomposition decomposition_for(const tempo::TemporalGraph& g,
                                               const std::string& decomp_path) {
    if (decomp_path.empty())
        return to_nice(build_tree_decomposition(g.base(), tempo::DecompMode::Heuristic));
    tempo::TreeDecomposition d = tempo::parse_decomposition(tempo::read_file(decomp_path));
    tempo::DecompReport rep = validate_decomposition(g.base(), d);
    if (!rep.ok)
        throw std::invalid_argument("decomposition does not fit the instance: " +
                                    rep.violations.front());
    return to_nice(d);
}

struct SolveArgs {
    std::string problem, method, in, decomp, out, dump_dp;
    std::optional<int> time_limit_ms;
};

int run_solve(const SolveArgs& args) {
    bool cover = args.problem == "cover";
    if ((args.method == "greedy" && !cover) || (args.method == "snapshot" && cover)) {
        std::cerr << "error: method '" << args.method << "' does not solve '" << args.problem
                  << "'\n";
        return kUsage;
    }
    if (!args.dump_dp.empty() && args.method != "fpt") {
        std::cerr << "error: --dump-dp requires --method fpt\n";
        return kUsage;
    }

    tempo::TemporalGraph g = tempo::parse_temporal_graph(tempo::read_file(args.in));
    tempo::SolutionKind kind = cover ? tempo::SolutionKind::Cover : tempo::SolutionKind::Matching;

    json result;
    result["instance"] = instance_id(args.in);
    result["problem"] = args.problem;
    result["method"] = args.method;
    result["n"] = g.vertex_count();
    result["m"] = g.edge_count();
    result["tau"] = g.tau();

    Clock::time_point start = Clock::now();
    tempo::SolutionSet solution;
    int value = 0;
    if (args.method == "brute") {
        tempo::SearchBudget budget = make_budget(args.time_limit_ms);
        tempo::BruteResult r =
            cover ? brute_min_edge_cover(g, budget) : brute_max_matching(g, budget);
        value = r.size;
        solution = std::move(r.solution);
    } else if (args.method == "fpt") {
        tempo::NiceTreeDecomposition nd = decomposition_for(g, args.decomp);
        tempo::TemporalDP dp(g, nd, kind);
        value = dp.optimal_value();
        solution = dp.extract_solution();
        result["width"] = width(nd);
        result["table_entries"] = dp.stats().total_entries();
        if (!args.dump_dp.empty()) tempo::write_file(args.dump_dp, dp.dump_tables());
    } else if (args.method == "greedy") {
        tempo::CoverApproxReport rep = greedy_temporal_edge_cover(g);
        solution = std::move(rep.solution);
        value = static_cast<int>(solution.edges.size());
        result["bound_factor"] = rep.bound_factor;
    } else {  // snapshot
        tempo::MatchingApproxReport rep = snapshot_matching_approx(g);
        solution = std::move(rep.solution);
        value = static_cast<int>(solution.edges.size());
        result["bound_factor"] = rep.bound_factor;
        result["best_time"] = rep.best_time;
    }
    result["wall_ms"] = ms_since(start);

    bool valid = cover ? verify_edge_cover(g, solution).ok : verify_matching(g, solution).ok;
    if (!valid || static_cast<int>(solution.edges.size()) != value) {
        std::cerr << "internal error: computed solution failed re-verification\n";
        return kInvalid;
    }
    result["verified"] = true;
    result["value"] = value;

    if (!args.out.empty()) {
        tempo::write_file(args.out, tempo::serialize_solution(solution));
        result["solution_path"] = args.out;
    } else {
        result["solution_path"] = nullptr;
    }
    std::cout << result.dump(2) << '\n';
    return kOk;
}

struct GenArgs {
    std::string kind, out, cnf, sets, in;
    int n = 0;
    int tau = 1;
    int k = -1;
    double p = 0.5, q = 0.5;
    std::uint64_t seed = 1;
    bool has_n = false, has_k = false;
};

int run_gen(const GenArgs& args) {
    json result;
    result["kind"] = args.kind;
    result["out"] = args.out;

    auto emit_instance = [&](const tempo::TemporalGraph& g) {
        tempo::write_file(args.out, serialize_temporal_graph(g));
        result["n"] = g.vertex_count();
        result["m"] = g.edge_count();
        result["tau"] = g.tau();
    };
    auto emit_gadget = [&](const tempo::GadgetInstance& inst) {
        emit_instance(inst.graph);
        std::string sidecar = args.out + ".marks";
        tempo::write_file(sidecar,
                          "t " + std::to_string(inst.threshold) + "\n" + serialize_marks(inst));
        result["threshold"] = inst.threshold;
        result["marks"] = inst.marks.size();
        result["marks_path"] = sidecar;
    };
    auto need = [&](bool ok, const char* msg) {
        if (!ok) {
            std::cerr << "error: " << msg << '\n';
            return false;
        }
        return true;
    };

    if (args.kind == "random") {
        if (!need(args.has_n, "gen random requires --n")) return kUsage;
        emit_instance(tempo::random_temporal_graph(args.n, args.p, args.tau, args.q, args.seed));
        result["seed"] = args.seed;
    } else if (args.kind == "sat-cover" || args.kind == "sat-matching") {
        if (!need(!args.cnf.empty(), "sat kinds require --cnf FILE")) return kUsage;
        tempo::Cnf22Formula f = tempo::parse_dimacs_cnf(tempo::read_file(args.cnf));
        emit_gadget(args.kind == "sat-cover" ? reduce_sat_to_cover(f) : reduce_sat_to_matching(f));
    } else if (args.kind == "setcover-tree" || args.kind == "setpacking-star" ||
               args.kind == "inapprox") {
        if (!need(!args.sets.empty() && args.has_k, "set-system kinds require --sets FILE and --k"))
            return kUsage;
        tempo::SetSystem sys = tempo::parse_set_system(tempo::read_file(args.sets));
        tempo::GadgetInstance inst =
            args.kind == "setcover-tree"  ? reduce_setcover_to_tree_cover(sys, args.k)
            : args.kind == "inapprox"     ? reduce_setcover_inapprox(sys, args.k)
                                          : reduce_setpacking_to_star_matching(sys, args.k);
        emit_gadget(inst);
    } else {  // augment
        if (!need(!args.in.empty(), "gen augment requires --in FILE")) return kUsage;
        tempo::TemporalGraph g = tempo::parse_temporal_graph(tempo::read_file(args.in));
        emit_instance(augment_labels(g));
    }
    std::cout << result.dump(2) << '\n';
    return kOk;
}

int run_verify(const std::string& problem, const std::string& in, const std::string& sol_path) {
    tempo::TemporalGraph g = tempo::parse_temporal_graph(tempo::read_file(in));
    tempo::SolutionSet sol = tempo::parse_solution(tempo::read_file(sol_path));

    json result;
    result["instance"] = instance_id(in);
    result["problem"] = problem;
    result["size"] = sol.edges.size();
    bool ok;
    if (problem == "cover") {
        tempo::CoverReport rep = verify_edge_cover(g, sol);
        ok = rep.ok;
        json uncovered = json::array();
        for (const tempo::TemporalVertex& tv : rep.uncovered) uncovered.push_back({tv.v, tv.t});
        result["uncovered"] = uncovered;
    } else {
        tempo::MatchingReport rep = verify_matching(g, sol);
        ok = rep.ok;
        json conflicts = json::array();
        for (const auto& [a, b] : rep.conflicts)
            conflicts.push_back({{a.u, a.v}, {b.u, b.v}});
        result["conflicts"] = conflicts;
    }
    result["valid"] = ok;
    std::cout << result.dump(2) << '\n';
    return ok ? kOk : kInvalid;
}

int run_decomp(const std::string& in, const std::string& mode, const std::string& out) {
    tempo::TemporalGraph g = tempo::parse_temporal_graph(tempo::read_file(in));
    tempo::TreeDecomposition d = build_tree_decomposition(
        g.base(), mode == "exact" ? tempo::DecompMode::Exact : tempo::DecompMode::Heuristic);
    tempo::NiceTreeDecomposition nd = to_nice(d);

    json result;
    result["instance"] = instance_id(in);
    result["mode"] = mode;
    result["width"] = width(nd);
    result["nodes"] = nd.nodes.size();
    if (!out.empty()) {
        tempo::write_file(out, dump_decomposition(nd));
        result["decomp_path"] = out;
    }
    std::cout << result.dump(2) << '\n';
    return kOk;
}

struct BenchRow {
    std::string instance, problem, method, value = "-", ratio = "-";
    double ms = 0.0;
};

int run_bench(const std::string& dir, const std::string& problem,
              std::optional<int> time_limit_ms) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".tg")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "error: no .tg instances under " << dir << '\n';
        return kInput;
    }

    std::vector<BenchRow> rows;
    for (const std::string& file : files) {
        tempo::TemporalGraph g = tempo::parse_temporal_graph(tempo::read_file(file));
        tempo::NiceTreeDecomposition nd =
            to_nice(build_tree_decomposition(g.base(), tempo::DecompMode::Heuristic));
        for (std::string prob : {"cover", "matching"}) {
            if (problem != "both" && problem != prob) continue;
            bool cover = prob == "cover";
            std::optional<int> brute_value;

            auto add = [&](const std::string& method, auto&& solve) {
                BenchRow row;
                row.instance = instance_id(file);
                row.problem = prob;
                row.method = method;
                Clock::time_point start = Clock::now();
                try {
                    int value = solve();
                    row.ms = ms_since(start);
                    row.value = std::to_string(value);
                    if (method == "brute") brute_value = value;
                    if (brute_value) {
                        int opt = *brute_value;
                        double ratio = 1.0;
                        if (value != opt)
                            ratio = cover ? static_cast<double>(value) / opt
                                          : static_cast<double>(opt) / value;
                        std::ostringstream ss;
                        ss << std::fixed << std::setprecision(2) << ratio;
                        row.ratio = ss.str();
                    }
                } catch (const tempo::BudgetExceeded&) {
                    row.ms = ms_since(start);
                }
                rows.push_back(row);
            };

            add("brute", [&] {
                tempo::SearchBudget budget = make_budget(time_limit_ms);
                return cover ? brute_min_edge_cover(g, budget).size
                             : brute_max_matching(g, budget).size;
            });
            add("fpt", [&] {
                return cover ? fpt_min_edge_cover(g, nd).size : fpt_max_matching(g, nd).size;
            });
            if (cover)
                add("greedy", [&] {
                    return static_cast<int>(greedy_temporal_edge_cover(g).solution.edges.size());
                });
            else
                add("snapshot", [&] {
                    return static_cast<int>(snapshot_matching_approx(g).solution.edges.size());
                });
        }
    }

    std::cout << std::left << std::setw(16) << "instance" << std::setw(10) << "problem"
              << std::setw(10) << "method" << std::setw(8) << "value" << std::setw(8) << "ratio"
              << "ms\n";
    for (const BenchRow& row : rows)
        std::cout << std::left << std::setw(16) << row.instance << std::setw(10) << row.problem
                  << std::setw(10) << row.method << std::setw(8) << row.value << std::setw(8)
                  << row.ratio << std::fixed << std::setprecision(2) << row.ms << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempoc: temporal edge cover and temporal matching toolkit"};
    app.footer(kHelpFooter);
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.require_subcommand(1);

    SolveArgs solve_args;
    int solve_time_limit = -1;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance and print a JSON result");
    solve->add_option("--problem", solve_args.problem, "cover or matching")
        ->required()
        ->check(CLI::IsMember({"cover", "matching"}));
    solve->add_option("--method", solve_args.method, "brute, fpt, greedy or snapshot")
        ->required()
        ->check(CLI::IsMember({"brute", "fpt", "greedy", "snapshot"}));
    solve->add_option("--in", solve_args.in, "instance file")->required();
    solve->add_option("--decomp", solve_args.decomp,
                      "tree decomposition file for fpt (default: built in-process)");
    solve->add_option("--out", solve_args.out, "write the solution to this file");
    solve->add_option("--dump-dp", solve_args.dump_dp, "write fpt table contents to this file");
    solve->add_option("--time-limit", solve_time_limit,
                      "milliseconds before brute force gives up (also lifts its edge cap)")
        ->check(CLI::NonNegativeNumber);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("kind", gen_args.kind, "what to generate")
        ->required()
        ->check(CLI::IsMember({"random", "sat-cover", "sat-matching", "setcover-tree",
                               "setpacking-star", "inapprox", "augment"}));
    gen->add_option("--out", gen_args.out, "instance file to write")->required();
    gen->add_option("--n", gen_args.n, "vertex count (random)")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--p", gen_args.p, "edge probability (random)")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--tau", gen_args.tau, "lifetime (random)")->check(CLI::PositiveNumber);
    gen->add_option("--q", gen_args.q, "per-time label probability (random)")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_option("--cnf", gen_args.cnf, "DIMACS formula (sat-cover, sat-matching)");
    gen->add_option("--sets", gen_args.sets,
                    "set system file (setcover-tree, setpacking-star, inapprox)");
    gen->add_option("--k", gen_args.k, "target size for the set problem")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--in", gen_args.in, "instance to extend (augment)");

    std::string verify_problem, verify_in, verify_solution;
    CLI::App* verify = app.add_subcommand("verify", "check a solution file against an instance");
    verify->add_option("--problem", verify_problem, "cover or matching")
        ->required()
        ->check(CLI::IsMember({"cover", "matching"}));
    verify->add_option("--in", verify_in, "instance file")->required();
    verify->add_option("--solution", verify_solution, "solution file")->required();

    std::string decomp_in, decomp_mode = "heuristic", decomp_out;
    CLI::App* decomp = app.add_subcommand("decomp", "build a nice tree decomposition");
    decomp->add_option("--in", decomp_in, "instance file")->required();
    decomp->add_option("--mode", decomp_mode, "heuristic (min-fill) or exact (n <= 12)")
        ->check(CLI::IsMember({"heuristic", "exact"}));
    decomp->add_option("--out", decomp_out, "write the decomposition to this file");

    std::string bench_dir, bench_problem = "both";
    int bench_time_limit = -1;
    CLI::App* bench = app.add_subcommand("bench", "compare every method on a directory");
    bench->add_option("--dir", bench_dir, "directory of .tg instances")->required();
    bench->add_option("--problem", bench_problem, "cover, matching or both")
        ->check(CLI::IsMember({"cover", "matching", "both"}));
    bench->add_option("--time-limit", bench_time_limit, "per-run brute-force deadline (ms)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    gen_args.has_n = gen->count("--n") > 0;
    gen_args.has_k = gen->count("--k") > 0;
    if (solve->count("--time-limit")) solve_args.time_limit_ms = solve_time_limit;

    try {
        if (*solve) return run_solve(solve_args);
        if (*gen) return run_gen(gen_args);
        if (*verify) return run_verify(verify_problem, verify_in, verify_solution);
        if (*decomp) return run_decomp(decomp_in, decomp_mode, decomp_out);
        std::optional<int> bench_limit;
        if (bench->count("--time-limit")) bench_limit = bench_time_limit;
        return run_bench(bench_dir, bench_problem, bench_limit);
    } catch (const tempo::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const tempo::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
}
