#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/kneser.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/protocols.hpp"

namespace {

using namespace fairdiv;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitUsage = 3;

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<Rational> parse_c_values(const std::vector<std::string>& raw) {
    std::vector<Rational> cs;
    cs.reserve(raw.size());
    for (const std::string& s : raw) cs.push_back(Rational::parse(s));
    return cs;
}

bool all_identical(const std::vector<Valuation>& vals) {
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (!(vals[i] == vals[0])) return false;
    }
    return true;
}

struct SolveArgs {
    std::string instance_path;
    std::string algorithm;
    std::vector<std::string> c_raw;
    bool no_normalize = false;
    bool pareto = false;
    std::string trace_path;
    int jobs = 1;
    std::uint64_t max_states = kDefaultEnumCap;
    bool allow_nonmonotone = false;
};

int cmd_solve(const SolveArgs& args) {
    const InstanceFile instance = parse_instance_file(args.instance_path, args.allow_nonmonotone);
    const std::vector<Valuation>& vals = instance.valuations;
    const std::vector<Rational> cs = parse_c_values(args.c_raw);

    // Normalization default: on for distinct valuations, off for identical.
    SolveOptions solve_opt;
    solve_opt.normalize = !args.no_normalize && !all_identical(vals);
    solve_opt.max_states = args.max_states;
    solve_opt.jobs = args.jobs;

    std::optional<Allocation> result;
    std::optional<HalfEfxTrace> trace;

    if (args.algorithm == "leximin") {
        result = leximin_solve(vals, ComparatorKind::leximin, solve_opt);
    } else if (args.algorithm == "leximin++") {
        result = leximin_solve(vals, ComparatorKind::leximin_plus_plus, solve_opt);
    } else if (args.algorithm == "mnw") {
        result = max_nash_welfare(vals, args.max_states);
    } else if (args.algorithm == "cut-and-choose") {
        if (instance.n != 2) throw usage_error("cut-and-choose needs exactly two players");
        result = cut_and_choose(vals[0], vals[1], args.max_states);
    } else if (args.algorithm == "half-efx") {
        auto [alloc, tr] = half_efx(vals);
        result = std::move(alloc);
        trace = std::move(tr);
    } else if (args.algorithm == "same-ranking") {
        result = same_ranking_efx(vals);
    } else if (args.algorithm == "two-player-additive") {
        if (instance.n != 2) throw usage_error("two-player-additive needs exactly two players");
        result = two_player_additive_efx(vals[0], vals[1]);
    } else if (args.algorithm == "efx-po-identical") {
        if (!all_identical(vals)) {
            throw usage_error("efx-po-identical needs one shared valuation across all players");
        }
        result = efx_po_additive_identical(vals[0], instance.n, args.max_states);
    } else {
        throw usage_error("unknown algorithm '" + args.algorithm + "'");
    }

    nlohmann::json out;
    out["algorithm"] = args.algorithm;
    out["n"] = instance.n;
    out["m"] = instance.m;
    out["allocation"] = allocation_to_json(*result);
    nlohmann::json utilities = nlohmann::json::array();
    for (int i = 0; i < instance.n; ++i) {
        utilities.push_back(vals[static_cast<std::size_t>(i)].value(result->bundle(i)).str());
    }
    out["utilities"] = std::move(utilities);
    out["fairness"] = fairness_report_to_json(
        fairness_report(*result, vals, cs, args.pareto, args.max_states));
    if (trace) out["rounds"] = trace->round_count();

    if (!args.trace_path.empty()) {
        if (!trace) throw usage_error("--trace is only meaningful for --algorithm half-efx");
        std::ofstream tf(args.trace_path);
        if (!tf) throw usage_error("cannot write trace file: " + args.trace_path);
        tf << trace_to_json(*trace).dump(2) << "\n";
    }
    print_json(out);
    return kExitOk;
}

int main_impl(int argc, char** argv) {
    CLI::App app{"Exact fair-division toolkit: EFX solvers, fairness checkers, and the "
                 "Kneser-graph local-search lab"};
    app.require_subcommand(1);

    // ---- solve ----
    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Run an allocation algorithm on an instance");
    solve->add_option("--instance", solve_args.instance_path, "Instance JSON file")->required();
    solve->add_option("--algorithm", solve_args.algorithm,
                      "leximin | leximin++ | mnw | cut-and-choose | half-efx | same-ranking | "
                      "two-player-additive | efx-po-identical")
        ->required();
    solve->add_option("--c", solve_args.c_raw, "c-EFX level to report, e.g. 1/2 (repeatable)");
    solve->add_flag("--no-normalize", solve_args.no_normalize,
                    "Compare raw utilities even for distinct valuations");
    solve->add_flag("--pareto", solve_args.pareto, "Also report Pareto optimality");
    solve->add_option("--trace", solve_args.trace_path, "Write the half-efx round trace to this file");
    solve->add_option("--jobs", solve_args.jobs, "Parallelism hint for exhaustive scans");
    solve->add_option("--max-states", solve_args.max_states, "Exhaustive scan budget");
    solve->add_flag("--allow-nonmonotone", solve_args.allow_nonmonotone,
                    "Accept non-monotone table valuations");

    // ---- check ----
    std::string check_instance, check_allocation;
    std::vector<std::string> check_c;
    bool check_pareto = false, check_partial = false, check_allow_nonmono = false;
    std::uint64_t check_max_states = kDefaultEnumCap;
    CLI::App* check = app.add_subcommand("check", "Evaluate fairness of a given allocation");
    check->add_option("--instance", check_instance, "Instance JSON file")->required();
    check->add_option("--allocation", check_allocation, "Allocation JSON file")->required();
    check->add_option("--c", check_c, "c-EFX level to report (repeatable)");
    check->add_flag("--pareto", check_pareto, "Also report Pareto optimality");
    check->add_flag("--partial", check_partial, "Accept partial allocations");
    check->add_flag("--allow-nonmonotone", check_allow_nonmono, "Accept non-monotone table valuations");
    check->add_option("--max-states", check_max_states, "Exhaustive scan budget");

    // ---- enumerate ----
    std::string enum_instance;
    bool enum_require_po = false;
    int enum_jobs = 1;
    std::uint64_t enum_max_states = kDefaultEnumCap;
    CLI::App* enumerate = app.add_subcommand("enumerate", "Exhaustively classify EFX allocations");
    enumerate->add_option("--instance", enum_instance, "Instance JSON file")->required();
    enumerate->add_flag("--require-po", enum_require_po, "Keep only Pareto-optimal witnesses");
    enumerate->add_option("--jobs", enum_jobs, "Parallelism hint");
    enumerate->add_option("--max-states", enum_max_states, "Exhaustive scan budget");

    // ---- fixtures ----
    bool fixtures_run = false;
    std::string fixtures_write_dir;
    CLI::App* fixtures = app.add_subcommand("fixtures", "List, run, or export the bundled fixtures");
    fixtures->add_flag("--run", fixtures_run, "Execute every fixture assertion");
    fixtures->add_option("--write", fixtures_write_dir, "Write fixture instance files to a directory");

    // ---- lab ----
    CLI::App* lab = app.add_subcommand("lab", "Kneser-graph local-search laboratory");
    lab->require_subcommand(1);

    int corr_k = 2;
    std::uint64_t corr_seed = 0;
    CLI::App* corr = lab->add_subcommand(
        "correspondence", "EFX <-> local-maximum correspondence on the reduction instance");
    corr->add_option("--k", corr_k, "Odd-graph parameter (m = 2k+1)");
    corr->add_option("--seed", corr_seed, "Random score oracle seed");

    int diam_k = 2;
    CLI::App* diam = lab->add_subcommand("diameter", "Breadth-first diameter of K(2k+1, k)");
    diam->add_option("--k", diam_k, "Odd-graph parameter");

    int bound_k = 2, bound_r = 1;
    std::uint64_t bound_samples = 0, bound_seed = 0;
    CLI::App* bound = lab->add_subcommand("boundary", "Minimum boundary size vs the beta(r) bound");
    bound->add_option("--k", bound_k, "Odd-graph parameter");
    bound->add_option("--r", bound_r, "Vertex-subset size")->required();
    bound->add_option("--samples", bound_samples, "Sample count for graphs too large to exhaust");
    bound->add_option("--seed", bound_seed, "Sampling seed");

    int beta_k = 2;
    CLI::App* beta = lab->add_subcommand("beta", "Monotonicity of beta(r) up to r_max");
    beta->add_option("--k", beta_k, "Odd-graph parameter");

    int cross_n = 5, cross_k = 2;
    CLI::App* cross = lab->add_subcommand("cross-intersect",
                                          "Exhaustive cross-intersecting family product bound");
    cross->add_option("--n", cross_n, "Ground-set size");
    cross->add_option("--k", cross_k, "Subset size");

    int ls_k = 2;
    std::uint64_t ls_seed = 0;
    int ls_start = -1;
    CLI::App* ls = lab->add_subcommand("local-search", "Steepest-ascent run with query counters");
    ls->add_option("--k", ls_k, "Odd-graph parameter");
    ls->add_option("--seed", ls_seed, "Random score oracle seed");
    ls->add_option("--start", ls_start, "Start vertex index (default: colex-first)");

    CLI11_PARSE(app, argc, argv);

    if (*solve) return cmd_solve(solve_args);

    if (*check) {
        const InstanceFile instance = parse_instance_file(check_instance, check_allow_nonmono);
        const Allocation alloc =
            parse_allocation_file(check_allocation, instance.n, instance.m, check_partial);
        const FairnessReport rep = fairness_report(alloc, instance.valuations,
                                                   parse_c_values(check_c), check_pareto,
                                                   check_max_states);
        print_json(fairness_report_to_json(rep));
        return kExitOk;
    }

    if (*enumerate) {
        const InstanceFile instance = parse_instance_file(enum_instance);
        const EfxExistenceReport rep =
            efx_existence_report(instance.valuations, enum_require_po, enum_max_states, enum_jobs);
        print_json(existence_report_to_json(rep));
        return kExitOk;
    }

    if (*fixtures) {
        if (!fixtures_write_dir.empty()) {
            for (const Fixture& f : bundled_fixtures()) {
                const std::string path = fixtures_write_dir + "/" + f.id + ".json";
                std::ofstream out(path);
                if (!out) throw usage_error("cannot write fixture file: " + path);
                out << instance_to_json(f.instance).dump(2) << "\n";
                std::cout << "wrote " << path << "\n";
            }
            return kExitOk;
        }
        if (fixtures_run) {
            const int failures = run_all_fixtures(std::cout);
            std::cout << (failures == 0 ? "all fixtures pass" : std::to_string(failures) + " failures")
                      << "\n";
            return failures == 0 ? kExitOk : kExitAssertion;
        }
        for (const Fixture& f : bundled_fixtures()) {
            std::cout << f.id << "  (" << f.instance.n << " players, " << f.instance.m
                      << " goods): " << f.instance.metadata << "\n";
        }
        return kExitOk;
    }

    if (*corr) {
        auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(2 * corr_k + 1, corr_k, corr_seed));
        const bool holds = verify_correspondence(corr_k, oracle);
        print_json({{"k", corr_k},
                    {"seed", corr_seed},
                    {"holds", holds},
                    {"oracle_queries", oracle->total_queries()},
                    {"distinct_queries", oracle->distinct_queries()}});
        return holds ? kExitOk : kExitAssertion;
    }
    if (*diam) {
        const int d = odd_graph_diameter(diam_k);
        print_json({{"k", diam_k}, {"diameter", d}, {"expected", diam_k}, {"holds", d == diam_k}});
        return d == diam_k ? kExitOk : kExitAssertion;
    }
    if (*bound) {
        const KneserGraph g(2 * bound_k + 1, bound_k);
        const auto samples = bound_samples == 0 ? std::nullopt : std::optional<std::uint64_t>(bound_samples);
        const BoundaryBoundResult res = verify_boundary_bound(g, bound_r, samples, bound_seed);
        print_json({{"k", bound_k},
                    {"r", bound_r},
                    {"mu", res.mu},
                    {"beta", res.beta.str()},
                    {"holds", res.holds},
                    {"exhaustive", res.exhaustive}});
        return res.holds ? kExitOk : kExitAssertion;
    }
    if (*beta) {
        const bool holds = verify_beta_monotone(beta_k);
        print_json({{"k", beta_k},
                    {"r_max", binomial_u64(2 * beta_k, beta_k - 1)},
                    {"holds", holds}});
        return holds ? kExitOk : kExitAssertion;
    }
    if (*cross) {
        const CrossIntersectResult res = verify_cross_intersecting(cross_n, cross_k);
        print_json({{"n", cross_n},
                    {"k", cross_k},
                    {"max_product", res.max_product},
                    {"bound", res.bound},
                    {"holds", res.holds},
                    {"tight", res.tight}});
        return res.holds ? kExitOk : kExitAssertion;
    }
    if (*ls) {
        const KneserGraph g(2 * ls_k + 1, ls_k);
        const ScoreOracle oracle = ScoreOracle::random(2 * ls_k + 1, ls_k, ls_seed);
        const LocalSearchResult res = run_local_search(
            g, oracle, ls_start < 0 ? std::nullopt : std::optional<int>(ls_start));
        print_json({{"k", ls_k},
                    {"seed", ls_seed},
                    {"local_max", res.local_max},
                    {"vertex", g.vertex(res.local_max).to_string()},
                    {"steps", res.steps},
                    {"total_queries", res.total_queries},
                    {"distinct_queries", res.distinct_queries},
                    {"graph_vertices", g.vertex_count()}});
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return main_impl(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitAssertion;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAssertion;
    }
}
