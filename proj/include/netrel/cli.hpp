#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "netrel/experiment.hpp"
#include "netrel/generators.hpp"
#include "netrel/io.hpp"
#include "netrel/reliability.hpp"
#include "netrel/reproduce.hpp"
#include "netrel/stats.hpp"

namespace netrel::cli {

// Exit codes: 0 success, 1 comparison failure, 2 usage error, 3 runtime failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComparisonFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

namespace cli_detail {

struct GenerateArgs {
    std::string config;
    double mu = -1.0;
    std::uint64_t seed = 1;
    std::string out_prefix;
    double alpha = -1.0;
    double lambda = 0.0;
    std::uint64_t removal_seed = 0;
    bool removal_seed_set = false;
    std::string trace_path;
};

inline ConfigId resolve_config(const std::string& name, double mu) {
    if (name == "lfr_varying") {
        if (mu < 0.0) {
            throw std::invalid_argument("--config lfr_varying requires --mu (grid 0.15..0.95)");
        }
        return {ConfigTag::lfr_varying, mu};
    }
    ConfigId id = config_from_name(name);
    if (id.tag == ConfigTag::lfr_varying && mu >= 0.0 && id.mu != mu) {
        throw std::invalid_argument("conflicting mu given for " + name);
    }
    return id;
}

inline int run_generate(const GenerateArgs& args) {
    const ConfigId config = resolve_config(args.config, args.mu);
    const auto inst = generate(config, args.seed);
    const std::filesystem::path prefix(args.out_prefix);
    if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());

    const auto edges_path = args.out_prefix + ".edges";
    const auto comm_path = args.out_prefix + ".communities";
    const auto meta_path = args.out_prefix + ".meta";
    write_edge_list(edges_path, inst.graph);
    write_communities(comm_path, inst.partition);

    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("config", config_name(config));
    meta.emplace_back("model", to_string(inst.model));
    meta.emplace_back("seed", std::to_string(inst.seed));
    if (inst.model == ModelTag::crg) {
        const auto& p = std::get<CrgParams>(inst.params);
        meta.emplace_back("n", std::to_string(p.n));
        meta.emplace_back("k", std::to_string(p.k));
        meta.emplace_back("p_intra", format_double(p.p_intra));
        meta.emplace_back("p_inter", format_double(p.p_inter));
    } else {
        const auto& p = std::get<LfrParams>(inst.params);
        meta.emplace_back("n", std::to_string(p.n));
        meta.emplace_back("avg_degree", format_double(p.avg_degree));
        meta.emplace_back("max_degree", std::to_string(p.max_degree));
        meta.emplace_back("degree_exponent", format_double(p.degree_exponent));
        meta.emplace_back("min_community", std::to_string(p.min_community));
        meta.emplace_back("max_community", std::to_string(p.max_community));
        meta.emplace_back("community_exponent", format_double(p.community_exponent));
        meta.emplace_back("mu", format_double(p.mu));
    }
    meta.emplace_back("nodes", std::to_string(inst.graph.node_count()));
    meta.emplace_back("edges", std::to_string(inst.graph.edge_count()));
    write_key_values(meta_path, meta);
    std::cout << "wrote " << edges_path << ", " << comm_path << ", " << meta_path << "\n";

    if (args.alpha > 0.0) {
        const std::uint64_t rseed =
            args.removal_seed_set ? args.removal_seed : splitmix64(args.seed);
        const auto removal = remove_nodes(inst.graph, inst.partition,
                                          ErrorParams{args.alpha, args.lambda}, rseed);
        const auto reduced_path = args.out_prefix + ".reduced.edges";
        write_edge_list(reduced_path, removal.reduced);
        std::cout << "wrote " << reduced_path << " (" << removal.trace.removed.size()
                  << " nodes removed)\n";
        if (!args.trace_path.empty()) {
            auto out = io_detail::open_output(args.trace_path);
            out << "step,community,node\n";
            for (std::size_t i = 0; i < removal.trace.removed.size(); ++i) {
                const NodeId node = removal.trace.removed[i];
                out << i << ',' << inst.partition.community_of(node) << ',' << node << '\n';
            }
            std::cout << "wrote " << args.trace_path << "\n";
        }
    }
    return kExitOk;
}

inline int run_centrality(const std::string& in_path, const std::string& out_path,
                          const std::string& measure_name) {
    const Graph g = read_edge_list(in_path);
    std::vector<Measure> measures;
    if (measure_name == "all") {
        measures.assign(kAllMeasures.begin(), kAllMeasures.end());
    } else {
        measures.push_back(measure_from_string(measure_name));
    }
    auto out = io_detail::open_output(out_path);
    out << "node,measure,value\n";
    for (Measure m : measures) {
        const auto cv = lcc_measure(g, m);  // values over the LCC, original ids
        for (std::size_t i = 0; i < cv.nodes.size(); ++i) {
            out << cv.nodes[i] << ',' << to_string(m) << ',' << format_double(cv.values[i])
                << '\n';
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

inline int run_run(const std::string& plan_path, const std::string& out_path, unsigned workers) {
    const auto plan = read_plan(plan_path);
    std::cerr << "plan: " << plan.configs.size() << " configs x " << plan.alpha_grid.size()
              << " alphas x " << plan.lambda_grid.size() << " lambdas x " << plan.repetitions
              << " repetitions = " << plan.trial_count() << " trials\n";
    std::size_t last_pct = 0;
    const auto records = run_experiment(plan, workers, [&](std::size_t done, std::size_t total) {
        const std::size_t pct = done * 100 / total;
        if (pct >= last_pct + 5 || done == total) {
            last_pct = pct - pct % 5;
            std::cerr << "progress: " << done << "/" << total << " work items\n";
        }
    });
    write_records_csv(out_path, records);
    std::size_t errors = 0;
    for (const auto& r : records) {
        if (!r.ok) ++errors;
    }
    std::cout << "wrote " << out_path << " (" << records.size() << " rows, " << errors
              << " error rows)\n";
    return errors == 0 ? kExitOk : kExitRuntime;
}

inline int run_summarize(const std::string& in_path, const std::string& out_path) {
    const auto records = read_records_csv(in_path);
    const auto cells = summarize_cells(records);
    write_summary_csv(out_path, cells);
    std::cout << "wrote " << out_path << " (" << cells.size() << " cells)\n";
    return kExitOk;
}

inline int run_fit(const std::string& model, const std::string& in_path,
                   const std::string& out_path, bool print_table) {
    const auto records = read_records_csv(in_path);
    DesignBuild build;
    TableLayout layout;
    if (model == "eq2") {
        build = build_design_eq2(records);
        layout = TableLayout::table2;
    } else if (model == "eq3") {
        build = build_design_eq3(records);
        layout = TableLayout::table3;
    } else {
        throw std::invalid_argument("--model must be eq2 or eq3");
    }
    auto fit = ols(build.X, build.y);
    fit.excluded_error_rows = build.excluded_error_rows;
    write_coefficients_csv(out_path, fit);
    if (print_table) std::cout << report_table_text(fit, layout);
    std::cout << "wrote " << out_path << " (" << fit.coefficients.size() << " coefficients, "
              << fit.rows << " rows, " << fit.excluded_error_rows << " excluded)\n";
    return kExitOk;
}

inline int run_reproduce(const std::string& target_name, int reps, std::uint64_t seed,
                         const std::string& out_dir, unsigned workers) {
    const auto target = reproduce_target_from_string(target_name);
    ReproduceOptions opt;
    opt.reps = reps;
    opt.master_seed = seed;
    opt.out_dir = out_dir;
    opt.workers = workers;
    opt.log = [](const std::string& line) { std::cerr << line << "\n"; };
    const auto report = reproduce(target, opt);
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": actual="
                  << format_double(c.actual);
        if (c.tolerance > 0.0) {
            std::cout << " expected=" << format_double(c.expected) << " +- "
                      << format_double(c.tolerance);
        } else {
            std::cout << " reference=" << format_double(c.expected);
        }
        std::cout << "\n";
    }
    std::cout << "outputs:";
    for (const auto& p : report.outputs) std::cout << ' ' << p.string();
    std::cout << "\n"
              << to_string(target) << ": " << (report.all_pass() ? "all checks passed"
                                                                 : "some checks FAILED")
              << "\n";
    return report.all_pass() ? kExitOk : kExitComparisonFailed;
}

}  // namespace cli_detail

/// Parses argv, validates flags, and routes to the module operations.
inline int dispatch(int argc, const char* const* argv) {
    CLI::App app{
        "netrel - community-structured graph generation, centrality reliability "
        "under community-biased node removal, and regression reporting"};
    app.require_subcommand(1);

    const unsigned default_workers = std::max(1u, std::thread::hardware_concurrency());

    cli_detail::GenerateArgs gen;
    auto* generate = app.add_subcommand(
        "generate", "Generate one graph instance (edge list + communities + metadata)");
    generate
        ->add_option("--config", gen.config,
                     "crg_strong|crg_weak|lfr_strong|lfr_weak|lfr_varying|lfr_varying_<mu>")
        ->required();
    generate->add_option("--mu", gen.mu, "mixing parameter for lfr_varying (grid 0.15..0.95)");
    generate->add_option("--seed", gen.seed, "generation seed (default 1)");
    generate->add_option("--out-prefix", gen.out_prefix, "output path prefix")->required();
    generate->add_option("--alpha", gen.alpha,
                         "also remove ceil(alpha*n) nodes and write <prefix>.reduced.edges");
    generate->add_option("--lambda", gen.lambda, "community bias for the removal pass");
    auto* rseed_opt = generate->add_option("--removal-seed", gen.removal_seed,
                                           "seed for the removal pass (default: derived)");
    generate->add_option("--trace", gen.trace_path, "write a step,community,node removal trace");

    std::string cent_in, cent_out, cent_measure = "all";
    auto* centrality = app.add_subcommand(
        "centrality", "Centrality values on an edge list's largest connected component");
    centrality->add_option("--in", cent_in, "edge-list file")->required();
    centrality->add_option("--out", cent_out, "output CSV (node,measure,value)")->required();
    centrality->add_option("--measure", cent_measure,
                           "all|degree|closeness|betweenness|eigenvector|pagerank");

    std::string run_plan, run_out;
    unsigned run_workers = default_workers;
    auto* run = app.add_subcommand("run", "Execute an experiment plan");
    run->add_option("--plan", run_plan, "plan file (key = value lines)")->required();
    run->add_option("--out", run_out, "results CSV path")->required();
    run->add_option("--workers", run_workers, "worker threads (default: hardware)");

    std::string sum_in, sum_out;
    auto* summarize = app.add_subcommand("summarize", "Per-cell tau quartiles from results");
    summarize->add_option("--in", sum_in, "results CSV")->required();
    summarize->add_option("--out", sum_out, "summary CSV path")->required();

    std::string fit_model, fit_in, fit_out;
    bool fit_print = false;
    auto* fit = app.add_subcommand("fit", "Fit a regression model to results");
    fit->add_option("--model", fit_model, "eq2|eq3")->required();
    fit->add_option("--in", fit_in, "results CSV")->required();
    fit->add_option("--out", fit_out, "coefficients CSV path")->required();
    fit->add_flag("--print-table", fit_print, "print the aligned text table to stdout");

    std::string rep_target, rep_dir = ".";
    int rep_reps = 0;
    std::uint64_t rep_seed = 42;
    unsigned rep_workers = default_workers;
    auto* reproduce = app.add_subcommand(
        "reproduce", "Reproduce a reference table/figure and compare against expected values");
    reproduce->add_option("--target", rep_target, "table1|table2|table3|figure1")->required();
    reproduce->add_option("--reps", rep_reps,
                          "repetitions (defaults: table1/figure1 100, table2 30, table3 20)");
    reproduce->add_option("--seed", rep_seed, "master seed (default 42)");
    reproduce->add_option("--out-dir", rep_dir, "output directory (default .)");
    reproduce->add_option("--workers", rep_workers, "worker threads (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            gen.removal_seed_set = rseed_opt->count() > 0;
            return cli_detail::run_generate(gen);
        }
        if (centrality->parsed()) {
            return cli_detail::run_centrality(cent_in, cent_out, cent_measure);
        }
        if (run->parsed()) return cli_detail::run_run(run_plan, run_out, run_workers);
        if (summarize->parsed()) return cli_detail::run_summarize(sum_in, sum_out);
        if (fit->parsed()) return cli_detail::run_fit(fit_model, fit_in, fit_out, fit_print);
        if (reproduce->parsed()) {
            return cli_detail::run_reproduce(rep_target, rep_reps, rep_seed, rep_dir,
                                             rep_workers);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace netrel::cli
