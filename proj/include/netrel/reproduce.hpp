#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "netrel/experiment.hpp"
#include "netrel/generators.hpp"
#include "netrel/io.hpp"
#include "netrel/metrics.hpp"
#include "netrel/stats.hpp"

namespace netrel {

enum class ReproduceTarget : std::uint8_t { table1, table2, table3, figure1 };

inline const char* to_string(ReproduceTarget t) {
    switch (t) {
        case ReproduceTarget::table1: return "table1";
        case ReproduceTarget::table2: return "table2";
        case ReproduceTarget::table3: return "table3";
        case ReproduceTarget::figure1: return "figure1";
    }
    return "?";
}

inline ReproduceTarget reproduce_target_from_string(std::string_view s) {
    if (s == "table1") return ReproduceTarget::table1;
    if (s == "table2") return ReproduceTarget::table2;
    if (s == "table3") return ReproduceTarget::table3;
    if (s == "figure1") return ReproduceTarget::figure1;
    throw std::invalid_argument("unknown reproduce target: '" + std::string(s) + "'");
}

struct CheckResult {
    std::string name;
    double actual = 0.0;
    double expected = 0.0;   // reference value (or bound for ordering checks)
    double tolerance = 0.0;  // absolute tolerance; 0 for sign/ordering checks
    bool pass = false;
};

struct ReproduceReport {
    ReproduceTarget target{};
    std::vector<CheckResult> checks;
    std::vector<std::filesystem::path> outputs;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

namespace reference {

// Reference values the reproduction targets are compared against.
// Table rows follow kNamedConfigOrder / kReportMeasureOrder.

struct Table1Row {
    double edges, diameter, communities, clustering, modularity;
};
inline constexpr std::array<Table1Row, 4> kTable1 = {{
    {6380.0, 5.0, 25.0, 0.08, 0.581},  // crg_strong
    {6798.0, 4.9, 25.0, 0.02, 0.253},  // crg_weak
    {5028.0, 6.0, 69.0, 0.18, 0.534},  // lfr_strong
    {5022.0, 5.0, 68.0, 0.03, 0.149},  // lfr_weak
}};

inline constexpr double kTable2Intercept = 1.034;
// per measure x config: (sqrt_alpha, sqrt_alpha_lambda)
inline constexpr std::array<std::array<std::array<double, 2>, 4>, 5> kTable2 = {{
    // betweenness
    {{{-0.783, 0.039}, {-0.766, 0.034}, {-0.567, 0.002}, {-0.580, 0.005}}},
    // closeness
    {{{-0.813, 0.046}, {-0.782, 0.032}, {-0.340, -0.031}, {-0.494, -0.008}}},
    // degree
    {{{-0.698, 0.099}, {-0.663, 0.039}, {-0.372, 0.031}, {-0.413, 0.004}}},
    // eigenvector
    {{{-0.868, 0.110}, {-0.786, 0.040}, {-0.362, -0.016}, {-0.490, -0.010}}},
    // pagerank
    {{{-0.777, 0.094}, {-0.755, 0.039}, {-0.491, 0.038}, {-0.535, 0.006}}},
}};

inline constexpr double kTable3Intercept = 1.037;
// per measure: (sqrt_alpha, sqrt_alpha_lambda, sqrt_alpha_mu, sqrt_alpha_mu_lambda)
inline constexpr std::array<std::array<double, 4>, 5> kTable3 = {{
    {-0.606, -0.008, 0.028, 0.021},   // betweenness
    {-0.239, -0.046, -0.311, 0.045},  // closeness
    {-0.356, 0.062, -0.067, -0.071},  // degree
    {-0.298, -0.020, -0.230, 0.014},  // eigenvector
    {-0.444, 0.065, -0.117, -0.070},  // pagerank
}};

}  // namespace reference

struct ReproduceOptions {
    int reps = 0;  // 0 -> per-target default
    std::uint64_t master_seed = 42;
    std::filesystem::path out_dir = ".";
    unsigned workers = 0;  // 0 -> hardware concurrency
    std::function<void(const std::string&)> log;  // optional progress sink
};

namespace reproduce_detail {

inline void emit(const ReproduceOptions& opt, const std::string& line) {
    if (opt.log) opt.log(line);
}

inline int default_reps(ReproduceTarget t) {
    switch (t) {
        case ReproduceTarget::table1: return 100;
        case ReproduceTarget::table2: return 30;
        case ReproduceTarget::table3: return 20;
        case ReproduceTarget::figure1: return 100;
    }
    return 100;
}

inline unsigned resolve_workers(unsigned workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

inline void band_check(std::vector<CheckResult>& checks, const std::string& name, double actual,
                       double expected, double tolerance) {
    checks.push_back({name, actual, expected, tolerance,
                      std::abs(actual - expected) <= tolerance});
}

inline void sign_check(std::vector<CheckResult>& checks, const std::string& name, double actual,
                       double expected) {
    checks.push_back({name, actual, expected, 0.0,
                      (actual > 0.0) == (expected > 0.0) && actual != 0.0});
}

inline void write_checks_csv(const std::filesystem::path& path,
                             std::span<const CheckResult> checks) {
    auto out = io_detail::open_output(path);
    out << "name,actual,expected,tolerance,pass\n";
    for (const auto& c : checks) {
        out << c.name << ',' << format_double(c.actual) << ',' << format_double(c.expected)
            << ',' << format_double(c.tolerance) << ',' << (c.pass ? "pass" : "fail") << '\n';
    }
}

inline std::function<void(std::size_t, std::size_t)> progress_logger(
    const ReproduceOptions& opt, const std::string& label) {
    if (!opt.log) return {};
    auto last = std::make_shared<std::size_t>(0);
    const auto log = opt.log;
    return [label, log, last](std::size_t done, std::size_t total) {
        const std::size_t pct = done * 100 / total;
        if (pct >= *last + 10 || done == total) {
            *last = pct - pct % 10;
            log(label + ": " + std::to_string(done) + "/" + std::to_string(total) + " items");
        }
    };
}

// ---- table1 ---------------------------------------------------------------

inline ReproduceReport reproduce_table1(const ReproduceOptions& opt, int reps) {
    ReproduceReport report;
    report.target = ReproduceTarget::table1;

    const auto csv_path = opt.out_dir / "table1.csv";
    auto out = io_detail::open_output(csv_path);
    out << "config,instances,nodes_mean,nodes_std,edges_mean,edges_std,diameter_mean,"
           "diameter_std,communities_mean,communities_std,clustering_mean,clustering_std,"
           "modularity_mean,modularity_std\n";

    for (std::size_t ci = 0; ci < kNamedConfigOrder.size(); ++ci) {
        const ConfigId config{kNamedConfigOrder[ci], {}};
        const std::string name = config_name(config);
        emit(opt, "table1: generating " + std::to_string(reps) + " " + name + " instances");
        std::vector<InstanceStatistics> stats;
        stats.reserve(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r) {
            const auto inst = generate(config, instance_seed(opt.master_seed, config, r));
            stats.push_back(instance_statistics(inst.graph, inst.partition));
        }
        const auto s = summary_statistics(stats);
        out << name << ',' << reps << ',' << format_double(s.nodes.mean) << ','
            << format_double(s.nodes.stddev) << ',' << format_double(s.edges.mean) << ','
            << format_double(s.edges.stddev) << ',' << format_double(s.diameter.mean) << ','
            << format_double(s.diameter.stddev) << ',' << format_double(s.communities.mean)
            << ',' << format_double(s.communities.stddev) << ','
            << format_double(s.clustering.mean) << ',' << format_double(s.clustering.stddev)
            << ',' << format_double(s.modularity.mean) << ','
            << format_double(s.modularity.stddev) << '\n';

        const auto& ref = reference::kTable1[ci];
        band_check(report.checks, name + ".nodes", s.nodes.mean, 1000.0, 0.0);
        band_check(report.checks, name + ".edges", s.edges.mean, ref.edges, 0.03 * ref.edges);
        band_check(report.checks, name + ".diameter", s.diameter.mean, ref.diameter, 0.5);
        const bool crg = config_model(config) == ModelTag::crg;
        band_check(report.checks, name + ".communities", s.communities.mean, ref.communities,
                   crg ? 0.0 : 10.0);
        band_check(report.checks, name + ".clustering", s.clustering.mean, ref.clustering, 0.02);
        band_check(report.checks, name + ".modularity", s.modularity.mean, ref.modularity, 0.02);
    }
    out.close();
    report.outputs.push_back(csv_path);
    return report;
}

// ---- table2 ---------------------------------------------------------------

inline ReproduceReport reproduce_table2(const ReproduceOptions& opt, int reps) {
    ReproduceReport report;
    report.target = ReproduceTarget::table2;

    ExperimentPlan plan;
    for (ConfigTag tag : kNamedConfigOrder) plan.configs.push_back({tag, {}});
    plan.repetitions = reps;
    plan.master_seed = opt.master_seed;
    emit(opt, "table2: running " + std::to_string(plan.trial_count()) + " trials");
    const auto records = run_experiment(plan, resolve_workers(opt.workers),
                                        progress_logger(opt, "table2"));

    const auto results_path = opt.out_dir / "table2_results.csv";
    write_records_csv(results_path, records);
    report.outputs.push_back(results_path);

    auto build = build_design_eq2(records);
    auto fit = ols(build.X, build.y);
    fit.excluded_error_rows = build.excluded_error_rows;
    const auto coef_path = opt.out_dir / "table2_coefficients.csv";
    write_coefficients_csv(coef_path, fit);
    report.outputs.push_back(coef_path);
    emit(opt, report_table_text(fit, TableLayout::table2));

    const auto& intercept = fit.find("(all)", "intercept");
    band_check(report.checks, "intercept", intercept.estimate, reference::kTable2Intercept,
               0.03);
    for (std::size_t mi = 0; mi < kReportMeasureOrder.size(); ++mi) {
        for (std::size_t ci = 0; ci < kNamedConfigOrder.size(); ++ci) {
            const std::string group = config_name({kNamedConfigOrder[ci], {}}) + ":" +
                                      to_string(kReportMeasureOrder[mi]);
            static constexpr const char* kTerms[2] = {"sqrt_alpha", "sqrt_alpha_lambda"};
            for (std::size_t t = 0; t < 2; ++t) {
                const double ref = reference::kTable2[mi][ci][t];
                if (std::abs(ref) <= 0.02) continue;
                sign_check(report.checks, group + "/" + kTerms[t] + ".sign",
                           fit.find(group, kTerms[t]).estimate, ref);
            }
        }
    }
    band_check(report.checks, "crg_strong:betweenness/sqrt_alpha",
               fit.find("crg_strong:betweenness", "sqrt_alpha").estimate, -0.783, 0.05);
    band_check(report.checks, "crg_strong:eigenvector/sqrt_alpha_lambda",
               fit.find("crg_strong:eigenvector", "sqrt_alpha_lambda").estimate, 0.110, 0.05);
    band_check(report.checks, "lfr_strong:closeness/sqrt_alpha_lambda",
               fit.find("lfr_strong:closeness", "sqrt_alpha_lambda").estimate, -0.031, 0.05);
    return report;
}

// ---- table3 ---------------------------------------------------------------

inline ReproduceReport reproduce_table3(const ReproduceOptions& opt, int reps) {
    ReproduceReport report;
    report.target = ReproduceTarget::table3;

    ExperimentPlan plan;
    plan.configs = lfr_varying_grid();
    plan.repetitions = reps;
    plan.master_seed = opt.master_seed;
    emit(opt, "table3: running " + std::to_string(plan.trial_count()) + " trials");
    const auto records = run_experiment(plan, resolve_workers(opt.workers),
                                        progress_logger(opt, "table3"));

    const auto results_path = opt.out_dir / "table3_results.csv";
    write_records_csv(results_path, records);
    report.outputs.push_back(results_path);

    auto build = build_design_eq3(records);
    auto fit = ols(build.X, build.y);
    fit.excluded_error_rows = build.excluded_error_rows;
    const auto coef_path = opt.out_dir / "table3_coefficients.csv";
    write_coefficients_csv(coef_path, fit);
    report.outputs.push_back(coef_path);
    emit(opt, report_table_text(fit, TableLayout::table3));

    static constexpr const char* kTerms[4] = {"sqrt_alpha", "sqrt_alpha_lambda", "sqrt_alpha_mu",
                                              "sqrt_alpha_mu_lambda"};
    for (std::size_t mi = 0; mi < kReportMeasureOrder.size(); ++mi) {
        const std::string group = to_string(kReportMeasureOrder[mi]);
        for (std::size_t t = 0; t < 4; ++t) {
            const double ref = reference::kTable3[mi][t];
            if (std::abs(ref) <= 0.02) continue;
            const double est = fit.find(group, kTerms[t]).estimate;
            sign_check(report.checks, group + "/" + kTerms[t] + ".sign", est, ref);
            band_check(report.checks, group + "/" + kTerms[t], est, ref, 0.05);
        }
    }
    return report;
}

// ---- figure1 --------------------------------------------------------------

inline ReproduceReport reproduce_figure1(const ReproduceOptions& opt, int reps) {
    ReproduceReport report;
    report.target = ReproduceTarget::figure1;

    ExperimentPlan plan;
    plan.configs = {{ConfigTag::crg_strong, {}}};
    plan.alpha_grid = {0.1, 0.3, 0.5};
    plan.lambda_grid = {0.0, 2.0};
    plan.repetitions = reps;
    plan.master_seed = opt.master_seed;
    emit(opt, "figure1: running " + std::to_string(plan.trial_count()) + " trials");
    const auto records = run_experiment(plan, resolve_workers(opt.workers),
                                        progress_logger(opt, "figure1"));

    const auto cells = summarize_cells(records);
    const auto quartile_path = opt.out_dir / "figure1_quartiles.csv";
    write_summary_csv(quartile_path, cells);
    report.outputs.push_back(quartile_path);

    const auto cell = [&](double alpha, double lambda, Measure m) -> const CellSummary& {
        for (const auto& c : cells) {
            if (c.alpha == alpha && c.lambda == lambda && c.measure == m) return c;
        }
        throw std::logic_error("figure1: missing cell");
    };

    for (double alpha : plan.alpha_grid) {
        for (Measure m : kAllMeasures) {
            const double biased = cell(alpha, 2.0, m).median;
            const double uniform = cell(alpha, 0.0, m).median;
            report.checks.push_back({"median(lambda=2)>median(lambda=0) alpha=" +
                                         format_double(alpha) + " " + to_string(m),
                                     biased, uniform, 0.0, biased > uniform});
        }
    }
    const auto& eig = cell(0.5, 0.0, Measure::eigenvector);
    const auto& deg = cell(0.5, 0.0, Measure::degree);
    const double eig_iqr = eig.q3 - eig.q1;
    const double deg_iqr = deg.q3 - deg.q1;
    report.checks.push_back({"eigenvector IQR >= degree IQR at alpha=0.5 lambda=0", eig_iqr,
                             deg_iqr, 0.0, eig_iqr >= deg_iqr});
    return report;
}

}  // namespace reproduce_detail

/// Runs the reproduction pipeline for `target` at the requested repetition
/// count, writes the artifact files into out_dir, and compares against the
/// embedded reference values.
inline ReproduceReport reproduce(ReproduceTarget target, const ReproduceOptions& opt = {}) {
    int reps = opt.reps > 0 ? opt.reps : reproduce_detail::default_reps(target);
    if (reps < 10) {
        throw std::invalid_argument("reproduce requires at least 10 repetitions");
    }
    std::filesystem::create_directories(opt.out_dir);
    ReproduceReport report;
    switch (target) {
        case ReproduceTarget::table1:
            report = reproduce_detail::reproduce_table1(opt, reps);
            break;
        case ReproduceTarget::table2:
            report = reproduce_detail::reproduce_table2(opt, reps);
            break;
        case ReproduceTarget::table3:
            report = reproduce_detail::reproduce_table3(opt, reps);
            break;
        case ReproduceTarget::figure1:
            report = reproduce_detail::reproduce_figure1(opt, reps);
            break;
    }
    const auto checks_path = opt.out_dir / (std::string(to_string(target)) + "_checks.csv");
    reproduce_detail::write_checks_csv(checks_path, report.checks);
    report.outputs.push_back(checks_path);
    return report;
}

}  // namespace netrel
