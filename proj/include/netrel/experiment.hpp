#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "netrel/error_model.hpp"
#include "netrel/generators.hpp"
#include "netrel/io.hpp"
#include "netrel/reliability.hpp"
#include "netrel/rng.hpp"

namespace netrel {

enum class GraphReuse : std::uint8_t { fresh_per_cell, shared_per_repetition };

inline const char* to_string(GraphReuse g) {
    return g == GraphReuse::fresh_per_cell ? "fresh_per_cell" : "shared_per_repetition";
}

inline GraphReuse graph_reuse_from_string(std::string_view s) {
    if (s == "fresh_per_cell") return GraphReuse::fresh_per_cell;
    if (s == "shared_per_repetition") return GraphReuse::shared_per_repetition;
    throw std::invalid_argument("unknown graph_reuse policy: '" + std::string(s) + "'");
}

/// start, start+step, ... up to stop (inclusive, with tolerance for binary
/// representation of decimal steps).
inline std::vector<double> make_grid(double start, double stop, double step) {
    if (stop < start) throw std::invalid_argument("grid stop below start");
    if (step <= 0.0) {
        if (stop == start) return {start};
        throw std::invalid_argument("grid step must be positive");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

inline std::vector<double> default_alpha_grid() { return make_grid(0.025, 0.5, 0.025); }
inline std::vector<double> default_lambda_grid() { return make_grid(0.0, 3.0, 0.5); }

struct ExperimentPlan {
    std::vector<ConfigId> configs;
    std::vector<double> alpha_grid = default_alpha_grid();
    std::vector<double> lambda_grid = default_lambda_grid();
    int repetitions = 100;
    std::uint64_t master_seed = 1;
    GraphReuse graph_reuse = GraphReuse::fresh_per_cell;

    void validate() const {
        if (configs.empty()) throw std::invalid_argument("plan needs at least one config");
        if (alpha_grid.empty() || lambda_grid.empty()) {
            throw std::invalid_argument("plan grids must be non-empty");
        }
        if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
        for (std::size_t i = 0; i + 1 < alpha_grid.size(); ++i) {
            if (!(alpha_grid[i] < alpha_grid[i + 1])) {
                throw std::invalid_argument("alpha grid must be strictly increasing");
            }
        }
        for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
            if (!(lambda_grid[i] < lambda_grid[i + 1])) {
                throw std::invalid_argument("lambda grid must be strictly increasing");
            }
        }
        for (double a : alpha_grid) {
            if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("alpha values must lie in (0, 1)");
        }
        for (double l : lambda_grid) {
            if (!(l >= 0.0)) throw std::invalid_argument("lambda values must be >= 0");
        }
        for (const auto& c : configs) config_ordinal(c);  // validates lfr_varying mu
    }

    std::size_t trial_count() const {
        return configs.size() * alpha_grid.size() * lambda_grid.size() *
               static_cast<std::size_t>(repetitions);
    }
};

/// One (config, repetition, alpha, lambda, measure) outcome.
struct TrialRecord {
    ConfigId config;
    int repetition = 0;
    std::uint64_t trial_seed = 0;
    double alpha = 0.0;
    double lambda = 0.0;
    Measure measure{};
    bool ok = false;
    double tau = 0.0;                  // valid when ok
    std::uint32_t nodes_compared = 0;  // valid when ok
    std::uint32_t graph_nodes = 0;     // 0 when generation failed
    std::uint64_t graph_edges = 0;
    std::string status;  // "ok" or "error:<detail>"
};

// ---------------------------------------------------------------------------
// Seed derivation: the master seed and the cell coordinates are absorbed one
// by one through the splitmix64 finalizer. Stream tags keep the trial,
// generation, removal, and shared-instance streams disjoint.

namespace seed_detail {
inline constexpr std::uint64_t kTrialStream = 0x747269616C737472ULL;     // "trialstr"
inline constexpr std::uint64_t kGenerateStream = 0x67656E6572617465ULL;  // "generate"
inline constexpr std::uint64_t kRemovalStream = 0x72656D6F76616C73ULL;   // "removals"
inline constexpr std::uint64_t kInstanceStream = 0x696E7374616E6365ULL;  // "instance"
}  // namespace seed_detail

inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, const ConfigId& config,
                                       std::size_t alpha_index, std::size_t lambda_index,
                                       int repetition) {
    std::uint64_t h = splitmix64(master_seed ^ seed_detail::kTrialStream);
    h = splitmix64(h ^ static_cast<std::uint64_t>(config_ordinal(config)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(alpha_index));
    h = splitmix64(h ^ static_cast<std::uint64_t>(lambda_index));
    h = splitmix64(h ^ static_cast<std::uint64_t>(repetition));
    return h;
}

inline std::uint64_t generation_seed(std::uint64_t trial_seed) {
    return splitmix64(trial_seed ^ seed_detail::kGenerateStream);
}

inline std::uint64_t removal_seed(std::uint64_t trial_seed) {
    return splitmix64(trial_seed ^ seed_detail::kRemovalStream);
}

/// Seed of the per-repetition instance under shared_per_repetition (must not
/// depend on the alpha/lambda cell).
inline std::uint64_t instance_seed(std::uint64_t master_seed, const ConfigId& config,
                                   int repetition) {
    std::uint64_t h = splitmix64(master_seed ^ seed_detail::kInstanceStream);
    h = splitmix64(h ^ static_cast<std::uint64_t>(config_ordinal(config)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(repetition));
    return h;
}

/// A generated instance together with its error-free LCC centralities,
/// reusable across (alpha, lambda) cells.
struct SharedInstance {
    GeneratedInstance instance;
    MeasureSet base;
};

inline SharedInstance prepare_instance(const ConfigId& config, std::uint64_t seed) {
    SharedInstance s;
    s.instance = generate(config, seed);
    s.base = lcc_measures(s.instance.graph);
    return s;
}

/// One cell execution: generate (or reuse), remove nodes, score all five
/// measures. Failures become error-tagged records, never exceptions.
inline std::vector<TrialRecord> run_trial(const ConfigId& config, double alpha, double lambda,
                                          std::uint64_t trial_seed,
                                          const SharedInstance* shared = nullptr) {
    std::vector<TrialRecord> records(5);
    for (std::size_t i = 0; i < 5; ++i) {
        auto& r = records[i];
        r.config = config;
        r.trial_seed = trial_seed;
        r.alpha = alpha;
        r.lambda = lambda;
        r.measure = kAllMeasures[i];
    }
    try {
        SharedInstance own;
        const SharedInstance* inst = shared;
        if (inst == nullptr) {
            own = prepare_instance(config, generation_seed(trial_seed));
            inst = &own;
        }
        for (auto& r : records) {
            r.graph_nodes = inst->instance.graph.node_count();
            r.graph_edges = inst->instance.graph.edge_count();
        }
        const auto removal = remove_nodes(inst->instance.graph, inst->instance.partition,
                                          ErrorParams{alpha, lambda}, removal_seed(trial_seed));
        const auto result = reliability_against(inst->base, removal.reduced);
        for (std::size_t i = 0; i < 5; ++i) {
            auto& r = records[i];
            const auto& outcome = result.by_measure[i];
            if (outcome.ok) {
                r.ok = true;
                r.tau = outcome.tau;
                r.nodes_compared = static_cast<std::uint32_t>(result.nodes_compared);
                r.status = "ok";
            } else {
                r.status = "error:" + outcome.error;
            }
        }
    } catch (const GenerationError& e) {
        for (auto& r : records) r.status = std::string("error:generation:") + e.stage();
    } catch (const std::exception& e) {
        for (auto& r : records) r.status = std::string("error:internal:") + e.what();
    }
    return records;
}

namespace experiment_detail {

inline bool record_before(const TrialRecord& a, const TrialRecord& b) {
    const int ca = config_ordinal(a.config), cb = config_ordinal(b.config);
    if (ca != cb) return ca < cb;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.repetition != b.repetition) return a.repetition < b.repetition;
    return static_cast<int>(a.measure) < static_cast<int>(b.measure);
}

}  // namespace experiment_detail

/// Executes every (config, alpha, lambda, repetition) cell across `workers`
/// threads. The output record set is a pure function of the plan: records
/// are sorted by (config, alpha, lambda, repetition, measure) at the end, so
/// scheduling and worker count never change the result.
inline std::vector<TrialRecord> run_experiment(
    const ExperimentPlan& plan, unsigned workers,
    const std::function<void(std::size_t, std::size_t)>& progress = {}) {
    plan.validate();
    if (workers == 0) workers = 1;

    const std::size_t na = plan.alpha_grid.size();
    const std::size_t nl = plan.lambda_grid.size();
    const auto reps = static_cast<std::size_t>(plan.repetitions);
    const bool shared = plan.graph_reuse == GraphReuse::shared_per_repetition;

    // fresh_per_cell: one item per cell; shared_per_repetition: one item per
    // (config, repetition) covering the whole alpha x lambda sheet.
    const std::size_t items =
        plan.configs.size() * reps * (shared ? 1 : na * nl);
    std::vector<std::vector<TrialRecord>> slots(items);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    const auto work = [&]() {
        for (;;) {
            const std::size_t item = next.fetch_add(1);
            if (item >= items) return;
            if (shared) {
                const std::size_t per_config = reps;
                const std::size_t config_idx = item / per_config;
                const auto rep = static_cast<int>(item % per_config);
                const ConfigId& config = plan.configs[config_idx];
                std::vector<TrialRecord> out;
                out.reserve(na * nl * 5);
                try {
                    const auto inst = prepare_instance(
                        config, instance_seed(plan.master_seed, config, rep));
                    for (std::size_t ai = 0; ai < na; ++ai) {
                        for (std::size_t li = 0; li < nl; ++li) {
                            const auto seed = derive_trial_seed(plan.master_seed, config, ai, li,
                                                                rep);
                            auto recs = run_trial(config, plan.alpha_grid[ai],
                                                  plan.lambda_grid[li], seed, &inst);
                            for (auto& r : recs) {
                                r.repetition = rep;
                                out.push_back(std::move(r));
                            }
                        }
                    }
                } catch (const GenerationError& e) {
                    out.clear();
                    for (std::size_t ai = 0; ai < na; ++ai) {
                        for (std::size_t li = 0; li < nl; ++li) {
                            const auto seed = derive_trial_seed(plan.master_seed, config, ai, li,
                                                                rep);
                            for (Measure m : kAllMeasures) {
                                TrialRecord r;
                                r.config = config;
                                r.repetition = rep;
                                r.trial_seed = seed;
                                r.alpha = plan.alpha_grid[ai];
                                r.lambda = plan.lambda_grid[li];
                                r.measure = m;
                                r.status = std::string("error:generation:") + e.stage();
                                out.push_back(std::move(r));
                            }
                        }
                    }
                }
                slots[item] = std::move(out);
            } else {
                const std::size_t cells_per_config = na * nl * reps;
                const std::size_t config_idx = item / cells_per_config;
                const std::size_t in_config = item % cells_per_config;
                const std::size_t ai = in_config / (nl * reps);
                const std::size_t li = (in_config / reps) % nl;
                const auto rep = static_cast<int>(in_config % reps);
                const ConfigId& config = plan.configs[config_idx];
                const auto seed = derive_trial_seed(plan.master_seed, config, ai, li, rep);
                auto recs = run_trial(config, plan.alpha_grid[ai], plan.lambda_grid[li], seed);
                for (auto& r : recs) r.repetition = rep;
                slots[item] = std::move(recs);
            }
            const std::size_t completed = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(completed, items);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::vector<TrialRecord> records;
    records.reserve(plan.trial_count() * 5);
    for (auto& slot : slots) {
        for (auto& r : slot) records.push_back(std::move(r));
    }
    std::sort(records.begin(), records.end(), experiment_detail::record_before);
    return records;
}

// ---------------------------------------------------------------------------
// Results CSV

inline constexpr const char* kRecordsCsvHeader =
    "config,model,mu,repetition,seed,alpha,lambda,measure,tau,nodes_compared,graph_nodes,"
    "graph_edges,status";

inline void write_records_csv(const std::filesystem::path& path,
                              std::span<const TrialRecord> records) {
    auto out = io_detail::open_output(path);
    out << kRecordsCsvHeader << '\n';
    for (const auto& r : records) {
        const ModelTag model = config_model(r.config);
        out << config_name(r.config) << ',' << to_string(model) << ',';
        if (model == ModelTag::lfr) {
            const auto params = named_config(r.config);
            out << format_double(std::get<LfrParams>(params).mu);
        }
        out << ',' << r.repetition << ',' << r.trial_seed << ',' << format_double(r.alpha) << ','
            << format_double(r.lambda) << ',' << to_string(r.measure) << ',';
        if (r.ok) out << format_double(r.tau);
        out << ',';
        if (r.ok) out << r.nodes_compared;
        out << ',';
        if (r.graph_nodes > 0) out << r.graph_nodes;
        out << ',';
        if (r.graph_nodes > 0) out << r.graph_edges;
        out << ',' << r.status << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::vector<TrialRecord> read_records_csv(const std::filesystem::path& path) {
    auto in = io_detail::open_input(path);
    std::string line;
    if (!std::getline(in, line) || io_detail::trim(line) != kRecordsCsvHeader) {
        throw std::runtime_error(path.string() + ": unexpected results header");
    }
    std::vector<TrialRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = io_detail::trim(line);
        if (t.empty()) continue;
        const auto f = io_detail::split(t, ',');
        if (f.size() != 13) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 13 fields");
        }
        TrialRecord r;
        r.config = config_from_name(f[0]);
        r.repetition = static_cast<int>(parse_u64(f[3]));
        r.trial_seed = parse_u64(f[4]);
        r.alpha = parse_double(f[5]);
        r.lambda = parse_double(f[6]);
        r.measure = measure_from_string(f[7]);
        r.ok = !f[8].empty();
        if (r.ok) {
            r.tau = parse_double(f[8]);
            r.nodes_compared = static_cast<std::uint32_t>(parse_u64(f[9]));
        }
        if (!f[10].empty()) r.graph_nodes = static_cast<std::uint32_t>(parse_u64(f[10]));
        if (!f[11].empty()) r.graph_edges = parse_u64(f[11]);
        r.status = std::string(f[12]);
        records.push_back(std::move(r));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Per-cell quartile summaries (the data behind box plots)

struct CellSummary {
    ConfigId config;
    double alpha = 0.0;
    double lambda = 0.0;
    Measure measure{};
    std::size_t count = 0;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

namespace experiment_detail {

// linear interpolation between order statistics (the common "type 7" rule)
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 == sorted.size()) return sorted[lo];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace experiment_detail

/// Min/Q1/median/Q3/max of tau per (config, alpha, lambda, measure) cell.
/// Only successful records contribute; a cell with no successful records is
/// an error.
inline std::vector<CellSummary> summarize_cells(std::span<const TrialRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize_cells: no records");
    std::vector<const TrialRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    // cell grouping order: measure before repetition, unlike the file order
    std::sort(sorted.begin(), sorted.end(), [](const TrialRecord* a, const TrialRecord* b) {
        const int ca = config_ordinal(a->config), cb = config_ordinal(b->config);
        if (ca != cb) return ca < cb;
        if (a->alpha != b->alpha) return a->alpha < b->alpha;
        if (a->lambda != b->lambda) return a->lambda < b->lambda;
        if (a->measure != b->measure) {
            return static_cast<int>(a->measure) < static_cast<int>(b->measure);
        }
        return a->repetition < b->repetition;
    });

    const auto same_cell = [](const TrialRecord& a, const TrialRecord& b) {
        return config_ordinal(a.config) == config_ordinal(b.config) && a.alpha == b.alpha &&
               a.lambda == b.lambda && a.measure == b.measure;
    };

    std::vector<CellSummary> out;
    std::size_t i = 0;
    std::vector<double> taus;
    while (i < sorted.size()) {
        std::size_t j = i;
        taus.clear();
        while (j < sorted.size() && same_cell(*sorted[i], *sorted[j])) {
            if (sorted[j]->ok) taus.push_back(sorted[j]->tau);
            ++j;
        }
        const auto& head = *sorted[i];
        if (taus.empty()) {
            throw std::invalid_argument(
                "summarize_cells: cell (" + config_name(head.config) + ", alpha=" +
                format_double(head.alpha) + ", lambda=" + format_double(head.lambda) + ", " +
                to_string(head.measure) + ") has no successful records");
        }
        std::sort(taus.begin(), taus.end());
        CellSummary cell;
        cell.config = head.config;
        cell.alpha = head.alpha;
        cell.lambda = head.lambda;
        cell.measure = head.measure;
        cell.count = taus.size();
        cell.min = taus.front();
        cell.q1 = experiment_detail::quantile_sorted(taus, 0.25);
        cell.median = experiment_detail::quantile_sorted(taus, 0.5);
        cell.q3 = experiment_detail::quantile_sorted(taus, 0.75);
        cell.max = taus.back();
        out.push_back(cell);
        i = j;
    }
    return out;
}

inline constexpr const char* kSummaryCsvHeader =
    "config,model,mu,alpha,lambda,measure,count,min,q1,median,q3,max";

inline void write_summary_csv(const std::filesystem::path& path,
                              std::span<const CellSummary> cells) {
    auto out = io_detail::open_output(path);
    out << kSummaryCsvHeader << '\n';
    for (const auto& c : cells) {
        const ModelTag model = config_model(c.config);
        out << config_name(c.config) << ',' << to_string(model) << ',';
        if (model == ModelTag::lfr) {
            out << format_double(std::get<LfrParams>(named_config(c.config)).mu);
        }
        out << ',' << format_double(c.alpha) << ',' << format_double(c.lambda) << ','
            << to_string(c.measure) << ',' << c.count << ',' << format_double(c.min) << ','
            << format_double(c.q1) << ',' << format_double(c.median) << ','
            << format_double(c.q3) << ',' << format_double(c.max) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Plan files: line oriented "key = value"

inline void write_plan(const std::filesystem::path& path, const ExperimentPlan& plan) {
    std::string configs;
    for (std::size_t i = 0; i < plan.configs.size(); ++i) {
        if (i > 0) configs += ", ";
        configs += config_name(plan.configs[i]);
    }
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("configs", configs);
    kv.emplace_back("alpha.start", format_double(plan.alpha_grid.front()));
    kv.emplace_back("alpha.stop", format_double(plan.alpha_grid.back()));
    kv.emplace_back("alpha.step",
                    format_double(plan.alpha_grid.size() > 1
                                      ? plan.alpha_grid[1] - plan.alpha_grid[0]
                                      : 0.0));
    kv.emplace_back("lambda.start", format_double(plan.lambda_grid.front()));
    kv.emplace_back("lambda.stop", format_double(plan.lambda_grid.back()));
    kv.emplace_back("lambda.step",
                    format_double(plan.lambda_grid.size() > 1
                                      ? plan.lambda_grid[1] - plan.lambda_grid[0]
                                      : 0.0));
    kv.emplace_back("repetitions", std::to_string(plan.repetitions));
    kv.emplace_back("master_seed", std::to_string(plan.master_seed));
    kv.emplace_back("graph_reuse", to_string(plan.graph_reuse));
    write_key_values(path, kv);
}

inline ExperimentPlan read_plan(const std::filesystem::path& path) {
    ExperimentPlan plan;
    double alpha_start = 0.025, alpha_stop = 0.5, alpha_step = 0.025;
    double lambda_start = 0.0, lambda_stop = 3.0, lambda_step = 0.5;
    bool have_configs = false;
    for (const auto& [key, value] : read_key_values(path)) {
        if (key == "configs") {
            have_configs = true;
            for (const auto part : io_detail::split(value, ',')) {
                const auto name = io_detail::trim(part);
                if (name.empty()) continue;
                if (name == "lfr_varying") {
                    for (const auto& c : lfr_varying_grid()) plan.configs.push_back(c);
                } else {
                    plan.configs.push_back(config_from_name(name));
                }
            }
        } else if (key == "alpha.start") {
            alpha_start = parse_double(value);
        } else if (key == "alpha.stop") {
            alpha_stop = parse_double(value);
        } else if (key == "alpha.step") {
            alpha_step = parse_double(value);
        } else if (key == "lambda.start") {
            lambda_start = parse_double(value);
        } else if (key == "lambda.stop") {
            lambda_stop = parse_double(value);
        } else if (key == "lambda.step") {
            lambda_step = parse_double(value);
        } else if (key == "repetitions") {
            plan.repetitions = static_cast<int>(parse_u64(value));
        } else if (key == "master_seed") {
            plan.master_seed = parse_u64(value);
        } else if (key == "graph_reuse") {
            plan.graph_reuse = graph_reuse_from_string(value);
        } else {
            throw std::invalid_argument(path.string() + ": unknown plan key '" + key + "'");
        }
    }
    if (!have_configs) throw std::invalid_argument(path.string() + ": plan lacks 'configs'");
    plan.alpha_grid = make_grid(alpha_start, alpha_stop, alpha_step);
    plan.lambda_grid = make_grid(lambda_start, lambda_stop, lambda_step);
    plan.validate();
    return plan;
}

}  // namespace netrel
