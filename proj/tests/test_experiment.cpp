#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "netrel/experiment.hpp"

using namespace netrel;

namespace {

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "netrel_test_experiment";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentPlan tiny_plan() {
    ExperimentPlan plan;
    plan.configs = {{ConfigTag::crg_strong, {}}};
    plan.alpha_grid = {0.1, 0.3};
    plan.lambda_grid = {0.5};
    plan.repetitions = 3;
    plan.master_seed = 17;
    return plan;
}

TEST(MakeGrid, ReferenceGrids) {
    const auto alpha = default_alpha_grid();
    ASSERT_EQ(alpha.size(), 20u);
    EXPECT_DOUBLE_EQ(alpha.front(), 0.025);
    EXPECT_NEAR(alpha.back(), 0.5, 1e-12);
    const auto lambda = default_lambda_grid();
    ASSERT_EQ(lambda.size(), 7u);
    EXPECT_DOUBLE_EQ(lambda.front(), 0.0);
    EXPECT_DOUBLE_EQ(lambda.back(), 3.0);
}

TEST(DeriveTrialSeed, DeterministicAndSensitiveToEveryCoordinate) {
    const ConfigId config{ConfigTag::crg_strong, {}};
    const auto s = derive_trial_seed(1, config, 2, 3, 4);
    EXPECT_EQ(derive_trial_seed(1, config, 2, 3, 4), s);
    EXPECT_NE(derive_trial_seed(2, config, 2, 3, 4), s);
    EXPECT_NE(derive_trial_seed(1, config, 1, 3, 4), s);
    EXPECT_NE(derive_trial_seed(1, config, 2, 2, 4), s);
    EXPECT_NE(derive_trial_seed(1, config, 2, 3, 5), s);
    EXPECT_NE(derive_trial_seed(1, {ConfigTag::crg_weak, {}}, 2, 3, 4), s);
}

TEST(DeriveTrialSeed, NoCollisionsOnTheFullReferenceGrid) {
    std::set<std::uint64_t> seeds;
    std::size_t total = 0;
    for (ConfigTag tag : {ConfigTag::crg_strong, ConfigTag::crg_weak, ConfigTag::lfr_strong,
                          ConfigTag::lfr_weak}) {
        const ConfigId config{tag, {}};
        for (std::size_t ai = 0; ai < 20; ++ai) {
            for (std::size_t li = 0; li < 7; ++li) {
                for (int rep = 0; rep < 100; ++rep) {
                    seeds.insert(derive_trial_seed(42, config, ai, li, rep));
                    ++total;
                }
            }
        }
    }
    EXPECT_EQ(seeds.size(), total);
    EXPECT_EQ(total, 56000u);
}

TEST(RunTrial, ByteIdenticalRecordsForSameSeed) {
    const ConfigId config{ConfigTag::crg_strong, {}};
    const auto a = run_trial(config, 0.2, 1.0, 99);
    const auto b = run_trial(config, 0.2, 1.0, 99);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(a[i].tau, b[i].tau);
        EXPECT_EQ(a[i].nodes_compared, b[i].nodes_compared);
        EXPECT_EQ(a[i].status, b[i].status);
        EXPECT_EQ(a[i].graph_edges, b[i].graph_edges);
        EXPECT_TRUE(a[i].ok);
        EXPECT_GE(a[i].tau, -1.0);
        EXPECT_LE(a[i].tau, 1.0);
    }
}

TEST(RunExperiment, RowCountMatchesPlan) {
    const auto records = run_experiment(tiny_plan(), 2);
    EXPECT_EQ(records.size(), 2u * 1u * 3u * 5u);
    for (const auto& r : records) {
        EXPECT_EQ(r.status, "ok");
        EXPECT_LE(static_cast<double>(r.nodes_compared),
                  r.graph_nodes * (1.0 - r.alpha) + 1.0);
    }
}

TEST(RunExperiment, WorkerCountDoesNotChangeTheArtifact) {
    const auto dir = temp_dir();
    const auto p1 = dir / "w1.csv";
    const auto p4 = dir / "w4.csv";
    write_records_csv(p1, run_experiment(tiny_plan(), 1));
    write_records_csv(p4, run_experiment(tiny_plan(), 4));
    EXPECT_EQ(file_bytes(p1), file_bytes(p4));
}

TEST(RunExperiment, SharedPerRepetitionReusesTheGraph) {
    auto plan = tiny_plan();
    plan.graph_reuse = GraphReuse::shared_per_repetition;
    const auto records = run_experiment(plan, 2);
    EXPECT_EQ(records.size(), 30u);
    // same repetition -> same graph across alpha cells
    const TrialRecord* first = nullptr;
    for (const auto& r : records) {
        if (r.repetition != 0) continue;
        if (!first) {
            first = &r;
        } else {
            EXPECT_EQ(r.graph_edges, first->graph_edges);
        }
    }
    // fresh mode generates a different graph per cell
    const auto fresh = run_experiment(tiny_plan(), 2);
    std::set<std::uint64_t> edge_counts;
    for (const auto& r : fresh) {
        if (r.repetition == 0) edge_counts.insert(r.graph_edges);
    }
    EXPECT_GT(edge_counts.size(), 1u);
}

TEST(RecordsCsv, RoundTrips) {
    const auto dir = temp_dir();
    const auto path = dir / "roundtrip.csv";
    const auto records = run_experiment(tiny_plan(), 2);
    write_records_csv(path, records);
    const auto back = read_records_csv(path);
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(config_name(back[i].config), config_name(records[i].config));
        EXPECT_EQ(back[i].repetition, records[i].repetition);
        EXPECT_EQ(back[i].trial_seed, records[i].trial_seed);
        EXPECT_EQ(back[i].alpha, records[i].alpha);
        EXPECT_EQ(back[i].lambda, records[i].lambda);
        EXPECT_EQ(back[i].measure, records[i].measure);
        EXPECT_EQ(back[i].ok, records[i].ok);
        EXPECT_EQ(back[i].tau, records[i].tau);
        EXPECT_EQ(back[i].nodes_compared, records[i].nodes_compared);
        EXPECT_EQ(back[i].status, records[i].status);
    }
    // header is pinned
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, kRecordsCsvHeader);
}

TEST(SummarizeCells, SingleRecordCell) {
    TrialRecord r;
    r.config = {ConfigTag::crg_strong, {}};
    r.alpha = 0.1;
    r.lambda = 0.0;
    r.measure = Measure::degree;
    r.ok = true;
    r.tau = 0.5;
    r.status = "ok";
    const auto cells = summarize_cells(std::vector<TrialRecord>{r});
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_DOUBLE_EQ(cells[0].min, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].q1, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].median, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].q3, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].max, 0.5);
}

TEST(SummarizeCells, IdenticalValuesCollapseQuartiles) {
    std::vector<TrialRecord> records;
    for (int i = 0; i < 100; ++i) {
        TrialRecord r;
        r.config = {ConfigTag::crg_weak, {}};
        r.alpha = 0.2;
        r.lambda = 1.0;
        r.measure = Measure::pagerank;
        r.repetition = i;
        r.ok = true;
        r.tau = 0.25;
        r.status = "ok";
        records.push_back(r);
    }
    const auto cells = summarize_cells(records);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].count, 100u);
    EXPECT_DOUBLE_EQ(cells[0].q1, 0.25);
    EXPECT_DOUBLE_EQ(cells[0].median, 0.25);
    EXPECT_DOUBLE_EQ(cells[0].q3, 0.25);
}

TEST(SummarizeCells, KnownQuartiles) {
    std::vector<TrialRecord> records;
    const std::vector<double> taus{0.1, 0.2, 0.3, 0.4, 0.5};
    for (std::size_t i = 0; i < taus.size(); ++i) {
        TrialRecord r;
        r.config = {ConfigTag::crg_strong, {}};
        r.alpha = 0.1;
        r.lambda = 0.0;
        r.measure = Measure::degree;
        r.repetition = static_cast<int>(i);
        r.ok = true;
        r.tau = taus[i];
        r.status = "ok";
        records.push_back(r);
    }
    const auto cells = summarize_cells(records);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_DOUBLE_EQ(cells[0].min, 0.1);
    EXPECT_DOUBLE_EQ(cells[0].q1, 0.2);
    EXPECT_DOUBLE_EQ(cells[0].median, 0.3);
    EXPECT_DOUBLE_EQ(cells[0].q3, 0.4);
    EXPECT_DOUBLE_EQ(cells[0].max, 0.5);
}

TEST(SummarizeCells, AllErrorCellIsAnError) {
    TrialRecord r;
    r.config = {ConfigTag::crg_strong, {}};
    r.alpha = 0.1;
    r.lambda = 0.0;
    r.measure = Measure::degree;
    r.ok = false;
    r.status = "error:generation:intra_edges";
    EXPECT_THROW(summarize_cells(std::vector<TrialRecord>{r}), std::invalid_argument);
    EXPECT_THROW(summarize_cells(std::vector<TrialRecord>{}), std::invalid_argument);
}

TEST(PlanFile, RoundTripsAndExpandsVaryingGrid) {
    const auto dir = temp_dir();
    const auto path = dir / "plan.cfg";
    {
        std::ofstream out(path);
        out << "configs = crg_strong, lfr_varying\n";
        out << "alpha.start = 0.1\nalpha.stop = 0.3\nalpha.step = 0.1\n";
        out << "lambda.start = 0\nlambda.stop = 2\nlambda.step = 1\n";
        out << "repetitions = 4\nmaster_seed = 99\ngraph_reuse = shared_per_repetition\n";
    }
    const auto plan = read_plan(path);
    EXPECT_EQ(plan.configs.size(), 1u + 17u);
    EXPECT_EQ(plan.alpha_grid.size(), 3u);
    EXPECT_EQ(plan.lambda_grid.size(), 3u);
    EXPECT_EQ(plan.repetitions, 4);
    EXPECT_EQ(plan.master_seed, 99u);
    EXPECT_EQ(plan.graph_reuse, GraphReuse::shared_per_repetition);

    const auto copy_path = dir / "plan_copy.cfg";
    write_plan(copy_path, plan);
    const auto back = read_plan(copy_path);
    EXPECT_EQ(back.configs.size(), plan.configs.size());
    EXPECT_EQ(back.alpha_grid, plan.alpha_grid);
    EXPECT_EQ(back.lambda_grid, plan.lambda_grid);
}

TEST(PlanFile, RejectsUnknownKeysAndBadGrids) {
    const auto dir = temp_dir();
    const auto path = dir / "bad_plan.cfg";
    {
        std::ofstream out(path);
        out << "configs = crg_strong\nwhatever = 3\n";
    }
    EXPECT_THROW(read_plan(path), std::invalid_argument);

    ExperimentPlan plan;
    plan.configs = {{ConfigTag::crg_strong, {}}};
    plan.alpha_grid = {0.3, 0.1};
    EXPECT_THROW(plan.validate(), std::invalid_argument);
    plan.alpha_grid = {0.0};
    EXPECT_THROW(plan.validate(), std::invalid_argument);
    plan.alpha_grid = {0.1};
    plan.repetitions = 0;
    EXPECT_THROW(plan.validate(), std::invalid_argument);
}

}  // namespace

namespace {

TEST(RunTrial, SmallErrorKeepsTauAboveGate) {
    // cell (crg_strong, alpha=0.025, lambda=0): every measure stays above 0.8
    const ConfigId config{ConfigTag::crg_strong, {}};
    for (std::uint64_t seed : {1001u, 2002u, 3003u}) {
        for (const auto records = run_trial(config, 0.025, 0.0, seed); const auto& r : records) {
            ASSERT_TRUE(r.ok);
            EXPECT_GT(r.tau, 0.8) << to_string(r.measure);
        }
    }
}

TEST(RecordsCsv, ErrorRowsRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "netrel_test_experiment";
    std::filesystem::create_directories(dir);
    TrialRecord ok;
    ok.config = {ConfigTag::lfr_varying, 0.4};
    ok.repetition = 1;
    ok.trial_seed = 12345;
    ok.alpha = 0.1;
    ok.lambda = 2.0;
    ok.measure = Measure::closeness;
    ok.ok = true;
    ok.tau = -0.125;
    ok.nodes_compared = 42;
    ok.graph_nodes = 1000;
    ok.graph_edges = 5000;
    ok.status = "ok";
    TrialRecord err;
    err.config = {ConfigTag::lfr_varying, 0.4};
    err.repetition = 2;
    err.trial_seed = 999;
    err.alpha = 0.2;
    err.lambda = 0.0;
    err.measure = Measure::eigenvector;
    err.ok = false;
    err.status = "error:generation:community_assignment";
    const auto path = dir / "error_rows.csv";
    write_records_csv(path, std::vector<TrialRecord>{ok, err});
    const auto back = read_records_csv(path);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_TRUE(back[0].ok);
    EXPECT_DOUBLE_EQ(back[0].tau, -0.125);
    EXPECT_FALSE(back[1].ok);
    EXPECT_EQ(back[1].status, "error:generation:community_assignment");
    EXPECT_EQ(back[1].graph_nodes, 0u);
}

}  // namespace
