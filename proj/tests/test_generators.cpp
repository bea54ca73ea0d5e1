#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "netrel/generators.hpp"
#include "netrel/metrics.hpp"
#include "oracles.hpp"

using namespace netrel;

namespace {

TEST(Crg, DeterministicProbabilitiesGiveExactEdges) {
    const auto inst = generate_crg(CrgParams{4, 2, 1.0, 0.0}, 9);
    EXPECT_EQ(inst.graph.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));
    EXPECT_EQ(inst.partition.community_of(0), inst.partition.community_of(1));
    EXPECT_EQ(inst.partition.community_of(2), inst.partition.community_of(3));
    EXPECT_NE(inst.partition.community_of(0), inst.partition.community_of(2));
}

TEST(Crg, ZeroProbabilitiesGiveEmptyGraph) {
    const auto inst = generate_crg(CrgParams{50, 5, 0.0, 0.0}, 1);
    EXPECT_EQ(inst.graph.edge_count(), 0u);
}

TEST(Crg, NearEqualCommunitySizes) {
    const auto inst = generate_crg(CrgParams{1000, 25, 0.0, 0.0}, 1);
    for (std::uint32_t j = 0; j < 25; ++j) EXPECT_EQ(inst.partition.members(j).size(), 40u);
    const auto uneven = generate_crg(CrgParams{10, 3, 0.0, 0.0}, 1);
    std::multiset<std::size_t> sizes;
    for (std::uint32_t j = 0; j < 3; ++j) sizes.insert(uneven.partition.members(j).size());
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{3, 3, 4}));
}

TEST(Crg, BitIdenticalForFixedSeed) {
    const CrgParams params{300, 6, 0.15, 0.01};
    const auto a = generate_crg(params, 777);
    const auto b = generate_crg(params, 777);
    EXPECT_EQ(a.graph.edges(), b.graph.edges());
    const auto c = generate_crg(params, 778);
    EXPECT_NE(a.graph.edges(), c.graph.edges());
}

TEST(Crg, EdgeCountWithinFourSigmaOfBinomialExpectation) {
    const CrgParams params{1000, 25, 0.2, 0.005};
    const double intra_pairs = 25.0 * (40.0 * 39.0 / 2.0);
    const double total_pairs = 1000.0 * 999.0 / 2.0;
    const double inter_pairs = total_pairs - intra_pairs;
    const double mean = intra_pairs * params.p_intra + inter_pairs * params.p_inter;
    const double var = intra_pairs * params.p_intra * (1 - params.p_intra) +
                       inter_pairs * params.p_inter * (1 - params.p_inter);
    double total = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        total += static_cast<double>(generate_crg(params, 10000 + s).graph.edge_count());
    }
    const double batch_mean = total / seeds;
    const double sigma_of_mean = std::sqrt(var / seeds);
    EXPECT_NEAR(batch_mean, mean, 4 * sigma_of_mean);
}

TEST(Crg, RejectsInvalidParams) {
    EXPECT_THROW(generate_crg(CrgParams{10, 11, 0.5, 0.1}, 1), std::invalid_argument);
    EXPECT_THROW(generate_crg(CrgParams{10, 0, 0.5, 0.1}, 1), std::invalid_argument);
    EXPECT_THROW(generate_crg(CrgParams{10, 2, 1.5, 0.1}, 1), std::invalid_argument);
    EXPECT_THROW(generate_crg(CrgParams{10, 2, 0.5, -0.1}, 1), std::invalid_argument);
}

TEST(Lfr, InvariantsHoldAcrossSeedsAndMu) {
    for (const double mu : {0.15, 0.4, 0.8, 0.95}) {
        const auto params = paper_lfr_params(mu);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto inst = generate_lfr(params, seed);
            ASSERT_EQ(inst.graph.node_count(), params.n);
            // degree cap and community size bounds
            for (NodeId u = 0; u < params.n; ++u) {
                EXPECT_LE(inst.graph.degree(u), params.max_degree);
            }
            std::size_t members_total = 0;
            for (std::uint32_t j = 0; j < inst.partition.community_count(); ++j) {
                const auto size = inst.partition.members(j).size();
                EXPECT_GE(size, params.min_community);
                EXPECT_LE(size, params.max_community);
                members_total += size;
            }
            EXPECT_EQ(members_total, params.n);
        }
    }
}

TEST(Lfr, DeterministicForFixedSeed) {
    const auto params = paper_lfr_params(0.4);
    const auto a = generate_lfr(params, 321);
    const auto b = generate_lfr(params, 321);
    EXPECT_EQ(a.graph.edges(), b.graph.edges());
    ASSERT_EQ(a.partition.community_count(), b.partition.community_count());
    for (NodeId u = 0; u < params.n; ++u) {
        EXPECT_EQ(a.partition.community_of(u), b.partition.community_of(u));
    }
}

TEST(Lfr, RealizedMixingNearMu) {
    for (const double mu : {0.2, 0.4, 0.8}) {
        const auto inst = generate_lfr(paper_lfr_params(mu), 55);
        double mix = 0.0;
        int counted = 0;
        for (NodeId u = 0; u < inst.graph.node_count(); ++u) {
            const auto nb = inst.graph.neighbors(u);
            if (nb.empty()) continue;
            int external = 0;
            for (NodeId v : nb) {
                if (inst.partition.community_of(u) != inst.partition.community_of(v)) ++external;
            }
            mix += static_cast<double>(external) / static_cast<double>(nb.size());
            ++counted;
        }
        EXPECT_NEAR(mix / counted, mu, 0.03) << "mu = " << mu;
    }
}

TEST(Lfr, TargetAndRealizedDegreesAgree) {
    // rewiring preserves the drawn degree sequence exactly; the Spearman
    // guard would catch an implementation slip that reshuffles degrees
    const auto params = paper_lfr_params(0.4);
    Rng rng(444);
    const auto degrees = lfr_detail::sample_degrees(
        params, lfr_detail::solve_min_degree(params.avg_degree, params.max_degree,
                                             params.degree_exponent),
        rng);
    ASSERT_TRUE(degrees.has_value());

    const auto inst = generate_lfr(params, 444);
    std::vector<double> realized(inst.graph.node_count());
    std::uint64_t realized_sum = 0;
    for (NodeId u = 0; u < inst.graph.node_count(); ++u) {
        realized[u] = static_cast<double>(inst.graph.degree(u));
        realized_sum += inst.graph.degree(u);
    }
    std::vector<double> target(degrees->begin(), degrees->end());
    std::uint64_t target_sum = 0;
    for (auto d : *degrees) target_sum += d;
    EXPECT_EQ(realized_sum, target_sum);
    EXPECT_GT(oracles::spearman(target, realized), 0.99);
}

TEST(Lfr, MinimumDegreeSolverHitsTargetAverage) {
    // expected mean within 2% of 10 for the reference parameterization
    const std::uint32_t dmin = lfr_detail::solve_min_degree(10.0, 50, 2.0);
    EXPECT_EQ(dmin, 4u);
    const double mean = lfr_detail::truncated_power_law_mean(dmin, 50, 2.0);
    EXPECT_NEAR(mean, 10.0, 0.2);
    // the smallest reachable expectation is ~2.77 (dmin = 1), so a target
    // average of 1 is out of range
    EXPECT_THROW(lfr_detail::solve_min_degree(1.0, 50, 2.0), GenerationError);
}

TEST(Lfr, CommunitySizesSumToN) {
    const auto params = paper_lfr_params(0.4);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto sizes = lfr_detail::sample_community_sizes(params, rng);
        ASSERT_TRUE(sizes.has_value());
        std::uint64_t total = 0;
        for (auto s : *sizes) {
            EXPECT_GE(s, params.min_community);
            EXPECT_LE(s, params.max_community);
            total += s;
        }
        EXPECT_EQ(total, params.n);
    }
}

TEST(Lfr, GraphicalityRepairProducesGraphicalSequences) {
    EXPECT_TRUE(lfr_detail::is_graphical({3, 3, 3, 2, 1}));
    EXPECT_FALSE(lfr_detail::is_graphical({4, 4, 3, 2, 1}));
    EXPECT_TRUE(lfr_detail::is_graphical({}));
    EXPECT_TRUE(lfr_detail::is_graphical({0, 0}));
}

TEST(Lfr, RejectsInvalidParams) {
    auto p = paper_lfr_params(0.4);
    p.mu = 0.0;
    EXPECT_THROW(generate_lfr(p, 1), std::invalid_argument);
    p = paper_lfr_params(0.4);
    p.min_community = 200;
    p.max_community = 100;
    EXPECT_THROW(generate_lfr(p, 1), std::invalid_argument);
    p = paper_lfr_params(0.4);
    p.avg_degree = 60.0;
    EXPECT_THROW(generate_lfr(p, 1), std::invalid_argument);
}

TEST(NamedConfig, MatchesReferenceParameterization) {
    const auto strong = std::get<CrgParams>(named_config({ConfigTag::crg_strong, {}}));
    EXPECT_EQ(strong.n, 1000u);
    EXPECT_EQ(strong.k, 25u);
    EXPECT_DOUBLE_EQ(strong.p_intra, 0.2);
    EXPECT_DOUBLE_EQ(strong.p_inter, 0.005);

    const auto weak = std::get<CrgParams>(named_config({ConfigTag::crg_weak, {}}));
    EXPECT_DOUBLE_EQ(weak.p_intra, 0.1);
    EXPECT_DOUBLE_EQ(weak.p_inter, 0.01);

    const auto lfr_strong = std::get<LfrParams>(named_config({ConfigTag::lfr_strong, {}}));
    EXPECT_DOUBLE_EQ(lfr_strong.mu, 0.4);
    const auto lfr_weak = std::get<LfrParams>(named_config({ConfigTag::lfr_weak, {}}));
    EXPECT_DOUBLE_EQ(lfr_weak.mu, 0.8);
    EXPECT_DOUBLE_EQ(lfr_weak.avg_degree, 10.0);
    EXPECT_EQ(lfr_weak.max_degree, 50u);
    EXPECT_EQ(lfr_weak.min_community, 5u);
    EXPECT_EQ(lfr_weak.max_community, 100u);

    const auto varying = std::get<LfrParams>(named_config({ConfigTag::lfr_varying, 0.25}));
    EXPECT_DOUBLE_EQ(varying.mu, 0.25);
}

TEST(NamedConfig, RejectsOffGridMu) {
    EXPECT_THROW(named_config({ConfigTag::lfr_varying, 0.17}), std::invalid_argument);
    EXPECT_THROW(named_config({ConfigTag::lfr_varying, 0.10}), std::invalid_argument);
    EXPECT_THROW(named_config({ConfigTag::lfr_varying, 1.0}), std::invalid_argument);
    EXPECT_NO_THROW(named_config({ConfigTag::lfr_varying, 0.95}));
    EXPECT_NO_THROW(named_config({ConfigTag::lfr_varying, 0.15}));
}

TEST(NamedConfig, NamesRoundTrip) {
    for (const auto& id : lfr_varying_grid()) {
        const auto back = config_from_name(config_name(id));
        EXPECT_EQ(back.tag, ConfigTag::lfr_varying);
        EXPECT_NEAR(back.mu, id.mu, 1e-12);
    }
    EXPECT_EQ(config_from_name("crg_strong").tag, ConfigTag::crg_strong);
    EXPECT_EQ(config_from_name("lfr_weak").tag, ConfigTag::lfr_weak);
    EXPECT_THROW(config_from_name("nope"), std::invalid_argument);
    EXPECT_EQ(config_name({ConfigTag::lfr_varying, 0.4}), "lfr_varying_0.40");
}

TEST(NamedConfig, OrdinalsAreStableAndDistinct) {
    std::set<int> seen;
    for (ConfigTag tag : {ConfigTag::crg_strong, ConfigTag::crg_weak, ConfigTag::lfr_strong,
                          ConfigTag::lfr_weak}) {
        seen.insert(config_ordinal({tag, {}}));
    }
    for (const auto& id : lfr_varying_grid()) seen.insert(config_ordinal(id));
    EXPECT_EQ(seen.size(), 21u);
    EXPECT_EQ(config_ordinal({ConfigTag::crg_strong, {}}), 0);
    EXPECT_EQ(config_ordinal({ConfigTag::lfr_varying, 0.15}), 4);
    EXPECT_EQ(config_ordinal({ConfigTag::lfr_varying, 0.95}), 20);
}

}  // namespace

namespace {

TEST(Lfr, InfeasibleAssignmentFailsWithStage) {
    // valid parameters whose internal degrees cannot fit any community:
    // avg degree ~40 with communities capped at 10 members
    LfrParams p;
    p.n = 200;
    p.avg_degree = 40.0;
    p.max_degree = 45;
    p.degree_exponent = 2.0;
    p.min_community = 5;
    p.max_community = 10;
    p.community_exponent = 2.0;
    p.mu = 0.15;
    try {
        generate_lfr(p, 7);
        FAIL() << "expected GenerationError";
    } catch (const GenerationError& e) {
        EXPECT_EQ(e.stage(), "community_assignment");
    }
}

}  // namespace
