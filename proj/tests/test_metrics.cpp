#include <gtest/gtest.h>

#include <vector>

#include "netrel/metrics.hpp"
#include "oracles.hpp"

using namespace netrel;

namespace {

Graph path_graph(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

Graph complete_graph(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

Graph star_graph(NodeId leaves) {
    std::vector<Edge> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, edges);
}

TEST(Diameter, PathAndComplete) {
    EXPECT_EQ(diameter(path_graph(4)), 3u);
    EXPECT_EQ(diameter(complete_graph(5)), 1u);
    for (NodeId n = 2; n <= 9; ++n) {
        EXPECT_EQ(diameter(complete_graph(n)), 1u);
        EXPECT_EQ(diameter(path_graph(n)), n - 1);
    }
}

TEST(Diameter, RejectsDisconnected) {
    const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    EXPECT_THROW(diameter(g), std::invalid_argument);
}

TEST(Clustering, TriangleIsOne) {
    EXPECT_DOUBLE_EQ(average_local_clustering(complete_graph(3)), 1.0);
}

TEST(Clustering, StarIsZero) {
    EXPECT_DOUBLE_EQ(average_local_clustering(star_graph(4)), 0.0);
}

TEST(Clustering, CompleteGraphIsOne) {
    EXPECT_DOUBLE_EQ(average_local_clustering(complete_graph(6)), 1.0);
}

TEST(Modularity, SingleCommunityIsZero) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = oracles::random_graph(30, 0.2, seed);
        if (g.edge_count() == 0) continue;
        const Partition p(std::vector<std::uint32_t>(g.node_count(), 0), 1);
        EXPECT_NEAR(modularity(g, p), 0.0, 1e-12);
    }
}

TEST(Modularity, TwoTrianglesJoinedByBridge) {
    // communities = the two triangles; Q = 2*(3/7 - (7/14)^2) = 5/14
    const Graph g = Graph::from_edges(
        6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    const Partition p({0, 0, 0, 1, 1, 1}, 2);
    EXPECT_NEAR(modularity(g, p), 5.0 / 14.0, 1e-12);
}

TEST(Modularity, SingletonCommunitiesMatchDegreeFormula) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = oracles::random_graph(25, 0.25, 100 + seed);
        if (g.edge_count() == 0) continue;
        std::vector<std::uint32_t> own(g.node_count());
        std::iota(own.begin(), own.end(), 0);
        const Partition p(own, g.node_count());
        double expected = 0.0;
        const double m2 = 2.0 * static_cast<double>(g.edge_count());
        for (NodeId u = 0; u < g.node_count(); ++u) {
            const double f = static_cast<double>(g.degree(u)) / m2;
            expected -= f * f;
        }
        EXPECT_NEAR(modularity(g, p), expected, 1e-12);
        EXPECT_LE(modularity(g, p), 0.0);
    }
}

TEST(Modularity, RejectsEdgelessGraph) {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{});
    EXPECT_THROW(modularity(g, Partition({0, 0, 0}, 1)), std::invalid_argument);
}

TEST(Modularity, StaysInRange) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = oracles::random_graph(40, 0.1, 300 + seed);
        if (g.edge_count() == 0) continue;
        std::vector<std::uint32_t> labels(g.node_count());
        Rng rng(seed);
        for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(4));
        const double q = modularity(g, Partition(labels, 4));
        EXPECT_GE(q, -0.5 - 1e-12);
        EXPECT_LE(q, 1.0 + 1e-12);
    }
}

TEST(SummaryStatistics, SingleInstanceHasZeroStd) {
    const Graph g = complete_graph(4);
    const Partition p({0, 0, 1, 1}, 2);
    const auto stats = instance_statistics(g, p);
    const auto s = summary_statistics(std::vector<InstanceStatistics>{stats});
    EXPECT_DOUBLE_EQ(s.nodes.mean, 4.0);
    EXPECT_DOUBLE_EQ(s.edges.mean, 6.0);
    EXPECT_DOUBLE_EQ(s.diameter.mean, 1.0);
    EXPECT_DOUBLE_EQ(s.nodes.stddev, 0.0);
    EXPECT_DOUBLE_EQ(s.modularity.stddev, 0.0);
    EXPECT_EQ(s.instance_count, 1u);
}

TEST(SummaryStatistics, MeanAndSampleStd) {
    InstanceStatistics a, b;
    a.edges = 10;
    b.edges = 14;
    const auto s = summary_statistics(std::vector<InstanceStatistics>{a, b});
    EXPECT_DOUBLE_EQ(s.edges.mean, 12.0);
    EXPECT_NEAR(s.edges.stddev, std::sqrt(8.0), 1e-12);  // sample std, n-1
}

TEST(SummaryStatistics, RejectsEmpty) {
    EXPECT_THROW(summary_statistics(std::vector<InstanceStatistics>{}), std::invalid_argument);
}

TEST(InstanceStatistics, UsesLccDiameter) {
    // path of 4 plus an isolated pair: diameter comes from the LCC
    const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {4, 5}});
    const Partition p({0, 0, 0, 0, 1, 1}, 2);
    EXPECT_DOUBLE_EQ(instance_statistics(g, p).diameter, 3.0);
}

}  // namespace
