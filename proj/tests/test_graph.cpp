#include <gtest/gtest.h>

#include <filesystem>
#include <vector>

#include "netrel/components.hpp"
#include "netrel/graph.hpp"
#include "netrel/io.hpp"
#include "oracles.hpp"

using namespace netrel;

namespace {

Graph path_graph(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

TEST(Graph, BuildsSortedSymmetricAdjacency) {
    const std::vector<Edge> edges{{2, 0}, {0, 1}, {1, 2}};
    const Graph g = Graph::from_edges(3, edges);
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    for (NodeId u = 0; u < 3; ++u) {
        EXPECT_EQ(g.degree(u), 2u);
        for (NodeId v : g.neighbors(u)) EXPECT_TRUE(g.has_edge(v, u));
    }
    EXPECT_EQ(g.neighbors(0)[0], 1u);
    EXPECT_EQ(g.neighbors(0)[1], 2u);
}

TEST(Graph, RejectsSelfLoopsParallelEdgesAndBadIds) {
    EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}}),
                 std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 2}}), std::invalid_argument);
}

TEST(Graph, EdgeCountMatchesAdjacencyHalfSum) {
    const Graph g = oracles::random_graph(40, 0.1, 7);
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) degree_sum += g.degree(u);
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(Partition, InverseImageIsExact) {
    const Partition p({0, 1, 0, 2, 1}, 3);
    EXPECT_EQ(p.community_count(), 3u);
    EXPECT_EQ(p.members(0).size(), 2u);
    EXPECT_EQ(p.members(0)[0], 0u);
    EXPECT_EQ(p.members(0)[1], 2u);
    for (std::uint32_t j = 0; j < p.community_count(); ++j) {
        for (NodeId u : p.members(j)) EXPECT_EQ(p.community_of(u), j);
    }
}

TEST(Partition, RejectsOutOfRangeCommunity) {
    EXPECT_THROW(Partition({0, 3}, 3), std::invalid_argument);
}

TEST(LargestConnectedComponent, ConnectedPath) {
    const auto lcc = largest_connected_component(path_graph(3));
    EXPECT_EQ(lcc, (std::vector<NodeId>{0, 1, 2}));
}

TEST(LargestConnectedComponent, SizeDominance) {
    // triangle {0,1,2} and edge {3,4}
    const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}});
    EXPECT_EQ(largest_connected_component(g), (std::vector<NodeId>{0, 1, 2}));
}

TEST(LargestConnectedComponent, TieBreaksBySmallestNodeId) {
    const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    EXPECT_EQ(largest_connected_component(g), (std::vector<NodeId>{0, 1}));
    const auto components = connected_components(g);
    ASSERT_EQ(components.size(), 2u);
    EXPECT_EQ(components[0].size(), components[1].size());
}

TEST(LargestConnectedComponent, EmptyGraph) {
    EXPECT_TRUE(largest_connected_component(Graph()).empty());
}

TEST(LargestConnectedComponent, InducedSubgraphIsConnected) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = oracles::random_graph(60, 0.03, 1000 + seed);
        const auto sub = induced_subgraph(g, largest_connected_component(g));
        EXPECT_TRUE(is_connected(sub.graph));
    }
}

TEST(InducedSubgraph, TriangleToEdge) {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    const auto sub = induced_subgraph(g, std::vector<NodeId>{0, 1});
    EXPECT_EQ(sub.graph.node_count(), 2u);
    EXPECT_EQ(sub.graph.edge_count(), 1u);
}

TEST(InducedSubgraph, IdentityCase) {
    const Graph g = oracles::random_graph(25, 0.2, 11);
    const std::vector<NodeId> all = [&] {
        std::vector<NodeId> v(g.node_count());
        std::iota(v.begin(), v.end(), 0);
        return v;
    }();
    const auto sub = induced_subgraph(g, all);
    EXPECT_EQ(sub.graph.edge_count(), g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        EXPECT_EQ(sub.to_original[u], u);
        EXPECT_EQ(sub.to_local(u), u);
        EXPECT_EQ(sub.graph.degree(u), g.degree(u));
    }
}

TEST(InducedSubgraph, DropsInternalEdgesOnly) {
    const auto sub = induced_subgraph(path_graph(3), std::vector<NodeId>{0, 2});
    EXPECT_EQ(sub.graph.node_count(), 2u);
    EXPECT_EQ(sub.graph.edge_count(), 0u);
}

TEST(InducedSubgraph, RejectsForeignNodes) {
    EXPECT_THROW(induced_subgraph(path_graph(3), std::vector<NodeId>{0, 5}),
                 std::invalid_argument);
}

TEST(EdgeListIo, RoundTripsRandomGraphs) {
    const auto dir = std::filesystem::temp_directory_path() / "netrel_test_io";
    std::filesystem::create_directories(dir);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = oracles::random_graph(50, 0.1, 500 + seed);
        const auto path = dir / ("g" + std::to_string(seed) + ".edges");
        write_edge_list(path, g);
        const Graph back = read_edge_list(path, g.node_count());
        EXPECT_EQ(back.edges(), g.edges());
    }
}

TEST(CommunityIo, RoundTrips) {
    const auto dir = std::filesystem::temp_directory_path() / "netrel_test_io";
    std::filesystem::create_directories(dir);
    const Partition p({1, 0, 2, 2, 0, 1}, 3);
    const auto path = dir / "p.communities";
    write_communities(path, p);
    const Partition back = read_communities(path);
    ASSERT_EQ(back.node_count(), p.node_count());
    for (NodeId u = 0; u < p.node_count(); ++u) {
        EXPECT_EQ(back.community_of(u), p.community_of(u));
    }
}

TEST(FormatDouble, RoundTripsExactly) {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        double x = (rng.uniform01() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(12)));
        EXPECT_EQ(parse_double(format_double(x)), x);
    }
    EXPECT_EQ(parse_double(format_double(0.1)), 0.1);
    EXPECT_EQ(format_double(0.1), "0.1");
}

}  // namespace
