#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "netrel/components.hpp"
#include "netrel/graph.hpp"

namespace netrel {

/// Exact diameter by BFS from every node. The graph must be connected;
/// callers working with fragmented graphs pass the LCC-induced subgraph.
inline NodeId diameter(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) throw std::invalid_argument("diameter of an empty graph is undefined");
    constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> dist(n);
    std::vector<NodeId> frontier;
    frontier.reserve(n);
    NodeId longest = 0;
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnset);
        frontier.clear();
        frontier.push_back(s);
        dist[s] = 0;
        NodeId reached = 1;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const NodeId u = frontier[head];
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] == kUnset) {
                    dist[v] = dist[u] + 1;
                    longest = std::max(longest, dist[v]);
                    ++reached;
                    frontier.push_back(v);
                }
            }
        }
        if (reached != n) {
            throw std::invalid_argument("diameter requires a connected graph");
        }
    }
    return longest;
}

/// Mean over all nodes of triangles(u) / (deg(u) choose 2); degree < 2
/// contributes 0.
inline double average_local_clustering(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return 0.0;
    std::vector<bool> mark(n, false);
    double total = 0.0;
    for (NodeId u = 0; u < n; ++u) {
        const auto nb = g.neighbors(u);
        const std::size_t deg = nb.size();
        if (deg < 2) continue;
        for (NodeId v : nb) mark[v] = true;
        std::size_t wedge_hits = 0;  // counts each triangle edge twice
        for (NodeId v : nb) {
            for (NodeId w : g.neighbors(v)) {
                if (mark[w]) ++wedge_hits;
            }
        }
        for (NodeId v : nb) mark[v] = false;
        const double triangles = static_cast<double>(wedge_hits) / 2.0;
        total += triangles / (static_cast<double>(deg) * static_cast<double>(deg - 1) / 2.0);
    }
    return total / static_cast<double>(n);
}

/// Newman-Girvan modularity of a partition:
/// Q = sum_j [ L_j/m - (d_j/2m)^2 ], L_j intra-community edges, d_j total degree.
inline double modularity(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count()) {
        throw std::invalid_argument("partition does not cover the graph");
    }
    const double m = static_cast<double>(g.edge_count());
    if (g.edge_count() == 0) {
        throw std::invalid_argument("modularity is undefined for an edgeless graph");
    }
    const std::uint32_t k = p.community_count();
    std::vector<double> intra(k, 0.0);
    std::vector<double> degree_sum(k, 0.0);
    g.for_each_edge([&](NodeId u, NodeId v) {
        const std::uint32_t cu = p.community_of(u);
        const std::uint32_t cv = p.community_of(v);
        degree_sum[cu] += 1.0;
        degree_sum[cv] += 1.0;
        if (cu == cv) intra[cu] += 1.0;
    });
    double q = 0.0;
    for (std::uint32_t j = 0; j < k; ++j) {
        const double fraction = degree_sum[j] / (2.0 * m);
        q += intra[j] / m - fraction * fraction;
    }
    return q;
}

struct InstanceStatistics {
    double nodes = 0;
    double edges = 0;
    double diameter = 0;     // of the largest connected component
    double communities = 0;
    double clustering = 0;
    double modularity = 0;
};

inline InstanceStatistics instance_statistics(const Graph& g, const Partition& p) {
    InstanceStatistics s;
    s.nodes = static_cast<double>(g.node_count());
    s.edges = static_cast<double>(g.edge_count());
    const auto lcc = largest_connected_component(g);
    s.diameter = static_cast<double>(diameter(induced_subgraph(g, lcc).graph));
    s.communities = static_cast<double>(p.community_count());
    s.clustering = average_local_clustering(g);
    s.modularity = modularity(g, p);
    return s;
}

struct MetricSummary {
    double mean = 0;
    double stddev = 0;  // sample standard deviation; 0 for a single instance
};

struct SummaryStatistics {
    MetricSummary nodes, edges, diameter, communities, clustering, modularity;
    std::size_t instance_count = 0;
};

namespace detail {
inline MetricSummary summarize_metric(std::span<const InstanceStatistics> xs,
                                      double InstanceStatistics::*field) {
    MetricSummary s;
    const double n = static_cast<double>(xs.size());
    for (const auto& x : xs) s.mean += x.*field;
    s.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (const auto& x : xs) {
            const double d = x.*field - s.mean;
            ss += d * d;
        }
        s.stddev = std::sqrt(ss / (n - 1.0));
    }
    return s;
}
}  // namespace detail

inline SummaryStatistics summary_statistics(std::span<const InstanceStatistics> instances) {
    if (instances.empty()) {
        throw std::invalid_argument("summary_statistics requires at least one instance");
    }
    SummaryStatistics s;
    s.instance_count = instances.size();
    s.nodes = detail::summarize_metric(instances, &InstanceStatistics::nodes);
    s.edges = detail::summarize_metric(instances, &InstanceStatistics::edges);
    s.diameter = detail::summarize_metric(instances, &InstanceStatistics::diameter);
    s.communities = detail::summarize_metric(instances, &InstanceStatistics::communities);
    s.clustering = detail::summarize_metric(instances, &InstanceStatistics::clustering);
    s.modularity = detail::summarize_metric(instances, &InstanceStatistics::modularity);
    return s;
}

}  // namespace netrel
