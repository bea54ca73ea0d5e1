#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "netrel/graph.hpp"

namespace netrel {

/// Connected components as sorted node lists, in order of discovery when
/// scanning seeds ascending (so the first component contains node 0, etc.).
inline std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<std::vector<NodeId>> components;
    std::vector<bool> visited(n, false);
    std::vector<NodeId> frontier;
    for (NodeId seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        std::vector<NodeId> component;
        frontier.clear();
        frontier.push_back(seed);
        visited[seed] = true;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const NodeId u = frontier[head];
            component.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (!visited[v]) {
                    visited[v] = true;
                    frontier.push_back(v);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

/// Node set (sorted) of a maximum-size component. Ties go to the component
/// with the smallest minimum node id, which is the one discovered first.
inline std::vector<NodeId> largest_connected_component(const Graph& g) {
    auto components = connected_components(g);
    std::size_t best = 0;
    for (std::size_t i = 1; i < components.size(); ++i) {
        if (components[i].size() > components[best].size()) best = i;
    }
    if (components.empty()) return {};
    return std::move(components[best]);
}

inline bool is_connected(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return true;
    std::vector<bool> visited(n, false);
    std::vector<NodeId> frontier{0};
    visited[0] = true;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        for (NodeId v : g.neighbors(frontier[head])) {
            if (!visited[v]) {
                visited[v] = true;
                ++reached;
                frontier.push_back(v);
            }
        }
    }
    return reached == n;
}

/// Induced subgraph with contiguous relabeled ids plus the relabeling map.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> to_original;  // new id -> original id, ascending

    /// original id -> new id; throws if the node is not in the subgraph.
    NodeId to_local(NodeId original) const {
        const auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
        if (it == to_original.end() || *it != original) {
            throw std::out_of_range("node " + std::to_string(original) + " not in subgraph");
        }
        return static_cast<NodeId>(it - to_original.begin());
    }
};

inline Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    Subgraph sub;
    sub.to_original.assign(nodes.begin(), nodes.end());
    std::sort(sub.to_original.begin(), sub.to_original.end());
    sub.to_original.erase(std::unique(sub.to_original.begin(), sub.to_original.end()),
                          sub.to_original.end());
    for (NodeId u : sub.to_original) {
        if (u >= g.node_count()) {
            throw std::invalid_argument("subgraph node " + std::to_string(u) +
                                        " outside the graph");
        }
    }
    std::vector<Edge> edges;
    for (NodeId local_u = 0; local_u < sub.to_original.size(); ++local_u) {
        const NodeId u = sub.to_original[local_u];
        for (NodeId v : g.neighbors(u)) {
            if (v <= u) continue;
            const auto it = std::lower_bound(sub.to_original.begin(), sub.to_original.end(), v);
            if (it != sub.to_original.end() && *it == v) {
                edges.emplace_back(local_u, static_cast<NodeId>(it - sub.to_original.begin()));
            }
        }
    }
    sub.graph = Graph::from_edges(static_cast<NodeId>(sub.to_original.size()), edges);
    return sub;
}

}  // namespace netrel
