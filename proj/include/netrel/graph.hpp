#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netrel {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected, unweighted simple graph over dense node ids 0..n-1.
/// CSR adjacency with sorted neighbor lists; immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an undirected edge list (each edge listed once,
    /// either orientation). Rejects self-loops, parallel edges, and
    /// out-of-range endpoints.
    static Graph from_edges(NodeId node_count, std::span<const Edge> edges) {
        Graph g;
        g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
        for (const auto& [u, v] : edges) {
            if (u >= node_count || v >= node_count) {
                throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) +
                                            " " + std::to_string(v));
            }
            if (u == v) {
                throw std::invalid_argument("self-loop at node " + std::to_string(u));
            }
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (std::size_t i = 1; i < g.offsets_.size(); ++i) {
            g.offsets_[i] += g.offsets_[i - 1];
        }
        g.adj_.resize(2 * edges.size());
        std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            g.adj_[cursor[u]++] = v;
            g.adj_[cursor[v]++] = u;
        }
        for (NodeId u = 0; u < node_count; ++u) {
            const auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
            const auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
            std::sort(begin, end);
            if (std::adjacent_find(begin, end) != end) {
                throw std::invalid_argument("parallel edge at node " + std::to_string(u));
            }
        }
        g.edge_count_ = edges.size();
        return g;
    }

    NodeId node_count() const {
        return offsets_.empty() ? 0 : static_cast<NodeId>(offsets_.size() - 1);
    }

    std::size_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    NodeId degree(NodeId u) const { return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]); }

    bool has_edge(NodeId u, NodeId v) const {
        const auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Visits each edge exactly once, with u < v.
    template <class F>
    void for_each_edge(F&& f) const {
        for (NodeId u = 0; u < node_count(); ++u) {
            for (NodeId v : neighbors(u)) {
                if (u < v) f(u, v);
            }
        }
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
        return out;
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adj_;
    std::size_t edge_count_ = 0;
};

/// Total, non-overlapping node -> community mapping together with the exact
/// inverse member lists (sorted ascending).
class Partition {
public:
    Partition() = default;

    Partition(std::vector<std::uint32_t> community_of, std::uint32_t community_count)
        : community_of_(std::move(community_of)), members_(community_count) {
        for (NodeId u = 0; u < community_of_.size(); ++u) {
            const std::uint32_t j = community_of_[u];
            if (j >= community_count) {
                throw std::invalid_argument("community id " + std::to_string(j) +
                                            " out of range for node " + std::to_string(u));
            }
            members_[j].push_back(u);
        }
    }

    std::uint32_t community_count() const { return static_cast<std::uint32_t>(members_.size()); }

    NodeId node_count() const { return static_cast<NodeId>(community_of_.size()); }

    std::uint32_t community_of(NodeId u) const { return community_of_.at(u); }

    std::span<const NodeId> members(std::uint32_t j) const {
        return {members_.at(j).data(), members_.at(j).size()};
    }

    std::span<const std::uint32_t> assignments() const {
        return {community_of_.data(), community_of_.size()};
    }

private:
    std::vector<std::uint32_t> community_of_;
    std::vector<std::vector<NodeId>> members_;
};

}  // namespace netrel
