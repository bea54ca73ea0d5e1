#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "netrel/graph.hpp"
#include "netrel/rng.hpp"

namespace netrel {

/// Node-removal parameters: alpha = fraction of nodes removed,
/// lambda = community-bias strength (0 = uniform missingness).
struct ErrorParams {
    double alpha = 0.0;
    double lambda = 0.0;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("alpha must lie in (0, 1)");
        }
        if (!(lambda >= 0.0)) {
            throw std::invalid_argument("lambda must be non-negative");
        }
    }
};

struct RemovalTrace {
    std::vector<NodeId> removed;                       // in removal order
    std::vector<std::uint32_t> missing_per_community;  // counts at termination
};

/// ceil(alpha * n) with a nudge so decimal alphas whose product is an exact
/// integer (0.1 * 1000) do not round up through binary representation error.
inline std::size_t removal_count(double alpha, std::size_t n) {
    return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
}

/// Selection probability per community: weight(j) = (1 + missing(j))^lambda
/// while community j still has nodes, else 0; normalized to sum 1.
/// Weights are scaled by the largest available base before exponentiation so
/// extreme lambda cannot overflow.
inline std::vector<double> community_selection_distribution(const Partition& p,
                                                            std::span<const std::uint32_t> missing,
                                                            double lambda) {
    const std::uint32_t k = p.community_count();
    if (missing.size() != k) {
        throw std::invalid_argument("missing counts do not match the community count");
    }
    double max_base = 0.0;
    for (std::uint32_t j = 0; j < k; ++j) {
        if (missing[j] > p.members(j).size()) {
            throw std::invalid_argument("missing count exceeds community size");
        }
        if (missing[j] < p.members(j).size()) {
            max_base = std::max(max_base, 1.0 + static_cast<double>(missing[j]));
        }
    }
    if (max_base == 0.0) {
        throw std::invalid_argument("all communities are exhausted");
    }
    std::vector<double> prob(k, 0.0);
    double total = 0.0;
    for (std::uint32_t j = 0; j < k; ++j) {
        if (missing[j] == p.members(j).size()) continue;
        prob[j] = std::pow((1.0 + static_cast<double>(missing[j])) / max_base, lambda);
        total += prob[j];
    }
    for (double& w : prob) w /= total;
    return prob;
}

struct RemovalResult {
    Graph reduced;  // same node-id space; removed nodes become isolated
    RemovalTrace trace;
};

/// The community-biased removal procedure: repeatedly sample a community
/// from community_selection_distribution, then remove one uniformly random
/// remaining node of that community, until ceil(alpha * n) nodes are gone.
/// Surviving nodes keep their original ids.
inline RemovalResult remove_nodes(const Graph& g, const Partition& p, const ErrorParams& params,
                                  std::uint64_t seed) {
    params.validate();
    if (p.node_count() != g.node_count()) {
        throw std::invalid_argument("partition does not cover the graph");
    }
    const std::size_t n = g.node_count();
    const std::size_t target = removal_count(params.alpha, n);
    if (target >= n) {
        throw std::invalid_argument("removal count must leave at least one node");
    }

    const std::uint32_t k = p.community_count();
    std::vector<std::vector<NodeId>> remaining(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        remaining[j].assign(p.members(j).begin(), p.members(j).end());
    }

    Rng rng(seed);
    RemovalTrace trace;
    trace.removed.reserve(target);
    trace.missing_per_community.assign(k, 0);
    std::vector<double> cumulative(k);

    for (std::size_t step = 0; step < target; ++step) {
        const auto prob = community_selection_distribution(p, trace.missing_per_community,
                                                           params.lambda);
        double acc = 0.0;
        for (std::uint32_t j = 0; j < k; ++j) {
            acc += prob[j];
            cumulative[j] = acc;
        }
        const double u = rng.uniform01() * acc;
        std::uint32_t chosen = 0;
        while (chosen + 1 < k && cumulative[chosen] <= u) ++chosen;
        // u == acc can occur through rounding; step back to a non-exhausted
        // community (one always exists while the loop runs)
        while (remaining[chosen].empty()) --chosen;

        auto& pool = remaining[chosen];
        const std::size_t pick = rng.index(pool.size());
        const NodeId node = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();
        trace.removed.push_back(node);
        ++trace.missing_per_community[chosen];
    }

    std::vector<bool> gone(n, false);
    for (NodeId u : trace.removed) gone[u] = true;
    std::vector<Edge> kept;
    kept.reserve(g.edge_count());
    g.for_each_edge([&](NodeId u, NodeId v) {
        if (!gone[u] && !gone[v]) kept.emplace_back(u, v);
    });
    return RemovalResult{Graph::from_edges(static_cast<NodeId>(n), kept), std::move(trace)};
}

}  // namespace netrel
