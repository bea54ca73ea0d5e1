#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netrel/centrality.hpp"
#include "netrel/components.hpp"
#include "netrel/errors.hpp"
#include "netrel/graph.hpp"
#include "netrel/kendall.hpp"

namespace netrel {

/// Two centrality vectors restricted to their common node set, positionally
/// aligned.
struct AlignedPair {
    std::vector<NodeId> common_nodes;  // ascending, original labels
    std::vector<double> x;
    std::vector<double> y;
};

inline AlignedPair align(const CentralityVector& a, const CentralityVector& b) {
    AlignedPair out;
    std::size_t i = 0, j = 0;
    while (i < a.nodes.size() && j < b.nodes.size()) {
        if (a.nodes[i] < b.nodes[j]) {
            ++i;
        } else if (b.nodes[j] < a.nodes[i]) {
            ++j;
        } else {
            out.common_nodes.push_back(a.nodes[i]);
            out.x.push_back(a.values[i]);
            out.y.push_back(b.values[j]);
            ++i;
            ++j;
        }
    }
    if (out.common_nodes.size() < 2) {
        throw std::invalid_argument("align: fewer than two common nodes");
    }
    return out;
}

inline CentralityVector compute_measure(const Graph& g, Measure m) {
    switch (m) {
        case Measure::degree: return degree_centrality(g);
        case Measure::closeness: return closeness_centrality(g);
        case Measure::betweenness: return betweenness_centrality(g);
        case Measure::eigenvector: return eigenvector_centrality(g);
        case Measure::pagerank: return pagerank(g);
    }
    throw std::invalid_argument("unknown measure");
}

/// One measure on a graph's largest connected component, keyed by the
/// graph's own node ids.
inline CentralityVector lcc_measure(const Graph& g, Measure m) {
    const auto lcc = largest_connected_component(g);
    const auto sub = induced_subgraph(g, lcc);
    return with_node_ids(compute_measure(sub.graph, m), sub.to_original);
}

/// All five measures on a graph's LCC. Eigenvector and PageRank failures are
/// captured per measure instead of aborting the other four.
struct MeasureSet {
    std::array<CentralityVector, 5> vectors;
    std::array<bool, 5> ok{};
    std::array<std::string, 5> error;
    std::vector<NodeId> lcc;  // ascending, graph-local ids of the host graph
};

inline MeasureSet lcc_measures(const Graph& g) {
    MeasureSet out;
    out.lcc = largest_connected_component(g);
    const auto sub = induced_subgraph(g, out.lcc);
    const NodeId n = sub.graph.node_count();
    const auto sweep = centrality_detail::brandes_sweep(sub.graph);

    for (std::size_t i = 0; i < 3; ++i) {
        out.vectors[i].measure = kAllMeasures[i];
        out.vectors[i].nodes = out.lcc;
        out.vectors[i].values.resize(n);
    }
    for (NodeId u = 0; u < n; ++u) {
        out.vectors[0].values[u] = static_cast<double>(sub.graph.degree(u));
        out.vectors[1].values[u] =
            n > 1 ? static_cast<double>(n - 1) / sweep.distance_sum[u] : 0.0;
        out.vectors[2].values[u] = sweep.betweenness[u] / 2.0;
    }
    out.ok[0] = out.ok[1] = out.ok[2] = true;

    try {
        out.vectors[3] = with_node_ids(eigenvector_centrality(sub.graph), sub.to_original);
        out.ok[3] = true;
    } catch (const ConvergenceError&) {
        out.error[3] = "eigenvector:no_convergence";
    } catch (const std::invalid_argument&) {
        out.error[3] = "eigenvector:invalid_input";
    }
    try {
        out.vectors[4] = with_node_ids(pagerank(sub.graph), sub.to_original);
        out.ok[4] = true;
    } catch (const ConvergenceError&) {
        out.error[4] = "pagerank:no_convergence";
    } catch (const std::invalid_argument&) {
        out.error[4] = "pagerank:invalid_input";
    }
    return out;
}

struct MeasureOutcome {
    bool ok = false;
    double tau = 0.0;
    std::string error;
};

struct TrialReliability {
    std::array<MeasureOutcome, 5> by_measure;
    std::size_t nodes_compared = 0;  // common LCC nodes (measure independent)
};

/// tau_b per measure between precomputed error-free LCC centralities and the
/// reduced graph's LCC centralities, aligned on the common node set.
inline TrialReliability reliability_against(const MeasureSet& base, const Graph& reduced) {
    TrialReliability out;
    const MeasureSet modified = lcc_measures(reduced);
    for (std::size_t i = 0; i < 5; ++i) {
        auto& slot = out.by_measure[i];
        if (!base.ok[i]) {
            slot.error = "base:" + base.error[i];
            continue;
        }
        if (!modified.ok[i]) {
            slot.error = "reduced:" + modified.error[i];
            continue;
        }
        try {
            const auto pair = align(base.vectors[i], modified.vectors[i]);
            out.nodes_compared = pair.common_nodes.size();
            slot.tau = kendall_tau_b(pair.x, pair.y);
            slot.ok = true;
        } catch (const std::domain_error&) {
            slot.error = "tau:degenerate";
        } catch (const std::invalid_argument&) {
            slot.error = "align:too_few_common_nodes";
        }
    }
    return out;
}

struct ReliabilityResult {
    double tau = 0.0;
    std::size_t nodes_compared = 0;
};

/// Reliability of one measure: tau_b(c(G), c(G')) with both vectors computed
/// on the respective graph's LCC and aligned on the common node set.
inline ReliabilityResult measure_reliability(Measure m, const Graph& original,
                                             const Graph& reduced) {
    const auto a = lcc_measure(original, m);
    const auto b = lcc_measure(reduced, m);
    const auto pair = align(a, b);
    return {kendall_tau_b(pair.x, pair.y), pair.common_nodes.size()};
}

inline double reliability(Measure m, const Graph& original, const Graph& reduced) {
    return measure_reliability(m, original, reduced).tau;
}

}  // namespace netrel
