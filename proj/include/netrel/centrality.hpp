#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netrel/components.hpp"
#include "netrel/errors.hpp"
#include "netrel/graph.hpp"

namespace netrel {

enum class Measure : std::uint8_t { degree, closeness, betweenness, eigenvector, pagerank };

inline constexpr std::array<Measure, 5> kAllMeasures = {
    Measure::degree, Measure::closeness, Measure::betweenness, Measure::eigenvector,
    Measure::pagerank};

inline const char* to_string(Measure m) {
    switch (m) {
        case Measure::degree: return "degree";
        case Measure::closeness: return "closeness";
        case Measure::betweenness: return "betweenness";
        case Measure::eigenvector: return "eigenvector";
        case Measure::pagerank: return "pagerank";
    }
    return "?";
}

inline Measure measure_from_string(std::string_view s) {
    for (Measure m : kAllMeasures) {
        if (s == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown centrality measure: '" + std::string(s) + "'");
}

/// One measure's values over a node set. `nodes` is sorted ascending and
/// `values[i]` belongs to `nodes[i]`; ids are graph-local unless remapped
/// with `with_node_ids`.
struct CentralityVector {
    Measure measure{};
    std::vector<NodeId> nodes;
    std::vector<double> values;
};

/// Replaces graph-local ids with the caller's labels (ascending map keeps
/// the sortedness invariant).
inline CentralityVector with_node_ids(CentralityVector cv, std::span<const NodeId> to_original) {
    for (auto& u : cv.nodes) u = to_original[u];
    return cv;
}

namespace centrality_detail {

inline std::vector<NodeId> identity_nodes(NodeId n) {
    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    return nodes;
}

struct BrandesSweep {
    std::vector<double> betweenness;  // ordered-pair accumulation (twice the unordered value)
    std::vector<double> distance_sum;
};

// One BFS per source computing Brandes dependency accumulation and, as a
// byproduct, each source's total shortest-path distance. Shortest-path
// predecessors are written into a flat buffer sharing the adjacency offsets
// (a node never has more predecessors than neighbors), so the reverse pass
// touches each DAG edge exactly once and the whole sweep is allocation-free
// after setup.
inline BrandesSweep brandes_sweep(const Graph& g) {
    const NodeId n = g.node_count();
    constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
    BrandesSweep out;
    out.betweenness.assign(n, 0.0);
    out.distance_sum.assign(n, 0.0);

    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<NodeId> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::size_t> pred_base(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) pred_base[u + 1] = pred_base[u] + g.degree(u);
    std::vector<NodeId> pred(pred_base[n]);
    std::vector<NodeId> pred_count(n);

    for (NodeId s = 0; s < n; ++s) {
        order.clear();
        std::fill(dist.begin(), dist.end(), kUnset);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(pred_count.begin(), pred_count.end(), 0);
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        double dist_total = 0.0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId u = order[head];
            const NodeId du = dist[u];
            const double su = sigma[u];
            dist_total += static_cast<double>(du);
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] == kUnset) {
                    dist[v] = du + 1;
                    order.push_back(v);
                }
                if (dist[v] == du + 1) {
                    sigma[v] += su;
                    pred[pred_base[v] + pred_count[v]++] = u;
                }
            }
        }
        if (order.size() != n) {
            throw std::invalid_argument("centrality requires a connected graph");
        }
        out.distance_sum[s] = dist_total;

        std::fill(delta.begin(), delta.end(), 0.0);
        for (std::size_t i = order.size(); i-- > 1;) {
            const NodeId w = order[i];
            const double coeff = (1.0 + delta[w]) / sigma[w];
            const std::size_t base = pred_base[w];
            for (NodeId k = 0; k < pred_count[w]; ++k) {
                const NodeId v = pred[base + k];
                delta[v] += sigma[v] * coeff;
            }
            out.betweenness[w] += delta[w];
        }
    }
    return out;
}

}  // namespace centrality_detail

/// value(u) = deg(u)
inline CentralityVector degree_centrality(const Graph& g) {
    CentralityVector cv;
    cv.measure = Measure::degree;
    cv.nodes = centrality_detail::identity_nodes(g.node_count());
    cv.values.reserve(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        cv.values.push_back(static_cast<double>(g.degree(u)));
    }
    return cv;
}

/// value(u) = (n-1) / sum_v dist(u, v); requires a connected graph.
inline CentralityVector closeness_centrality(const Graph& g) {
    const auto sweep = centrality_detail::brandes_sweep(g);
    const NodeId n = g.node_count();
    CentralityVector cv;
    cv.measure = Measure::closeness;
    cv.nodes = centrality_detail::identity_nodes(n);
    cv.values.resize(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        cv.values[u] = n > 1 ? static_cast<double>(n - 1) / sweep.distance_sum[u] : 0.0;
    }
    return cv;
}

/// Unnormalized betweenness over unordered pairs, by Brandes's algorithm.
inline CentralityVector betweenness_centrality(const Graph& g) {
    const auto sweep = centrality_detail::brandes_sweep(g);
    CentralityVector cv;
    cv.measure = Measure::betweenness;
    cv.nodes = centrality_detail::identity_nodes(g.node_count());
    cv.values.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        cv.values[u] = sweep.betweenness[u] / 2.0;  // ordered pairs -> unordered
    }
    return cv;
}

/// Principal adjacency eigenvector by power iteration from the uniform
/// positive vector, Euclidean-normalized each step; converged when the
/// successive-iterate infinity-norm difference drops below tol.
/// Iterates (A+I)x: the eigenvectors are those of A and the shifted
/// spectrum is one-signed, so bipartite graphs (stars, paths) converge
/// instead of oscillating between period-2 iterates.
inline CentralityVector eigenvector_centrality(const Graph& g, double tol = 1e-9,
                                               int max_iter = 1000) {
    const NodeId n = g.node_count();
    if (g.edge_count() == 0) {
        throw std::invalid_argument("eigenvector centrality requires at least one edge");
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("eigenvector centrality requires a connected graph");
    }
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    for (int iter = 1; iter <= max_iter; ++iter) {
        double norm_sq = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double acc = x[u];
            for (NodeId v : g.neighbors(u)) acc += x[v];
            next[u] = acc;
            norm_sq += acc * acc;
        }
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        double diff = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            next[u] *= inv_norm;
            diff = std::max(diff, std::abs(next[u] - x[u]));
        }
        x.swap(next);
        if (diff < tol) {
            CentralityVector cv;
            cv.measure = Measure::eigenvector;
            cv.nodes = centrality_detail::identity_nodes(n);
            cv.values = std::move(x);
            return cv;
        }
    }
    throw ConvergenceError("eigenvector power iteration did not converge", max_iter);
}

/// Fixed point of PR(u) = (1-d)/n + d * sum_{v in adj(u)} PR(v)/deg(v);
/// stops when the L1 change drops below tol; values sum to 1.
inline CentralityVector pagerank(const Graph& g, double damping = 0.85, double tol = 1e-9,
                                 int max_iter = 1000) {
    const NodeId n = g.node_count();
    if (g.edge_count() == 0) {
        throw std::invalid_argument("pagerank requires at least one edge");
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("pagerank requires a connected graph");
    }
    const double teleport = (1.0 - damping) / static_cast<double>(n);
    std::vector<double> pr(n, 1.0 / static_cast<double>(n));
    std::vector<double> contrib(n);
    std::vector<double> next(n);
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (NodeId u = 0; u < n; ++u) contrib[u] = pr[u] / static_cast<double>(g.degree(u));
        double change = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double acc = 0.0;
            for (NodeId v : g.neighbors(u)) acc += contrib[v];
            next[u] = teleport + damping * acc;
            change += std::abs(next[u] - pr[u]);
        }
        pr.swap(next);
        if (change < tol) {
            double sum = 0.0;
            for (double v : pr) sum += v;
            for (double& v : pr) v /= sum;
            CentralityVector cv;
            cv.measure = Measure::pagerank;
            cv.nodes = centrality_detail::identity_nodes(n);
            cv.values = std::move(pr);
            return cv;
        }
    }
    throw ConvergenceError("pagerank iteration did not converge", max_iter);
}

/// All five measures; betweenness and closeness share one BFS sweep.
inline std::array<CentralityVector, 5> all_measures(const Graph& g) {
    const auto sweep = centrality_detail::brandes_sweep(g);
    const NodeId n = g.node_count();
    const auto nodes = centrality_detail::identity_nodes(n);

    std::array<CentralityVector, 5> out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].measure = kAllMeasures[i];
        out[i].nodes = nodes;
    }
    out[0].values.reserve(n);
    for (NodeId u = 0; u < n; ++u) out[0].values.push_back(static_cast<double>(g.degree(u)));
    out[1].values.resize(n, 0.0);
    out[2].values.resize(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        out[1].values[u] = n > 1 ? static_cast<double>(n - 1) / sweep.distance_sum[u] : 0.0;
        out[2].values[u] = sweep.betweenness[u] / 2.0;
    }
    out[3] = eigenvector_centrality(g);
    out[4] = pagerank(g);
    return out;
}

}  // namespace netrel
