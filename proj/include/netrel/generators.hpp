#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "netrel/errors.hpp"
#include "netrel/graph.hpp"
#include "netrel/rng.hpp"

namespace netrel {

enum class ModelTag : std::uint8_t { crg, lfr };

inline const char* to_string(ModelTag m) { return m == ModelTag::crg ? "crg" : "lfr"; }

/// Clustered random graph (planted partition): k near-equal communities,
/// independent edge probabilities p_intra / p_inter.
struct CrgParams {
    NodeId n = 0;
    std::uint32_t k = 0;
    double p_intra = 0.0;
    double p_inter = 0.0;

    void validate() const {
        if (!(n >= k && k >= 1)) throw std::invalid_argument("CRG requires n >= k >= 1");
        if (!(p_intra >= 0.0 && p_intra <= 1.0 && p_inter >= 0.0 && p_inter <= 1.0)) {
            throw std::invalid_argument("CRG probabilities must lie in [0, 1]");
        }
    }
};

/// LFR benchmark parameters. Exponents are magnitudes: density ~ x^(-exponent).
struct LfrParams {
    NodeId n = 0;
    double avg_degree = 0.0;
    std::uint32_t max_degree = 0;
    double degree_exponent = 2.0;
    std::uint32_t min_community = 0;
    std::uint32_t max_community = 0;
    double community_exponent = 2.0;
    double mu = 0.0;

    void validate() const {
        if (!(min_community >= 1 && min_community <= max_community && max_community <= n)) {
            throw std::invalid_argument("LFR requires 1 <= min_community <= max_community <= n");
        }
        if (!(avg_degree >= 1.0 && avg_degree <= static_cast<double>(max_degree) &&
              max_degree < n)) {
            throw std::invalid_argument("LFR requires 1 <= avg_degree <= max_degree < n");
        }
        if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("LFR requires 0 < mu < 1");
        if (!(degree_exponent > 0.0 && community_exponent > 0.0)) {
            throw std::invalid_argument("LFR exponents are positive magnitudes");
        }
    }
};

struct GeneratedInstance {
    Graph graph;
    Partition partition;
    ModelTag model{};
    std::variant<CrgParams, LfrParams> params;
    std::uint64_t seed = 0;
};

inline GeneratedInstance generate_crg(const CrgParams& params, std::uint64_t seed) {
    params.validate();
    const NodeId n = params.n;
    const std::uint32_t k = params.k;

    // contiguous near-equal blocks (sizes differ by at most one)
    std::vector<std::uint32_t> community_of(n);
    NodeId next = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
        const NodeId size = n / k + (j < n % k ? 1 : 0);
        for (NodeId i = 0; i < size; ++i) community_of[next++] = j;
    }

    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(
        0.5 * params.p_intra * n * (static_cast<double>(n) / k) +
        0.5 * params.p_inter * n * (n - static_cast<double>(n) / k) + 64));
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            const double p = community_of[u] == community_of[v] ? params.p_intra : params.p_inter;
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
        }
    }

    GeneratedInstance inst;
    inst.graph = Graph::from_edges(n, edges);
    inst.partition = Partition(std::move(community_of), k);
    inst.model = ModelTag::crg;
    inst.params = params;
    inst.seed = seed;
    return inst;
}

namespace lfr_detail {

// Retry budget per generation stage; an attempt that fails a stage restarts
// the pipeline on a fresh substream.
inline constexpr int kStageAttempts = 100;

// Discrete truncated power law on [min, max] with density ~ v^(-exponent).
class PowerLawSampler {
public:
    PowerLawSampler(std::uint32_t min, std::uint32_t max, double exponent) : min_(min) {
        cumulative_.reserve(max - min + 1);
        double acc = 0.0;
        for (std::uint32_t v = min; v <= max; ++v) {
            acc += std::pow(static_cast<double>(v), -exponent);
            cumulative_.push_back(acc);
        }
    }

    std::uint32_t sample(Rng& rng) const {
        const double u = rng.uniform01() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
        if (idx == cumulative_.size()) --idx;
        return min_ + static_cast<std::uint32_t>(idx);
    }

private:
    std::uint32_t min_;
    std::vector<double> cumulative_;
};

inline double truncated_power_law_mean(std::uint32_t min, std::uint32_t max, double exponent) {
    double num = 0.0, den = 0.0;
    for (std::uint32_t v = min; v <= max; ++v) {
        const double w = std::pow(static_cast<double>(v), -exponent);
        num += static_cast<double>(v) * w;
        den += w;
    }
    return num / den;
}

// Picks the integer minimum degree whose truncated power law matches the
// target average degree best; the expectation must land within 2%.
inline std::uint32_t solve_min_degree(double avg_degree, std::uint32_t max_degree,
                                      double exponent) {
    std::uint32_t best = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::uint32_t dmin = 1; dmin <= max_degree; ++dmin) {
        const double err = std::abs(truncated_power_law_mean(dmin, max_degree, exponent) -
                                    avg_degree);
        if (err < best_err) {
            best_err = err;
            best = dmin;
        }
    }
    if (best_err > 0.02 * avg_degree) {
        throw GenerationError("degree_sequence",
                              "no minimum degree reaches the target average degree within 2%");
    }
    return best;
}

inline std::optional<std::vector<std::uint32_t>> sample_degrees(const LfrParams& p,
                                                                std::uint32_t min_degree,
                                                                Rng& rng) {
    PowerLawSampler sampler(min_degree, p.max_degree, p.degree_exponent);
    std::vector<std::uint32_t> deg(p.n);
    std::uint64_t total = 0;
    for (auto& d : deg) {
        d = sampler.sample(rng);
        total += d;
    }
    if (total % 2 == 1) {
        // even stub total: shift one uniformly chosen node's degree by one
        for (int tries = 0; tries < 200; ++tries) {
            auto& d = deg[rng.index(deg.size())];
            if (d < p.max_degree) {
                ++d;
                return deg;
            }
            if (d > min_degree) {
                --d;
                return deg;
            }
        }
        return std::nullopt;
    }
    return deg;
}

// Sizes drawn until they sum exactly to n; a draw that would leave an
// unfillable gap (0 < remaining < min_community) is resampled, and the final
// draw is clamped to the remainder when that remainder is a legal size.
inline std::optional<std::vector<std::uint32_t>> sample_community_sizes(const LfrParams& p,
                                                                        Rng& rng) {
    PowerLawSampler sampler(p.min_community, p.max_community, p.community_exponent);
    std::vector<std::uint32_t> sizes;
    std::uint64_t total = 0;
    for (int draws = 0; draws < 10000 && total < p.n; ++draws) {
        const std::uint32_t s = sampler.sample(rng);
        const std::uint64_t remaining = p.n - total;
        if (s > remaining) {
            // remaining >= min_community holds by the gap guard below
            sizes.push_back(static_cast<std::uint32_t>(remaining));
            total = p.n;
            break;
        }
        if (remaining - s > 0 && remaining - s < p.min_community) continue;
        sizes.push_back(s);
        total += s;
    }
    if (total != p.n) return std::nullopt;
    return sizes;
}

// Internal stubs per node: floor((1-mu)*deg) plus a Bernoulli draw on the
// fractional part, capped at deg. The stochastic rounding keeps the expected
// internal fraction at exactly 1-mu for every node; deterministic rounding
// would bias the realized mixing on power-law degree sequences.
inline std::vector<std::uint32_t> internal_degrees(std::span<const std::uint32_t> deg, double mu,
                                                   Rng& rng) {
    std::vector<std::uint32_t> internal(deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i) {
        const double want = (1.0 - mu) * deg[i];
        auto base = static_cast<std::uint32_t>(want);
        if (rng.uniform01() < want - static_cast<double>(base)) ++base;
        internal[i] = std::min(base, deg[i]);
    }
    return internal;
}

struct Assignment {
    std::vector<std::uint32_t> community_of;
    std::vector<std::vector<NodeId>> members;
};

// Random placement with eviction: each homeless node proposes a uniformly
// random community; it fits when internal[u] <= size - 1. Full communities
// evict a uniformly random member, which goes back in the queue.
inline std::optional<Assignment> assign_communities(std::span<const std::uint32_t> internal,
                                                    std::span<const std::uint32_t> sizes,
                                                    Rng& rng) {
    const std::size_t n = internal.size();
    const auto k = static_cast<std::uint32_t>(sizes.size());
    std::uint32_t max_size = 0;
    for (std::uint32_t s : sizes) max_size = std::max(max_size, s);
    for (std::uint32_t d : internal) {
        if (d > max_size - 1) return std::nullopt;  // no community can host this node
    }

    std::vector<NodeId> queue(n);
    for (NodeId u = 0; u < n; ++u) queue[u] = u;
    rng.shuffle(queue);

    Assignment a;
    a.community_of.assign(n, k);
    a.members.resize(k);
    std::size_t head = 0;
    std::size_t ops = 0;
    const std::size_t op_budget = 200 * n;
    while (head < queue.size()) {
        if (++ops > op_budget) return std::nullopt;
        const NodeId u = queue[head];
        const auto j = static_cast<std::uint32_t>(rng.index(k));
        if (internal[u] > sizes[j] - 1) continue;
        if (a.members[j].size() == sizes[j]) {
            const std::size_t victim_idx = rng.index(a.members[j].size());
            const NodeId victim = a.members[j][victim_idx];
            a.members[j][victim_idx] = u;
            a.community_of[u] = j;
            a.community_of[victim] = k;
            queue.push_back(victim);
        } else {
            a.members[j].push_back(u);
            a.community_of[u] = j;
        }
        ++head;
    }
    return a;
}

// A community's internal stub total must be even to pair; when odd, one
// uniformly chosen member moves one stub between its internal and external
// allocation.
inline bool fix_internal_parity(std::vector<std::uint32_t>& internal,
                                std::span<const std::uint32_t> deg, const Assignment& a,
                                std::span<const std::uint32_t> sizes, Rng& rng) {
    for (std::uint32_t j = 0; j < a.members.size(); ++j) {
        std::uint64_t sum = 0;
        for (NodeId u : a.members[j]) sum += internal[u];
        if (sum % 2 == 0) continue;
        bool fixed = false;
        for (int tries = 0; tries < 200 && !fixed; ++tries) {
            const NodeId u = a.members[j][rng.index(a.members[j].size())];
            const bool can_up = internal[u] < std::min(deg[u], sizes[j] - 1);
            const bool can_down = internal[u] >= 1;
            if (can_up && can_down) {
                if (rng.bernoulli(0.5)) ++internal[u]; else --internal[u];
                fixed = true;
            } else if (can_up) {
                ++internal[u];
                fixed = true;
            } else if (can_down) {
                --internal[u];
                fixed = true;
            }
        }
        if (!fixed) return false;
    }
    return true;
}

// Erdos-Gallai: d sorted non-increasing with even sum is graphical iff
// sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k) for all k.
inline bool is_graphical(std::vector<std::uint32_t> d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    std::uint64_t head = 0;
    for (std::size_t k = 1; k <= d.size(); ++k) {
        head += d[k - 1];
        std::uint64_t bound = static_cast<std::uint64_t>(k) * (k - 1);
        for (std::size_t i = k; i < d.size(); ++i) {
            bound += std::min<std::uint64_t>(d[i], k);
        }
        if (head > bound) return false;
    }
    return true;
}

// A community's internal sequence must be realizable as a simple graph.
// While Erdos-Gallai fails, the heaviest members shed internal stubs to the
// external pool two at a time (parity preserved).
inline bool repair_graphicality(std::vector<std::uint32_t>& internal, const Assignment& a) {
    std::vector<std::uint32_t> seq;
    for (const auto& members : a.members) {
        seq.clear();
        for (NodeId u : members) seq.push_back(internal[u]);
        for (int rounds = 0; !is_graphical(seq); ++rounds) {
            if (rounds > 10000) return false;
            NodeId first = members[0];
            for (NodeId u : members) {
                if (internal[u] > internal[first]) first = u;
            }
            bool have_second = false;
            NodeId second = first;
            for (NodeId u : members) {
                if (u == first) continue;
                if (!have_second || internal[u] > internal[second]) {
                    second = u;
                    have_second = true;
                }
            }
            if (have_second && internal[second] > 0) {
                --internal[first];
                --internal[second];
            } else if (internal[first] >= 2) {
                internal[first] -= 2;
            } else {
                return false;
            }
            seq.clear();
            for (NodeId u : members) seq.push_back(internal[u]);
        }
    }
    return true;
}

using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
}

// Configuration-model stub matching with degree-preserving swap repair.
// Hard defects (self-loops, duplicates within the batch or against
// `occupied`) must all be repaired; same-community pairs (when
// `community_of` is given) are repaired best-effort and tolerated if the
// swap budget runs out. On success the accepted edges are appended to
// `out_edges` and inserted into `occupied`.
inline bool match_stubs(std::vector<NodeId> stubs, std::unordered_set<EdgeKey>& occupied,
                        const std::vector<std::uint32_t>* community_of, Rng& rng,
                        std::vector<Edge>& out_edges) {
    if (stubs.empty()) return true;
    if (stubs.size() % 2 != 0) return false;
    rng.shuffle(stubs);
    const std::size_t pair_count = stubs.size() / 2;
    std::vector<Edge> pairs(pair_count);
    std::unordered_map<EdgeKey, int> batch;
    batch.reserve(pair_count * 2);
    for (std::size_t i = 0; i < pair_count; ++i) {
        pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};
        ++batch[edge_key(pairs[i].first, pairs[i].second)];
    }

    const auto hard_bad = [&](const Edge& e) {
        if (e.first == e.second) return true;
        const EdgeKey key = edge_key(e.first, e.second);
        const auto it = batch.find(key);
        return (it != batch.end() && it->second > 1) || occupied.count(key) > 0;
    };
    const auto soft_bad = [&](const Edge& e) {
        return community_of != nullptr && (*community_of)[e.first] == (*community_of)[e.second];
    };
    // placement check used while the two old pairs are detached
    const auto placeable = [&](NodeId x, NodeId y, bool enforce_soft) {
        if (x == y) return false;
        const EdgeKey key = edge_key(x, y);
        if (occupied.count(key) > 0) return false;
        const auto it = batch.find(key);
        if (it != batch.end() && it->second > 0) return false;
        if (enforce_soft && community_of != nullptr &&
            (*community_of)[x] == (*community_of)[y]) {
            return false;
        }
        return true;
    };

    const auto detach = [&](const Edge& e) {
        auto it = batch.find(edge_key(e.first, e.second));
        if (--(it->second) == 0) batch.erase(it);
    };
    const auto attach = [&](const Edge& e) { ++batch[edge_key(e.first, e.second)]; };

    constexpr int kSweeps = 80;
    constexpr int kTriesPerDefect = 40;
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
        const bool enforce_soft = sweep < kSweeps / 2;
        std::vector<std::size_t> defects;
        for (std::size_t i = 0; i < pair_count; ++i) {
            if (hard_bad(pairs[i]) || (enforce_soft && soft_bad(pairs[i]))) defects.push_back(i);
        }
        if (defects.empty()) break;
        for (const std::size_t i : defects) {
            if (!hard_bad(pairs[i]) && !(enforce_soft && soft_bad(pairs[i]))) continue;
            for (int t = 0; t < kTriesPerDefect; ++t) {
                const std::size_t q = rng.index(pair_count);
                if (q == i) continue;
                const Edge a = pairs[i];
                const Edge b = pairs[q];
                // two degree-preserving rewirings; pick one at random
                const bool cross = rng.bernoulli(0.5);
                const Edge na = cross ? Edge{a.first, b.second} : Edge{a.first, b.first};
                const Edge nb = cross ? Edge{b.first, a.second} : Edge{b.second, a.second};
                detach(a);
                detach(b);
                bool ok = placeable(na.first, na.second, enforce_soft);
                if (ok) {
                    attach(na);
                    ok = placeable(nb.first, nb.second, enforce_soft);
                    if (!ok) detach(na);
                }
                if (ok) {
                    attach(nb);
                    pairs[i] = na;
                    pairs[q] = nb;
                    break;
                }
                attach(a);
                attach(b);
            }
        }
    }

    for (const Edge& e : pairs) {
        if (hard_bad(e)) return false;
    }
    for (const Edge& e : pairs) {
        occupied.insert(edge_key(e.first, e.second));
        out_edges.push_back(e);
    }
    return true;
}

// Deterministic Havel-Hakimi realization over the given nodes, then random
// degree-preserving edge switches for uniformity. Used when stub matching
// cannot untangle a dense community. Returns false for non-graphical input.
inline bool havel_hakimi_with_switches(const std::vector<NodeId>& nodes,
                                       std::span<const std::uint32_t> degree_of, Rng& rng,
                                       std::unordered_set<EdgeKey>& occupied,
                                       std::vector<Edge>& out_edges) {
    std::vector<std::pair<std::uint32_t, NodeId>> residual;
    for (NodeId u : nodes) {
        if (degree_of[u] > 0) residual.emplace_back(degree_of[u], u);
    }
    std::vector<Edge> edges;
    while (!residual.empty()) {
        std::sort(residual.begin(), residual.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        while (!residual.empty() && residual.back().first == 0) residual.pop_back();
        if (residual.empty()) break;
        auto [d, u] = residual.front();
        residual.front().first = 0;
        if (d >= residual.size()) return false;
        for (std::uint32_t i = 1; i <= d; ++i) {
            if (residual[i].first == 0) return false;
            --residual[i].first;
            edges.emplace_back(u, residual[i].second);
        }
    }

    std::unordered_set<EdgeKey> local;
    local.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) local.insert(edge_key(u, v));
    const std::size_t switch_attempts = 10 * edges.size();
    for (std::size_t t = 0; t < switch_attempts && edges.size() >= 2; ++t) {
        const std::size_t i = rng.index(edges.size());
        const std::size_t j = rng.index(edges.size());
        if (i == j) continue;
        Edge a = edges[i];
        Edge b = edges[j];
        if (rng.bernoulli(0.5)) std::swap(b.first, b.second);
        const Edge na{a.first, b.second};
        const Edge nb{b.first, a.second};
        if (na.first == na.second || nb.first == nb.second) continue;
        const EdgeKey ka = edge_key(na.first, na.second);
        const EdgeKey kb = edge_key(nb.first, nb.second);
        if (ka == kb || local.count(ka) || local.count(kb)) continue;
        local.erase(edge_key(a.first, a.second));
        local.erase(edge_key(b.first, b.second));
        local.insert(ka);
        local.insert(kb);
        edges[i] = na;
        edges[j] = nb;
    }

    for (const auto& [u, v] : edges) {
        occupied.insert(edge_key(u, v));
        out_edges.emplace_back(u, v);
    }
    return true;
}

}  // namespace lfr_detail

/// LFR benchmark generation, staged: sample a power-law degree sequence,
/// sample community sizes that sum to n, place nodes subject to
/// internal-degree fit with eviction, stub-match the intra-community and
/// inter-community edge pools, and repair defects by degree-preserving
/// swaps. A failed stage restarts the pipeline; after the retry budget the
/// failing stage is reported.
inline GeneratedInstance generate_lfr(const LfrParams& params, std::uint64_t seed) {
    params.validate();
    const std::uint32_t min_degree =
        lfr_detail::solve_min_degree(params.avg_degree, params.max_degree,
                                     params.degree_exponent);

    Rng rng(seed);
    std::string failed_stage = "degree_sequence";
    for (int attempt = 0; attempt < lfr_detail::kStageAttempts; ++attempt) {
        const auto degrees = lfr_detail::sample_degrees(params, min_degree, rng);
        if (!degrees) {
            failed_stage = "degree_sequence";
            continue;
        }
        const auto sizes = lfr_detail::sample_community_sizes(params, rng);
        if (!sizes) {
            failed_stage = "community_sizes";
            continue;
        }
        auto internal = lfr_detail::internal_degrees(*degrees, params.mu, rng);
        const auto assignment = lfr_detail::assign_communities(internal, *sizes, rng);
        if (!assignment) {
            failed_stage = "community_assignment";
            continue;
        }
        if (!lfr_detail::fix_internal_parity(internal, *degrees, *assignment, *sizes, rng)) {
            failed_stage = "internal_parity";
            continue;
        }

        if (!lfr_detail::repair_graphicality(internal, *assignment)) {
            failed_stage = "internal_graphicality";
            continue;
        }

        std::unordered_set<lfr_detail::EdgeKey> occupied;
        std::vector<Edge> edges;
        bool ok = true;
        for (std::uint32_t j = 0; j < sizes->size() && ok; ++j) {
            std::vector<NodeId> stubs;
            for (NodeId u : assignment->members[j]) {
                for (std::uint32_t i = 0; i < internal[u]; ++i) stubs.push_back(u);
            }
            ok = lfr_detail::match_stubs(std::move(stubs), occupied, nullptr, rng, edges);
            // Dense communities can defeat swap repair. Shed one stub pair
            // from the heaviest members to the external pool and rematch;
            // a direct Havel-Hakimi realization is the last resort.
            for (int shed = 0; !ok && shed < 100; ++shed) {
                const auto& members = assignment->members[j];
                NodeId first = members[0];
                for (NodeId u : members) {
                    if (internal[u] > internal[first]) first = u;
                }
                bool have_second = false;
                NodeId second = first;
                for (NodeId u : members) {
                    if (u == first) continue;
                    if (!have_second || internal[u] > internal[second]) {
                        second = u;
                        have_second = true;
                    }
                }
                if (have_second && internal[second] > 0 && internal[first] > 0) {
                    --internal[first];
                    --internal[second];
                } else if (internal[first] >= 2) {
                    internal[first] -= 2;
                } else {
                    break;
                }
                std::vector<NodeId> retry_stubs;
                for (NodeId u : members) {
                    for (std::uint32_t i = 0; i < internal[u]; ++i) retry_stubs.push_back(u);
                }
                ok = lfr_detail::match_stubs(std::move(retry_stubs), occupied, nullptr, rng,
                                             edges);
            }
            if (!ok) {
                ok = lfr_detail::havel_hakimi_with_switches(assignment->members[j], internal,
                                                            rng, occupied, edges);
            }
        }
        if (!ok) {
            failed_stage = "intra_edges";
            continue;
        }

        std::vector<NodeId> ext_stubs;
        for (NodeId u = 0; u < params.n; ++u) {
            for (std::uint32_t i = internal[u]; i < (*degrees)[u]; ++i) ext_stubs.push_back(u);
        }
        if (!lfr_detail::match_stubs(std::move(ext_stubs), occupied, &assignment->community_of,
                                     rng, edges)) {
            failed_stage = "inter_edges";
            continue;
        }

        GeneratedInstance inst;
        inst.graph = Graph::from_edges(params.n, edges);
        inst.partition = Partition(assignment->community_of,
                                   static_cast<std::uint32_t>(sizes->size()));
        inst.model = ModelTag::lfr;
        inst.params = params;
        inst.seed = seed;
        return inst;
    }
    throw GenerationError(failed_stage, "LFR generation failed in stage '" + failed_stage +
                                            "' after " +
                                            std::to_string(lfr_detail::kStageAttempts) +
                                            " attempts");
}

// ---------------------------------------------------------------------------
// Named configurations

enum class ConfigTag : std::uint8_t { crg_strong, crg_weak, lfr_strong, lfr_weak, lfr_varying };

/// A named configuration; `mu` is meaningful only for lfr_varying and must
/// lie on the grid 0.15, 0.20, ..., 0.95.
struct ConfigId {
    ConfigTag tag{};
    double mu = std::numeric_limits<double>::quiet_NaN();
};

namespace config_detail {

inline constexpr double kMuGridStart = 0.15;
inline constexpr double kMuGridStep = 0.05;
inline constexpr int kMuGridCount = 17;  // 0.15 .. 0.95

inline int mu_grid_index(double mu) {
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("lfr_varying requires a mu value on the grid");
    }
    const double raw = (mu - kMuGridStart) / kMuGridStep;
    const int idx = static_cast<int>(std::llround(raw));
    if (idx < 0 || idx >= kMuGridCount ||
        std::abs(mu - (kMuGridStart + idx * kMuGridStep)) > 1e-9) {
        throw std::invalid_argument("mu must lie on the grid 0.15, 0.20, ..., 0.95");
    }
    return idx;
}

}  // namespace config_detail

inline LfrParams paper_lfr_params(double mu) {
    LfrParams p;
    p.n = 1000;
    p.avg_degree = 10.0;
    p.max_degree = 50;
    p.degree_exponent = 2.0;
    p.min_community = 5;
    p.max_community = 100;
    p.community_exponent = 2.0;
    p.mu = mu;
    return p;
}

inline std::variant<CrgParams, LfrParams> named_config(const ConfigId& id) {
    switch (id.tag) {
        case ConfigTag::crg_strong: return CrgParams{1000, 25, 0.2, 0.005};
        case ConfigTag::crg_weak: return CrgParams{1000, 25, 0.1, 0.01};
        case ConfigTag::lfr_strong: return paper_lfr_params(0.4);
        case ConfigTag::lfr_weak: return paper_lfr_params(0.8);
        case ConfigTag::lfr_varying:
            config_detail::mu_grid_index(id.mu);
            return paper_lfr_params(id.mu);
    }
    throw std::invalid_argument("unknown configuration tag");
}

inline ModelTag config_model(const ConfigId& id) {
    return id.tag == ConfigTag::crg_strong || id.tag == ConfigTag::crg_weak ? ModelTag::crg
                                                                            : ModelTag::lfr;
}

/// Stable ordinal used for seed derivation and record ordering:
/// 0..3 for the named configs, 4..20 for the lfr_varying mu grid.
inline int config_ordinal(const ConfigId& id) {
    switch (id.tag) {
        case ConfigTag::crg_strong: return 0;
        case ConfigTag::crg_weak: return 1;
        case ConfigTag::lfr_strong: return 2;
        case ConfigTag::lfr_weak: return 3;
        case ConfigTag::lfr_varying: return 4 + config_detail::mu_grid_index(id.mu);
    }
    throw std::invalid_argument("unknown configuration tag");
}

inline std::string config_name(const ConfigId& id) {
    switch (id.tag) {
        case ConfigTag::crg_strong: return "crg_strong";
        case ConfigTag::crg_weak: return "crg_weak";
        case ConfigTag::lfr_strong: return "lfr_strong";
        case ConfigTag::lfr_weak: return "lfr_weak";
        case ConfigTag::lfr_varying: {
            config_detail::mu_grid_index(id.mu);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "lfr_varying_%.2f", id.mu);
            return buf;
        }
    }
    throw std::invalid_argument("unknown configuration tag");
}

inline ConfigId config_from_name(std::string_view name) {
    if (name == "crg_strong") return {ConfigTag::crg_strong, {}};
    if (name == "crg_weak") return {ConfigTag::crg_weak, {}};
    if (name == "lfr_strong") return {ConfigTag::lfr_strong, {}};
    if (name == "lfr_weak") return {ConfigTag::lfr_weak, {}};
    constexpr std::string_view prefix = "lfr_varying_";
    if (name.substr(0, prefix.size()) == prefix) {
        const std::string digits(name.substr(prefix.size()));
        char* end = nullptr;
        const double mu = std::strtod(digits.c_str(), &end);
        if (end == digits.c_str() + digits.size()) {
            config_detail::mu_grid_index(mu);  // validates the grid
            return {ConfigTag::lfr_varying, mu};
        }
    }
    throw std::invalid_argument("unknown configuration name: '" + std::string(name) + "'");
}

/// All 17 lfr_varying configurations in mu order.
inline std::vector<ConfigId> lfr_varying_grid() {
    std::vector<ConfigId> out;
    out.reserve(config_detail::kMuGridCount);
    for (int i = 0; i < config_detail::kMuGridCount; ++i) {
        out.push_back({ConfigTag::lfr_varying,
                       config_detail::kMuGridStart + i * config_detail::kMuGridStep});
    }
    return out;
}

inline GeneratedInstance generate(const ConfigId& id, std::uint64_t seed) {
    const auto params = named_config(id);
    if (std::holds_alternative<CrgParams>(params)) {
        return generate_crg(std::get<CrgParams>(params), seed);
    }
    return generate_lfr(std::get<LfrParams>(params), seed);
}

}  // namespace netrel
