#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "netrel/graph.hpp"

namespace netrel {

/// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed number: '" + std::string(s) + "'");
    }
    return x;
}

inline std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
    }
    return x;
}

namespace io_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    return in;
}

}  // namespace io_detail

/// Edge-list format: one "u v" pair per line, zero-based decimal ids,
/// each undirected edge listed once.
inline void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    auto out = io_detail::open_output(path);
    g.for_each_edge([&](NodeId u, NodeId v) { out << u << ' ' << v << '\n'; });
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Reads an edge list. Node count defaults to max id + 1; pass an explicit
/// count to preserve trailing isolated nodes.
inline Graph read_edge_list(const std::filesystem::path& path, NodeId node_count = 0) {
    auto in = io_detail::open_input(path);
    std::vector<Edge> edges;
    NodeId max_id = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = io_detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream fields{std::string(t)};
        std::uint64_t u, v;
        if (!(fields >> u >> v)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed edge line");
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
        any = true;
    }
    if (node_count == 0) node_count = any ? max_id + 1 : 0;
    return Graph::from_edges(node_count, edges);
}

/// Community file: one "node community" pair per line, zero-based.
inline void write_communities(const std::filesystem::path& path, const Partition& p) {
    auto out = io_detail::open_output(path);
    for (NodeId u = 0; u < p.node_count(); ++u) {
        out << u << ' ' << p.community_of(u) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline Partition read_communities(const std::filesystem::path& path) {
    auto in = io_detail::open_input(path);
    std::vector<std::pair<NodeId, std::uint32_t>> pairs;
    NodeId max_node = 0;
    std::uint32_t max_comm = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = io_detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream fields{std::string(t)};
        std::uint64_t u, c;
        if (!(fields >> u >> c)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed community line");
        }
        pairs.emplace_back(static_cast<NodeId>(u), static_cast<std::uint32_t>(c));
        max_node = std::max(max_node, static_cast<NodeId>(u));
        max_comm = std::max(max_comm, static_cast<std::uint32_t>(c));
    }
    if (pairs.empty()) return Partition({}, 0);
    std::vector<std::uint32_t> community_of(static_cast<std::size_t>(max_node) + 1, 0);
    std::vector<bool> seen(community_of.size(), false);
    for (const auto& [u, c] : pairs) {
        if (seen[u]) throw std::runtime_error(path.string() + ": node listed twice");
        seen[u] = true;
        community_of[u] = c;
    }
    for (NodeId u = 0; u < seen.size(); ++u) {
        if (!seen[u]) throw std::runtime_error(path.string() + ": node " + std::to_string(u) +
                                               " has no community");
    }
    return Partition(std::move(community_of), max_comm + 1);
}

/// Line-oriented "key = value" records (sidecar metadata, plan files).
inline void write_key_values(const std::filesystem::path& path,
                             const std::vector<std::pair<std::string, std::string>>& kv) {
    auto out = io_detail::open_output(path);
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::vector<std::pair<std::string, std::string>> read_key_values(
    const std::filesystem::path& path) {
    auto in = io_detail::open_input(path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = io_detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        kv.emplace_back(std::string(io_detail::trim(t.substr(0, eq))),
                        std::string(io_detail::trim(t.substr(eq + 1))));
    }
    return kv;
}

}  // namespace netrel
