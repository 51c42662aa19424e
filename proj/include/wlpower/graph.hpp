#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wlpower/errors.hpp"

namespace wlpower {

using Node = int;
using NodeTuple = std::vector<Node>;
using NodeMask = std::uint64_t;
using Edge = std::pair<Node, Node>;

inline constexpr int kMaxNodes = 64;

inline constexpr NodeMask bit(Node v) { return NodeMask{1} << v; }

inline std::vector<Node> mask_nodes(NodeMask m) {
    std::vector<Node> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

/// Simple undirected graph on nodes 0..n-1, stored as adjacency bitsets.
class Graph {
public:
    Graph() = default;
    explicit Graph(int node_count) : adj_(check_count(node_count), 0) {}

    static Graph from_edges(int node_count, std::span<const Edge> edges) {
        Graph g(node_count);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }
    static Graph from_edges(int node_count, std::initializer_list<Edge> edges) {
        return from_edges(node_count, std::span<const Edge>(edges.begin(), edges.size()));
    }

    int node_count() const noexcept { return static_cast<int>(adj_.size()); }

    NodeMask all_nodes() const noexcept {
        return node_count() == 64 ? ~NodeMask{0} : bit(node_count()) - 1;
    }

    void add_edge(Node u, Node v) {
        check_node(u);
        check_node(v);
        if (u == v) throw DomainError("self-loop on node " + std::to_string(u));
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }

    bool has_edge(Node u, Node v) const noexcept { return (adj_[u] >> v) & 1U; }
    NodeMask neighbors(Node u) const noexcept { return adj_[u]; }
    int degree(Node u) const noexcept { return std::popcount(adj_[u]); }

    int edge_count() const noexcept {
        int twice = 0;
        for (auto m : adj_) twice += std::popcount(m);
        return twice / 2;
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Node u = 0; u < node_count(); ++u)
            for (Node v : mask_nodes(adj_[u] & ~((NodeMask{2} << u) - 1))) out.emplace_back(u, v);
        return out;
    }

    void check_node(Node v) const {
        if (v < 0 || v >= node_count())
            throw DomainError("node " + std::to_string(v) + " out of range for graph on " +
                              std::to_string(node_count()) + " nodes");
    }
    void check_tuple(std::span<const Node> tuple) const {
        for (Node v : tuple) check_node(v);
    }

    /// Relabel: node v of this graph becomes perm[v].
    Graph permuted(std::span<const Node> perm) const {
        Graph out(node_count());
        for (auto [u, v] : edges()) out.add_edge(perm[u], perm[v]);
        return out;
    }

    Graph induced(NodeMask keep) const {
        auto nodes = mask_nodes(keep & all_nodes());
        std::vector<Node> index(node_count(), -1);
        for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<Node>(i);
        Graph out(static_cast<int>(nodes.size()));
        for (auto [u, v] : edges())
            if (index[u] >= 0 && index[v] >= 0) out.add_edge(index[u], index[v]);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static std::size_t check_count(int n) {
        if (n < 0 || n > kMaxNodes)
            throw DomainError("node count " + std::to_string(n) + " outside [0, 64]");
        return static_cast<std::size_t>(n);
    }

    std::vector<NodeMask> adj_;
};

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph out(a.node_count() + b.node_count());
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(u + a.node_count(), v + a.node_count());
    return out;
}

namespace graphs {

inline Graph empty(int n) { return Graph(n); }

inline Graph complete(int n) {
    Graph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph path(int n) {
    Graph g(n);
    for (Node u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

inline Graph cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

/// K_{1,leaves}: node 0 is the center.
inline Graph star(int leaves) {
    Graph g(leaves + 1);
    for (Node v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

}  // namespace graphs

// ---------------------------------------------------------------------------
// graph6 (short form, n <= 62)
// ---------------------------------------------------------------------------

/// Decodes one graph6 line. Trailing '\n' / '\r' are ignored.
inline Graph parse_graph6(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty graph6 line", 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw ParseError("graph6 character out of range [63,126]", i);
    }
    const int n = static_cast<unsigned char>(text[0]) - 63;
    if (n > 62) throw ParseError("graph6 long-form header (n > 62) is not supported", 0);

    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t bytes = (bits + 5) / 6;
    if (text.size() != 1 + bytes)
        throw ParseError("graph6 body has " + std::to_string(text.size() - 1) + " bytes, expected " +
                             std::to_string(bytes),
                         std::min(text.size(), 1 + bytes));

    Graph g(n);
    std::size_t k = 0;
    for (Node v = 1; v < n; ++v) {
        for (Node u = 0; u < v; ++u, ++k) {
            const int word = static_cast<unsigned char>(text[1 + k / 6]) - 63;
            if ((word >> (5 - k % 6)) & 1) g.add_edge(u, v);
        }
    }
    if (bits % 6 != 0) {
        const int last = static_cast<unsigned char>(text.back()) - 63;
        const int pad = static_cast<int>(6 - bits % 6);
        if (last & ((1 << pad) - 1)) throw ParseError("graph6 padding bits are nonzero", text.size() - 1);
    }
    return g;
}

inline std::string to_graph6(const Graph& g) {
    const int n = g.node_count();
    if (n > 62) throw DomainError("graph6 short form supports at most 62 nodes");
    std::string out(1, static_cast<char>(n + 63));
    int word = 0;
    int filled = 0;
    for (Node v = 1; v < n; ++v) {
        for (Node u = 0; u < v; ++u) {
            word = (word << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(word + 63));
                word = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((word << (6 - filled)) + 63));
    return out;
}

// ---------------------------------------------------------------------------
// Components and distances
// ---------------------------------------------------------------------------

/// Connected components of g - blocked, each as a node mask, ordered by lowest node.
inline std::vector<NodeMask> component_masks(const Graph& g, NodeMask blocked) {
    std::vector<NodeMask> out;
    NodeMask remaining = g.all_nodes() & ~blocked;
    while (remaining) {
        NodeMask comp = remaining & (~remaining + 1);
        NodeMask frontier = comp;
        while (frontier) {
            NodeMask next = 0;
            for (Node v : mask_nodes(frontier)) next |= g.neighbors(v);
            next &= remaining & ~comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        remaining &= ~comp;
    }
    return out;
}

/// The component of g - blocked that contains `seed` (seed must avoid blocked).
inline NodeMask component_containing(const Graph& g, NodeMask blocked, NodeMask seed) {
    const NodeMask allowed = g.all_nodes() & ~blocked;
    NodeMask comp = seed & allowed;
    NodeMask frontier = comp;
    while (frontier) {
        NodeMask next = 0;
        for (Node v : mask_nodes(frontier)) next |= g.neighbors(v);
        next &= allowed & ~comp;
        comp |= next;
        frontier = next;
    }
    return comp;
}

inline std::vector<std::vector<Node>> components_avoiding(const Graph& g, std::span<const Node> blocked) {
    NodeMask m = 0;
    for (Node v : blocked) {
        g.check_node(v);
        m |= bit(v);
    }
    std::vector<std::vector<Node>> out;
    for (NodeMask c : component_masks(g, m)) out.push_back(mask_nodes(c));
    return out;
}

inline bool is_connected(const Graph& g) { return component_masks(g, 0).size() <= 1; }

/// All-pairs shortest-path lengths; unreachable pairs hold kUnreachable.
class DistanceTable {
public:
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    explicit DistanceTable(const Graph& g) : n_(g.node_count()), dist_(static_cast<std::size_t>(n_) * n_, kUnreachable) {
        for (Node s = 0; s < n_; ++s) {
            at(s, s) = 0;
            NodeMask seen = bit(s);
            NodeMask frontier = bit(s);
            for (int d = 1; frontier; ++d) {
                NodeMask next = 0;
                for (Node v : mask_nodes(frontier)) next |= g.neighbors(v);
                next &= ~seen;
                for (Node v : mask_nodes(next)) at(s, v) = d;
                seen |= next;
                frontier = next;
            }
        }
    }

    int operator()(Node u, Node v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
    int node_count() const noexcept { return n_; }

private:
    int& at(Node u, Node v) { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

    int n_;
    std::vector<int> dist_;
};

inline DistanceTable distance_table(const Graph& g) { return DistanceTable(g); }

}  // namespace wlpower
