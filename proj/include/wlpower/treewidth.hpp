#pragma once

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "wlpower/graph.hpp"

namespace wlpower {

inline constexpr int kDefaultTreewidthCap = 12;

namespace detail {

// Nodes outside `eliminated` and v itself that v reaches through eliminated
// nodes only: the neighborhood v has once `eliminated` has been eliminated.
inline int elimination_degree(const Graph& g, NodeMask eliminated, Node v) {
    NodeMask seen = bit(v);
    NodeMask frontier = bit(v);
    NodeMask reached = 0;
    while (frontier) {
        NodeMask next = 0;
        for (Node u : mask_nodes(frontier)) next |= g.neighbors(u);
        next &= ~seen;
        seen |= next;
        reached |= next & ~eliminated;
        frontier = next & eliminated;
    }
    return std::popcount(reached);
}

}  // namespace detail

/// Exact treewidth by dynamic programming over eliminated vertex sets:
/// best[S] = min over v in S of max(best[S - v], degree of v after eliminating S - v).
inline int treewidth(const Graph& g, int node_cap = kDefaultTreewidthCap) {
    const int n = g.node_count();
    if (n > node_cap)
        throw ResourceError("treewidth of a " + std::to_string(n) + "-node graph exceeds cap " +
                            std::to_string(node_cap));
    if (n == 0) return 0;
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<int> best(subsets, n);
    best[0] = -1;
    for (std::size_t s = 1; s < subsets; ++s) {
        const auto set = static_cast<NodeMask>(s);
        for (Node v : mask_nodes(set)) {
            const NodeMask rest = set & ~bit(v);
            const int width = std::max(best[rest], detail::elimination_degree(g, rest, v));
            best[s] = std::min(best[s], width);
        }
    }
    return best[subsets - 1];
}

}  // namespace wlpower
