#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace wlpower {

/// Bipartite graph given as adjacency lists from left vertices to right vertices.
struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::vector<int>> adj;
};

struct Matching {
    std::vector<int> left_match;   // right partner or -1
    std::vector<int> right_match;  // left partner or -1
    int size = 0;
};

namespace detail {

inline bool augment(const BipartiteGraph& g, int u, std::vector<char>& visited, Matching& m) {
    for (int v : g.adj[u]) {
        if (visited[v]) continue;
        visited[v] = 1;
        if (m.right_match[v] < 0 || augment(g, m.right_match[v], visited, m)) {
            m.left_match[u] = v;
            m.right_match[v] = u;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Maximum matching by repeated augmenting-path search.
inline Matching maximum_matching(const BipartiteGraph& g) {
    Matching m{std::vector<int>(g.left, -1), std::vector<int>(g.right, -1), 0};
    std::vector<char> visited(g.right);
    for (int u = 0; u < g.left; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (detail::augment(g, u, visited, m)) ++m.size;
    }
    return m;
}

inline bool has_perfect_matching(const BipartiteGraph& g) {
    return g.left == g.right && maximum_matching(g).size == g.left;
}

/// Left vertices S with fewer than |S| distinct neighbors, or empty when a
/// left-saturating matching exists. Built from an unmatched left vertex and
/// everything reachable from it along alternating paths.
inline std::vector<int> hall_violator(const BipartiteGraph& g) {
    const Matching m = maximum_matching(g);
    auto it = std::find(m.left_match.begin(), m.left_match.end(), -1);
    if (it == m.left_match.end()) return {};
    std::vector<char> in_s(g.left, 0);
    std::vector<char> seen_right(g.right, 0);
    std::vector<int> stack{static_cast<int>(it - m.left_match.begin())};
    in_s[stack.back()] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : g.adj[u]) {
            if (seen_right[v]) continue;
            seen_right[v] = 1;
            const int w = m.right_match[v];
            if (w >= 0 && !in_s[w]) {
                in_s[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int u = 0; u < g.left; ++u)
        if (in_s[u]) out.push_back(u);
    return out;
}

/// True iff |domain| = |codomain| and some bijection maps every x to an f(x)
/// with (x, f(x)) in `safe`.
template <class A, class B>
bool has_safe_bijection(const std::set<A>& domain, const std::set<B>& codomain, const std::set<std::pair<A, B>>& safe) {
    if (domain.size() != codomain.size()) return false;
    std::map<B, int> right_index;
    for (const auto& b : codomain) right_index.emplace(b, static_cast<int>(right_index.size()));
    BipartiteGraph g{static_cast<int>(domain.size()), static_cast<int>(codomain.size()), {}};
    for (const auto& a : domain) {
        auto& row = g.adj.emplace_back();
        for (auto it = safe.lower_bound({a, *codomain.begin()}); it != safe.end() && it->first == a; ++it)
            if (auto r = right_index.find(it->second); r != right_index.end()) row.push_back(r->second);
    }
    return has_perfect_matching(g);
}

}  // namespace wlpower
