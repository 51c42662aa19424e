#pragma once

// Independent reference implementations used to check the library. They work
// on plain adjacency matrices and brute force, sharing no code paths with it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "wlpower/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<std::int64_t>>;

inline Matrix adjacency(const wlpower::Graph& g) {
    const int n = g.node_count();
    Matrix a(n, std::vector<std::int64_t>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) a[u][v] = g.has_edge(u, v) ? 1 : 0;
    return a;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// trace(A^k): closed walks of length k, i.e. Hom(C_k, G) for k >= 3.
inline std::int64_t trace_power(const wlpower::Graph& g, int k) {
    const Matrix a = adjacency(g);
    Matrix p = a;
    for (int i = 1; i < k; ++i) p = multiply(p, a);
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < p.size(); ++i) tr += p[i][i];
    return tr;
}

/// Counts edge-preserving maps by trying all n_G^n_F maps.
inline std::uint64_t brute_hom(const wlpower::Graph& f, const wlpower::Graph& g, const std::map<int, int>& pins = {}) {
    const int nf = f.node_count();
    const int ng = g.node_count();
    if (nf == 0) return 1;
    if (ng == 0) return 0;
    std::vector<int> map(nf, 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const auto& [p, t] : pins) ok = ok && map[p] == t;
        for (int u = 0; ok && u < nf; ++u)
            for (int v = u + 1; ok && v < nf; ++v)
                if (f.has_edge(u, v) && !g.has_edge(map[u], map[v])) ok = false;
        if (ok) ++count;
        int i = 0;
        while (i < nf && ++map[i] == ng) map[i++] = 0;
        if (i == nf) break;
    }
    return count;
}

inline bool connected(const wlpower::Graph& g) {
    const int n = g.node_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (g.has_edge(u, v) && !seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == n;
}

/// All-pairs BFS distances; -1 for unreachable.
inline std::vector<std::vector<int>> distances(const wlpower::Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        q.push(s);
        d[s][s] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v)
                if (g.has_edge(u, v) && d[s][v] < 0) {
                    d[s][v] = d[s][u] + 1;
                    q.push(v);
                }
        }
    }
    return d;
}

inline bool isomorphic(const wlpower::Graph& a, const wlpower::Graph& b) {
    const int n = a.node_count();
    if (n != b.node_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; ok && u < n; ++u)
            for (int v = u + 1; ok && v < n; ++v)
                if (a.has_edge(u, v) != b.has_edge(p[u], p[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// Treewidth as the minimum over all elimination orderings of the largest
/// neighborhood at elimination time, with fill-in.
inline int brute_treewidth(const wlpower::Graph& g) {
    const int n = g.node_count();
    if (n == 0) return 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = n;
    do {
        auto adj = adjacency(g);
        std::vector<char> gone(n, 0);
        int width = 0;
        for (int v : order) {
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (!gone[u] && u != v && adj[v][u]) nb.push_back(u);
            width = std::max(width, static_cast<int>(nb.size()));
            for (int x : nb)
                for (int y : nb)
                    if (x != y) adj[x][y] = 1;
            gone[v] = 1;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

namespace detail {

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Number of isomorphism classes of graphs on n nodes, by Burnside's lemma
/// over cycle types of the symmetric group acting on node pairs.
inline std::uint64_t graph_classes(int n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    detail::partitions(n, n, cur, parts);
    unsigned __int128 total = 0;
    std::uint64_t factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (const auto& lambda : parts) {
        std::map<int, int> mult;
        for (int l : lambda) ++mult[l];
        std::uint64_t denom = 1;
        for (const auto& [len, m] : mult) {
            for (int i = 0; i < m; ++i) denom *= len;
            for (int i = 2; i <= m; ++i) denom *= i;
        }
        const std::uint64_t perms = factorial / denom;
        int orbits = 0;
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            orbits += lambda[i] / 2;
            for (std::size_t j = i + 1; j < lambda.size(); ++j) orbits += std::gcd(lambda[i], lambda[j]);
        }
        total += static_cast<unsigned __int128>(perms) << orbits;
    }
    return static_cast<std::uint64_t>(total / factorial);
}

/// Connected classes per node count 1..n_max from all classes via the inverse Euler transform.
inline std::vector<std::int64_t> connected_classes(int n_max) {
    std::vector<std::int64_t> g(n_max + 1), s(n_max + 1, 0), c(n_max + 1, 0);
    for (int n = 0; n <= n_max; ++n) g[n] = static_cast<std::int64_t>(graph_classes(n));
    for (int n = 1; n <= n_max; ++n) {
        s[n] = n * g[n];
        for (int k = 1; k < n; ++k) s[n] -= s[k] * g[n - k];
    }
    auto mobius = [](int m) {
        int result = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) return 0;
            result = -result;
        }
        return m > 1 ? -result : result;
    };
    for (int n = 1; n <= n_max; ++n) {
        std::int64_t acc = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) acc += mobius(n / d) * s[d];
        c[n] = acc / n;
    }
    return c;
}

/// Classic node-color refinement run jointly on both graphs; true when the
/// final color histograms differ.
inline bool one_wl_distinguishes(const wlpower::Graph& a, const wlpower::Graph& b) {
    const int na = a.node_count();
    const int nb = b.node_count();
    if (na != nb) return true;
    std::vector<int> colors(na + nb, 0);
    auto neighbors = [&](int x) {
        std::vector<int> out;
        if (x < na) {
            for (int y = 0; y < na; ++y)
                if (a.has_edge(x, y)) out.push_back(y);
        } else {
            for (int y = 0; y < nb; ++y)
                if (b.has_edge(x - na, y)) out.push_back(na + y);
        }
        return out;
    };
    for (int round = 0; round <= na + nb; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        std::vector<int> next(na + nb);
        for (int x = 0; x < na + nb; ++x) {
            std::vector<int> ms;
            for (int y : neighbors(x)) ms.push_back(colors[y]);
            std::sort(ms.begin(), ms.end());
            next[x] = ids.emplace(std::pair{colors[x], ms}, static_cast<int>(ids.size())).first->second;
        }
        colors = next;
    }
    std::vector<int> ha(colors.begin(), colors.begin() + na);
    std::vector<int> hb(colors.begin() + na, colors.end());
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    return ha != hb;
}

inline wlpower::Graph random_graph(int n, double p, std::mt19937_64& rng) {
    wlpower::Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline wlpower::Graph random_relabel(const wlpower::Graph& g, std::mt19937_64& rng) {
    std::vector<int> p(g.node_count());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return g.permuted(p);
}

}  // namespace oracle
