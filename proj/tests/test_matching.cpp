#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "wlpower/matching.hpp"

using namespace wlpower;

namespace {

// maximum matching size by trying every subset of edges
int brute_matching(const BipartiteGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.left; ++u)
        for (int v : g.adj[u]) edges.emplace_back(u, v);
    int best = 0;
    for (std::uint32_t m = 0; m < (1u << edges.size()); ++m) {
        std::uint32_t l = 0, r = 0;
        int size = 0;
        bool ok = true;
        for (std::size_t e = 0; e < edges.size() && ok; ++e) {
            if (!(m >> e & 1)) continue;
            if ((l >> edges[e].first & 1) || (r >> edges[e].second & 1)) ok = false;
            l |= 1u << edges[e].first;
            r |= 1u << edges[e].second;
            ++size;
        }
        if (ok) best = std::max(best, size);
    }
    return best;
}

}  // namespace

TEST(SafeBijection, Examples) {
    using S = std::set<char>;
    using P = std::set<std::pair<char, char>>;
    EXPECT_TRUE(has_safe_bijection(S{}, S{}, P{}));
    EXPECT_FALSE(has_safe_bijection(S{'a'}, S{'x', 'y'}, P{{'a', 'x'}}));
    EXPECT_FALSE(has_safe_bijection(S{'a', 'b'}, S{'x', 'y'}, P{{'a', 'x'}, {'b', 'x'}}));
    EXPECT_TRUE(has_safe_bijection(S{'a', 'b'}, S{'x', 'y'}, P{{'a', 'x'}, {'b', 'x'}, {'b', 'y'}}));
}

TEST(Matching, MaximumSizeMatchesBruteForce) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        BipartiteGraph g{1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4), {}};
        g.adj.resize(g.left);
        for (int u = 0; u < g.left; ++u)
            for (int v = 0; v < g.right; ++v)
                if (rng() % 2) g.adj[u].push_back(v);
        const auto m = maximum_matching(g);
        ASSERT_EQ(m.size, brute_matching(g));
        for (int u = 0; u < g.left; ++u)
            if (m.left_match[u] >= 0) {
                ASSERT_EQ(m.right_match[m.left_match[u]], u);
            }
    }
}

TEST(Matching, HallViolatorCertifiesDeficiency) {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        BipartiteGraph g{n, n, std::vector<std::vector<int>>(n)};
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng() % 3 == 0) g.adj[u].push_back(v);
        const auto s = hall_violator(g);
        EXPECT_EQ(s.empty(), has_perfect_matching(g));
        if (s.empty()) continue;
        std::set<int> nb;
        for (int u : s) nb.insert(g.adj[u].begin(), g.adj[u].end());
        EXPECT_LT(nb.size(), s.size());
    }
}
