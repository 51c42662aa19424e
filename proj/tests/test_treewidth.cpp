#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wlpower/enumerate.hpp"
#include "wlpower/treewidth.hpp"

using namespace wlpower;

TEST(Treewidth, KnownValues) {
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(treewidth(graphs::complete(n)), n - 1);
    EXPECT_EQ(treewidth(graphs::star(5)), 1);
    EXPECT_EQ(treewidth(graphs::path(7)), 1);
    EXPECT_EQ(treewidth(graphs::cycle(5)), 2);
    EXPECT_EQ(oracle::brute_treewidth(graphs::cycle(5)), 2);
    EXPECT_EQ(treewidth(Graph(0)), 0);
    EXPECT_EQ(treewidth(Graph(4)), 0);
}

TEST(Treewidth, MatchesEliminationOrderingBruteForce) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracle::random_graph(1 + static_cast<int>(rng() % 7), 0.5, rng);
        ASSERT_EQ(treewidth(g), oracle::brute_treewidth(g)) << to_graph6(g);
    }
    for (const auto& g : enumerate_connected_graphs(6)) ASSERT_EQ(treewidth(g), oracle::brute_treewidth(g));
}

TEST(Treewidth, InvariantUnderRelabeling) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = oracle::random_graph(9, 0.4, rng);
        EXPECT_EQ(treewidth(g), treewidth(oracle::random_relabel(g, rng)));
    }
}

TEST(Treewidth, CapIsEnforced) { EXPECT_THROW(treewidth(graphs::path(13)), ResourceError); }
