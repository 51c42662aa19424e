#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wlpower/enumerate.hpp"
#include "wlpower/gfwl.hpp"

using namespace wlpower;

namespace {

std::vector<std::pair<std::string, GfwlSpec>> builtin_specs() {
    return {{"local1", presets::local_fwl(1)}, {"fwl2", presets::fwl(2)},
            {"local2", presets::local_fwl(2)}, {"dr1", presets::drfwl2(1)},
            {"dr2", presets::drfwl2(2)},       {"fwl1", presets::fwl(1)},
            {"plus12", presets::fwl_plus(1, 2)}};
}

// true when every class of `fine` lies inside a class of `coarse`
bool refines(const ColorMap& fine, const ColorMap& coarse) {
    std::map<Color, Color> image;
    for (std::size_t i = 0; i < fine.colors.size(); ++i) {
        auto [it, fresh] = image.emplace(fine.colors[i], coarse.colors[i]);
        if (!fresh && it->second != coarse.colors[i]) return false;
    }
    return true;
}

std::vector<Color> sorted_colors(const ColorMap& m) {
    auto c = m.colors;
    std::sort(c.begin(), c.end());
    return c;
}

}  // namespace

TEST(Replacements, Examples) {
    EXPECT_EQ(replacements(NodeTuple{10, 11}, NodeTuple{12}),
              (std::vector<NodeTuple>{{10, 11}, {10, 12}, {11, 12}}));
    EXPECT_EQ(replacements(NodeTuple{10}, NodeTuple{11}), (std::vector<NodeTuple>{{10}, {11}}));
    const auto six = replacements(NodeTuple{1, 2}, NodeTuple{3, 4});
    ASSERT_EQ(six.size(), 6u);
    EXPECT_EQ(six.front(), (NodeTuple{1, 2}));
    EXPECT_EQ(six.back(), (NodeTuple{3, 4}));
    EXPECT_EQ(replacement_indices(3, 2).size(), 10u);
}

TEST(PrefixAndSuffix, Examples) {
    EXPECT_EQ(prefix_project(TupleSet{{0, 1}, {0, 2}}, 1), (TupleSet{{0}}));
    const TupleSet s{{0, 1}, {0, 2}, {1, 2}};
    EXPECT_EQ(prefix_project(s, 2), s);
    EXPECT_EQ(suffix_set(s, NodeTuple{0}), (TupleSet{{1}, {2}}));
    EXPECT_TRUE(suffix_set(s, NodeTuple{2}).empty());
    EXPECT_EQ(suffix_set(s, NodeTuple{1, 2}), (TupleSet{{}}));
    EXPECT_EQ(prefix_project(r_set(RSelector::distance_restricted(1), 2, graphs::path(3)), 1),
              (TupleSet{{0}, {1}, {2}}));
}

TEST(Structure, RejectsMalformedSpecs) {
    auto bad = presets::fwl(2);
    bad.i_seq = {0, 1};
    EXPECT_THROW(check_structure(bad), ConfigError);
    bad = presets::fwl(2);
    bad.j_seq = {0, 1, 1};
    EXPECT_THROW(check_structure(bad), ConfigError);
    bad = presets::fwl(3);
    bad.r = RSelector::distance_restricted(1);
    EXPECT_THROW(check_structure(bad), ConfigError);
    bad = presets::fwl(2);
    bad.t = 0;
    EXPECT_THROW(check_structure(bad), ConfigError);
}

TEST(InitColors, Examples) {
    ColorDictionary dict;
    const auto k2 = init_colors(presets::fwl(2), graphs::complete(2), dict);
    EXPECT_EQ(k2.tuples.size(), 4u);
    EXPECT_EQ(k2.class_count(), 2u);
    ColorDictionary dict2;
    EXPECT_EQ(init_colors(presets::fwl(2), Graph(5), dict2).class_count(), 2u);
    ColorDictionary dict3;
    EXPECT_TRUE(init_colors(presets::fwl(2), Graph(0), dict3).tuples.empty());
}

TEST(InitColors, EqualExactlyWhenIsomorphismTypesAgree) {
    for (const auto& g : enumerate_graphs(5, {.connected_only = false})) {
        ColorDictionary dict;
        const auto m = init_colors(presets::fwl(3), g, dict);
        for (std::size_t i = 0; i < m.tuples.size(); i += 7)
            for (std::size_t j = 0; j < m.tuples.size(); ++j)
                ASSERT_EQ(m.colors[i] == m.colors[j], atp(g, m.tuples[i]) == atp(g, m.tuples[j]));
    }
}

TEST(RefineStep, VertexTransitiveStaysConstant) {
    ColorDictionary dict;
    const auto spec = presets::local_fwl(1);
    const auto c0 = init_colors(spec, graphs::cycle(6), dict);
    const auto c1 = refine_step(spec, graphs::cycle(6), c0, dict);
    EXPECT_EQ(c0.class_count(), 1u);
    EXPECT_EQ(c1.class_count(), 1u);
}

TEST(RefineStep, OneRoundSeparatesTriangleFromPath) {
    ColorDictionary dict;
    const auto spec = presets::local_fwl(1);
    const Graph k3 = graphs::complete(3);
    const Graph p3 = graphs::path(3);
    const auto a0 = init_colors(spec, k3, dict);
    const auto b0 = init_colors(spec, p3, dict);
    EXPECT_EQ(sorted_colors(a0), sorted_colors(b0));
    const auto a1 = refine_step(spec, k3, a0, dict);
    const auto b1 = refine_step(spec, p3, b0, dict);
    EXPECT_NE(sorted_colors(a1), sorted_colors(b1));
}

TEST(RefineStep, NeverMergesClasses) {
    std::mt19937_64 rng(51);
    std::vector<Graph> pool = enumerate_graphs(4, {.connected_only = false});
    for (int i = 0; i < 15; ++i) pool.push_back(oracle::random_graph(6, 0.4, rng));
    for (const auto& [name, spec] : builtin_specs()) {
        for (const auto& g : pool) {
            if (!validate_spec(spec, g).ok()) continue;
            ColorDictionary dict;
            auto cur = init_colors(spec, g, dict);
            for (int step = 0; step < 4; ++step) {
                auto next = refine_step(spec, g, cur, dict);
                ASSERT_TRUE(refines(next, cur)) << name << " " << to_graph6(g);
                cur = std::move(next);
            }
        }
    }
}

TEST(RefineStep, IdempotentAtFixpoint) {
    ColorDictionary dict;
    const auto spec = presets::fwl(2);
    const Graph g = graphs::path(5);
    const auto stable = stabilize(spec, g, dict).stable_colors;
    const auto again = refine_step(spec, g, stable, dict);
    EXPECT_TRUE(refines(stable, again));
    EXPECT_TRUE(refines(again, stable));
}

TEST(Stabilize, IterationBounds) {
    ColorDictionary dict;
    EXPECT_LE(stabilize(presets::local_fwl(1), Graph(1), dict).iterations, 1);
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = oracle::random_graph(6, 0.4, rng);
        for (const auto& [name, spec] : builtin_specs()) {
            if (!validate_spec(spec, g).ok()) continue;
            ColorDictionary d;
            const auto r = stabilize(spec, g, d);
            EXPECT_LE(static_cast<std::size_t>(r.iterations), r.stable_colors.tuples.size() + 1) << name;
        }
    }
}

TEST(Stabilize, HexagonUnderTwoFwlHasSeveralClasses) {
    ColorDictionary dict;
    EXPECT_GE(stabilize(presets::fwl(2), graphs::cycle(6), dict).stable_colors.class_count(), 2u);
}

TEST(Distinguish, KnownPair) {
    const Graph c6 = graphs::cycle(6);
    const Graph two_c3 = disjoint_union(graphs::complete(3), graphs::complete(3));
    EXPECT_FALSE(distinguish(presets::local_fwl(1), c6, two_c3));
    EXPECT_TRUE(distinguish(presets::fwl(2), c6, two_c3));
    EXPECT_TRUE(oracle::trace_power(c6, 3) != oracle::trace_power(two_c3, 3));
}

TEST(Distinguish, EmptyAndTinyGraphs) {
    EXPECT_FALSE(distinguish(presets::fwl(2), Graph(0), Graph(0)));
    EXPECT_TRUE(distinguish(presets::fwl(2), Graph(0), Graph(1)));
    EXPECT_TRUE(distinguish(presets::local_fwl(1), Graph(2), graphs::complete(2)));
}

TEST(Distinguish, IsomorphicCopiesCollide) {
    std::mt19937_64 rng(53);
    for (const auto& [name, spec] : builtin_specs()) {
        for (int trial = 0; trial < 15; ++trial) {
            const Graph g = oracle::random_graph(5, 0.5, rng);
            if (!validate_spec(spec, g).ok()) continue;
            EXPECT_FALSE(distinguish(spec, g, oracle::random_relabel(g, rng))) << name << " " << to_graph6(g);
        }
    }
}

TEST(Distinguish, LocalOneFwlEqualsClassicColorRefinement) {
    const auto graphs_ = enumerate_connected_graphs(6);
    const auto spec = presets::local_fwl(1);
    for (std::size_t i = 0; i < graphs_.size(); ++i)
        for (std::size_t j = i; j < graphs_.size(); ++j)
            ASSERT_EQ(distinguish(spec, graphs_[i], graphs_[j]), oracle::one_wl_distinguishes(graphs_[i], graphs_[j]))
                << to_graph6(graphs_[i]) << " " << to_graph6(graphs_[j]);
}

TEST(Distinguish, JointRefinementIsSymmetric) {
    const auto list = enumerate_connected_graphs(4);
    for (const auto& g : list)
        for (const auto& h : list) EXPECT_EQ(distinguish(presets::fwl(2), g, h), distinguish(presets::fwl(2), h, g));
}

TEST(ValidateSpec, BuiltInsAreClosedOnSmallGraphs) {
    auto pool = enumerate_graphs(5, {.connected_only = false});
    for (const auto& g : enumerate_connected_graphs(6))
        if (g.node_count() == 6) pool.push_back(g);
    for (const auto& [name, spec] : builtin_specs())
        for (const auto& g : pool) ASSERT_TRUE(validate_spec(spec, g).ok()) << name << " " << to_graph6(g);
    EXPECT_TRUE(validate_spec(presets::drfwl2(1), graphs::cycle(6)).ok());
}

TEST(ValidateSpec, ReportsReplacementsOutsideR) {
    auto spec = presets::drfwl2(1);
    spec.f = FSelector::all_nodes();
    const auto report = validate_spec(spec, graphs::path(3));
    ASSERT_FALSE(report.ok());
    EXPECT_NE(report.violations.front().find("outside R(G)"), std::string::npos);
    EXPECT_THROW(distinguish(spec, graphs::path(3), graphs::path(3)), ConfigError);
}
