#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wlpower/cops_robber.hpp"
#include "wlpower/ef_game.hpp"
#include "wlpower/enumerate.hpp"
#include "wlpower/treewidth.hpp"

using namespace wlpower;

namespace {

const Graph kC6 = graphs::cycle(6);
const Graph k2C3 = disjoint_union(graphs::complete(3), graphs::complete(3));

}  // namespace

TEST(Phase, NamesAndSuccession) {
    const auto spec = presets::fwl_plus(2, 2);
    Phase p{Phase::Kind::InitPut, 1};
    std::vector<std::string> seen;
    for (int i = 0; i < 6; ++i) {
        seen.push_back(to_string(p));
        EXPECT_EQ(parse_phase(to_string(p)), p);
        p = next_phase(spec, p);
    }
    EXPECT_EQ(seen, (std::vector<std::string>{"init:1", "init:2", "update:1", "update:2", "remove", "update:1"}));
    EXPECT_FALSE(parse_phase("nonsense"));
    EXPECT_FALSE(parse_phase("init:x"));
}

TEST(CopsRobber, Examples) {
    const auto k2 = cops_robber_wins(presets::local_fwl(1), graphs::complete(2));
    EXPECT_EQ(winner_name(k2), "cops");
    EXPECT_TRUE(replay_cops_certificate(k2, presets::local_fwl(1), graphs::complete(2)));
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(2), graphs::complete(4))), "robber");
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(2), graphs::complete(3))), "cops");
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(1), Graph(1))), "cops");
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(1), Graph(0))), "cops");
}

TEST(CopsRobber, TreesAreCopsWinsUnderTwoFwl) {
    for (const auto& g : enumerate_connected_graphs(7)) {
        if (g.edge_count() != g.node_count() - 1) continue;
        const auto v = cops_robber_wins(presets::fwl(2), g);
        ASSERT_TRUE(v.first_player_wins()) << to_graph6(g);
        ASSERT_TRUE(replay_cops_certificate(v, presets::fwl(2), g));
    }
}

TEST(CopsRobber, DisconnectedGraphNeedsEveryComponent) {
    // two pebbles cannot clear the triangle component
    const Graph g = disjoint_union(graphs::complete(2), graphs::complete(3));
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(1), g)), "robber");
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(1), graphs::complete(2))), "cops");
    EXPECT_EQ(winner_name(cops_robber_wins(presets::fwl(2), g)), "cops");
}

TEST(CopsRobber, CertificatesReplayAndTamperingBreaksThem) {
    const auto spec = presets::fwl(2);
    const Graph c5 = graphs::cycle(5);
    auto v = cops_robber_wins(spec, c5);
    ASSERT_TRUE(v.first_player_wins());
    EXPECT_TRUE(replay_certificate(v, spec, {c5}));
    // always keeping the first two pebbles never lets the Cops advance
    auto tampered = v;
    for (auto& e : tampered.certificate)
        if (e.phase.kind == Phase::Kind::Remove) e.choice = {0, 1};
    EXPECT_FALSE(replay_cops_certificate(tampered, spec, c5));
    auto truncated = v;
    truncated.certificate.clear();
    EXPECT_FALSE(replay_cops_certificate(truncated, spec, c5));
    auto wrong_move = v;
    for (auto& e : wrong_move.certificate)
        if (e.phase.kind == Phase::Kind::InitPut) e.choice = {9};
    EXPECT_FALSE(replay_cops_certificate(wrong_move, spec, c5));
}

TEST(CopsRobber, RobberWinsHaveNoCertificate) {
    const auto v = cops_robber_wins(presets::fwl(2), graphs::complete(4));
    EXPECT_TRUE(v.certificate.empty());
    EXPECT_FALSE(replay_cops_certificate(v, presets::fwl(2), graphs::complete(4)));
}

TEST(CopsRobber, UnguardingMovesGiveRobberOneChoice) {
    for (const auto& spec : {presets::fwl(2), presets::local_fwl(2), presets::drfwl2(1), presets::fwl_plus(1, 2)}) {
        for (const auto& g : enumerate_connected_graphs(5)) {
            const auto arena = build_cops_robber_arena(spec, g);
            for (const auto& st : arena.states) {
                if (st.robber_to_move && st.expand) {
                    ASSERT_EQ(st.successors.size(), 1u);
                }
                if (!st.robber_to_move) {
                    ASSERT_NE(st.component, 0u);
                    ASSERT_EQ(st.component & occupied(st.pebbles), 0u);
                    ASSERT_TRUE(oracle::connected(g.induced(st.component)));
                }
            }
        }
    }
}

TEST(CopsRobber, PositionCountWithinBound) {
    for (const auto& g : enumerate_connected_graphs(5)) {
        const auto spec = presets::fwl(2);
        const auto arena = build_cops_robber_arena(spec, g);
        EXPECT_LE(static_cast<double>(arena.cops_positions), detail::cr_state_bound(spec, g.node_count()));
    }
}

TEST(CopsRobber, RespectsStateBudget) {
    SolveLimits tight;
    tight.max_states = 10;
    EXPECT_THROW(cops_robber_wins(presets::fwl(2), graphs::cycle(6), tight), ResourceError);
}

TEST(CopsRobber, RejectsSpecsNotClosedOnTheGraph) {
    auto spec = presets::drfwl2(1);
    spec.f = FSelector::all_nodes();
    EXPECT_THROW(cops_robber_wins(spec, graphs::path(3)), ConfigError);
}

TEST(CopsRobber, InvariantUnderRelabeling) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracle::random_graph(6, 0.45, rng);
        for (const auto& spec : {presets::fwl(2), presets::local_fwl(1), presets::drfwl2(1)})
            EXPECT_EQ(cops_robber_wins(spec, g).winner, cops_robber_wins(spec, oracle::random_relabel(g, rng)).winner);
    }
}

TEST(CopsRobber, LocalOneFwlCopsWinExactlyOnTrees) {
    for (const auto& g : enumerate_connected_graphs(6))
        EXPECT_EQ(cops_robber_wins(presets::local_fwl(1), g).first_player_wins(), treewidth(g) <= 1) << to_graph6(g);
}

TEST(EfGame, Examples) {
    const auto spec1 = presets::local_fwl(1);
    const auto a = spoiler_wins(spec1, graphs::complete(3), graphs::path(3));
    EXPECT_EQ(winner_name(a), "spoiler");
    EXPECT_TRUE(replay_spoiler_certificate(a, spec1, graphs::complete(3), graphs::path(3)));
    const auto b = spoiler_wins(presets::fwl(2), kC6, k2C3);
    EXPECT_EQ(winner_name(b), "spoiler");
    EXPECT_TRUE(replay_certificate(b, presets::fwl(2), {kC6, k2C3}));
    EXPECT_EQ(winner_name(spoiler_wins(spec1, kC6, k2C3)), "duplicator");
}

TEST(EfGame, DuplicatorWinsOnIsomorphicPairs) {
    std::mt19937_64 rng(72);
    for (const auto& spec : {presets::local_fwl(1), presets::fwl(2), presets::local_fwl(2), presets::drfwl2(1)})
        for (int trial = 0; trial < 5; ++trial) {
            const Graph g = oracle::random_graph(5, 0.5, rng);
            const auto v = spoiler_wins(spec, g, oracle::random_relabel(g, rng));
            EXPECT_FALSE(v.first_player_wins());
            EXPECT_TRUE(v.certificate.empty());
        }
}

TEST(EfGame, SizeMismatchAndEmptyGraphs) {
    const auto v = spoiler_wins(presets::fwl(2), graphs::complete(3), graphs::complete(4));
    ASSERT_TRUE(v.first_player_wins());
    EXPECT_TRUE(std::any_of(v.certificate.begin(), v.certificate.end(),
                            [](const CertificateEntry& e) { return e.size_mismatch && e.pebbles_g.empty(); }));
    EXPECT_TRUE(replay_spoiler_certificate(v, presets::fwl(2), graphs::complete(3), graphs::complete(4)));
    // nothing to place: Spoiler never gets a move
    EXPECT_FALSE(spoiler_wins(presets::fwl(1), Graph(0), Graph(0)).first_player_wins());
}

TEST(EfGame, TamperedSpoilerCertificatesFail) {
    const auto spec = presets::local_fwl(1);
    const Graph k3 = graphs::complete(3);
    const Graph p3 = graphs::path(3);
    const auto v = spoiler_wins(spec, k3, p3);
    ASSERT_TRUE(v.first_player_wins());
    auto emptied = v;
    for (auto& e : emptied.certificate)
        if (e.phase.kind == Phase::Kind::InitPut && e.pebbles_g.empty()) e.spoiler_set.clear();
    EXPECT_FALSE(replay_spoiler_certificate(emptied, spec, k3, p3));
    auto foreign = v;
    for (auto& e : foreign.certificate) e.spoiler_set = {{7}};
    EXPECT_FALSE(replay_spoiler_certificate(foreign, spec, k3, p3));
    auto missing = v;
    missing.certificate.clear();
    EXPECT_FALSE(replay_spoiler_certificate(missing, spec, k3, p3));
}

TEST(EfGame, AgreesWithRefinementOnSmallPairs) {
    const auto list = enumerate_connected_graphs(4);
    for (const auto& spec : {presets::local_fwl(1), presets::fwl(2), presets::drfwl2(1), presets::fwl_plus(1, 2)})
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                const auto v = spoiler_wins(spec, list[i], list[j]);
                ASSERT_EQ(v.first_player_wins(), distinguish(spec, list[i], list[j]));
                if (v.first_player_wins()) {
                    ASSERT_TRUE(replay_spoiler_certificate(v, spec, list[i], list[j]));
                }
            }
}

TEST(EfGame, RespectsStateBudget) {
    SolveLimits tight;
    tight.max_states = 5;
    EXPECT_THROW(spoiler_wins(presets::fwl(2), kC6, k2C3, tight), ResourceError);
}

TEST(Replay, RejectsMalformedInputs) {
    const auto v = cops_robber_wins(presets::fwl(2), graphs::complete(3));
    EXPECT_THROW(replay_certificate(v, presets::fwl(2), {}), DomainError);
    auto bad = v;
    bad.certificate.front().pebbles_g = {5};
    EXPECT_THROW(replay_certificate(bad, presets::fwl(2), {graphs::complete(3)}), DomainError);
    EXPECT_THROW(replay_spoiler_certificate(v, presets::fwl(2), graphs::complete(3), graphs::complete(3)),
                 DomainError);
}
