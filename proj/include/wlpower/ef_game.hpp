#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wlpower/cops_robber.hpp"
#include "wlpower/game_common.hpp"
#include "wlpower/iso_type.hpp"
#include "wlpower/matching.hpp"

namespace wlpower {

/// Explicit game graph of the Ehrenfeucht-Fraisse game on (G, H).
///
/// A putting position stores the option lists on both sides and, when they
/// have equal size, a row-major |A| x |B| successor matrix (-1 where the
/// isomorphism types of the extended pebble tuples differ, i.e. Spoiler wins
/// at once). A removing position stores one successor per kept index set.
struct EfArena {
    struct State {
        Phase phase;
        NodeTuple pebbles_g;
        NodeTuple pebbles_h;
        bool size_mismatch = false;
        std::vector<NodeTuple> options_g;
        std::vector<NodeTuple> options_h;
        std::vector<int> successors;
    };

    std::vector<State> states;
    int root = 0;
    std::vector<char> duplicator_wins;
    std::vector<std::size_t> death_rank;              // order in which positions were refuted
    std::vector<std::vector<int>> hall_sets;          // putting positions: refuting G-side rows
    std::vector<int> spoiler_remove_choice;           // removing positions: refuting index set
};

namespace detail {

inline std::string ef_key(const Phase& phase, const NodeTuple& pg, const NodeTuple& ph) {
    std::string key;
    key.reserve(2 + pg.size() + ph.size() + 1);
    key.push_back(static_cast<char>(phase.kind));
    key.push_back(static_cast<char>(phase.index));
    for (Node v : pg) key.push_back(static_cast<char>(v));
    key.push_back('|');
    for (Node v : ph) key.push_back(static_cast<char>(v));
    return key;
}

inline BipartiteGraph safe_pairs(const EfArena::State& st, const std::vector<char>& alive) {
    const int rows = static_cast<int>(st.options_g.size());
    const int cols = static_cast<int>(st.options_h.size());
    BipartiteGraph bg{rows, cols, std::vector<std::vector<int>>(rows)};
    for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols; ++b) {
            const int s = st.successors[static_cast<std::size_t>(a) * cols + b];
            if (s >= 0 && alive[s]) bg.adj[a].push_back(b);
        }
    return bg;
}

}  // namespace detail

inline EfArena build_ef_arena(const GfwlSpec& spec, const Graph& g, const Graph& h, const SolveLimits& limits = {}) {
    if (auto report = validate_spec(spec, g); !report.ok()) throw ConfigError(report.violations.front());
    if (auto report = validate_spec(spec, h); !report.ok()) throw ConfigError(report.violations.front());
    MoveTable tg(spec, g);
    MoveTable th(spec, h);
    const auto remove_sets = replacement_indices(spec.k, spec.t);

    EfArena arena;
    std::unordered_map<std::string, int> index;
    std::deque<int> queue;
    auto intern = [&](const Phase& phase, NodeTuple pg, NodeTuple ph) {
        auto [it, fresh] = index.try_emplace(detail::ef_key(phase, pg, ph), static_cast<int>(arena.states.size()));
        if (fresh) {
            EfArena::State st;
            st.phase = phase;
            st.pebbles_g = std::move(pg);
            st.pebbles_h = std::move(ph);
            arena.states.push_back(std::move(st));
            queue.push_back(it->second);
            limits.check_states(arena.states.size());
            if ((arena.states.size() & 0xfff) == 0) limits.check_time(arena.states.size());
        }
        return it->second;
    };

    arena.root = intern(Phase{Phase::Kind::InitPut, 1}, {}, {});
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        const Phase phase = arena.states[s].phase;
        const NodeTuple pg = arena.states[s].pebbles_g;
        const NodeTuple ph = arena.states[s].pebbles_h;
        std::vector<int> succ;
        if (phase.kind == Phase::Kind::Remove) {
            for (const auto& keep : remove_sets) succ.push_back(intern(next_phase(spec, phase), select(pg, keep), select(ph, keep)));
            arena.states[s].successors = std::move(succ);
            continue;
        }
        const TupleSet& a = tg.options(phase, pg);
        const TupleSet& b = th.options(phase, ph);
        if (a.size() != b.size()) {
            arena.states[s].size_mismatch = true;
            continue;
        }
        succ.reserve(a.size() * b.size());
        for (const auto& x : a) {
            const NodeTuple ng = concat(pg, x);
            const IsoType tg_type = atp(g, ng);
            for (const auto& y : b) {
                NodeTuple nh = concat(ph, y);
                succ.push_back(atp(h, nh) == tg_type ? intern(next_phase(spec, phase), ng, std::move(nh)) : -1);
            }
        }
        auto& st = arena.states[s];
        st.options_g.assign(a.begin(), a.end());
        st.options_h.assign(b.begin(), b.end());
        st.successors = std::move(succ);
    }
    return arena;
}

/// Greatest fixed point of Duplicator-winning positions. A putting position
/// survives iff a bijection between the option sets maps every option to a
/// surviving successor; a removing position survives iff all successors do.
inline void solve_duplicator(EfArena& arena) {
    const std::size_t n = arena.states.size();
    arena.duplicator_wins.assign(n, 1);
    arena.death_rank.assign(n, 0);
    arena.hall_sets.assign(n, {});
    arena.spoiler_remove_choice.assign(n, -1);
    std::vector<std::vector<int>> preds(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto succ = arena.states[s].successors;
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        for (int t : succ)
            if (t >= 0) preds[t].push_back(static_cast<int>(s));
    }

    std::size_t rank = 0;
    std::deque<int> dead;
    auto refute = [&](int s) {
        auto& st = arena.states[s];
        if (st.phase.kind == Phase::Kind::Remove) {
            for (std::size_t c = 0; c < st.successors.size(); ++c)
                if (!arena.duplicator_wins[st.successors[c]]) {
                    arena.spoiler_remove_choice[s] = static_cast<int>(c);
                    return true;
                }
            return false;
        }
        if (st.size_mismatch) return true;
        auto violator = hall_violator(detail::safe_pairs(st, arena.duplicator_wins));
        if (violator.empty()) return false;
        arena.hall_sets[s] = std::move(violator);
        return true;
    };
    auto kill = [&](int s) {
        arena.duplicator_wins[s] = 0;
        arena.death_rank[s] = ++rank;
        dead.push_back(s);
    };

    for (std::size_t s = 0; s < n; ++s)
        if (refute(static_cast<int>(s))) kill(static_cast<int>(s));
    while (!dead.empty()) {
        const int s = dead.front();
        dead.pop_front();
        for (int p : preds[s])
            if (arena.duplicator_wins[p] && refute(p)) kill(p);
    }
}

/// Decides the game; a Spoiler win carries one refutation per Spoiler-winning position.
inline GameVerdict spoiler_wins(const GfwlSpec& spec, const Graph& g, const Graph& h, const SolveLimits& limits = {}) {
    auto arena = build_ef_arena(spec, g, h, limits);
    solve_duplicator(arena);
    GameVerdict verdict;
    verdict.game = GameKind::EhrenfeuchtFraisse;
    verdict.states_explored = arena.states.size();
    verdict.winner = arena.duplicator_wins[arena.root] ? Winner::SecondPlayer : Winner::FirstPlayer;
    if (!verdict.first_player_wins()) return verdict;

    const auto remove_sets = replacement_indices(spec.k, spec.t);
    for (std::size_t s = 0; s < arena.states.size(); ++s) {
        if (arena.duplicator_wins[s]) continue;
        const auto& st = arena.states[s];
        CertificateEntry e;
        e.phase = st.phase;
        e.pebbles_g = st.pebbles_g;
        e.pebbles_h = st.pebbles_h;
        if (st.phase.kind == Phase::Kind::Remove) {
            const auto& keep = remove_sets[arena.spoiler_remove_choice[s]];
            e.choice.assign(keep.begin(), keep.end());
        } else if (st.size_mismatch) {
            e.size_mismatch = true;
        } else {
            for (int row : arena.hall_sets[s]) e.spoiler_set.push_back(st.options_g[row]);
        }
        verdict.certificate.push_back(std::move(e));
    }
    return verdict;
}

namespace detail {

class SpoilerReplay {
public:
    SpoilerReplay(const GfwlSpec& spec, const Graph& g, const Graph& h, const std::vector<CertificateEntry>& cert)
        : spec_(spec), g_(g), h_(h), tg_(spec, g), th_(spec, h), remove_sets_(replacement_indices(spec.k, spec.t)) {
        for (const auto& e : cert)
            if (!strategy_.emplace(ef_key(e.phase, e.pebbles_g, e.pebbles_h), &e).second)
                throw DomainError("certificate lists a position twice");
    }

    bool run() { return spoiler_wins_at(Phase{Phase::Kind::InitPut, 1}, {}, {}); }

private:
    bool spoiler_wins_at(const Phase& phase, const NodeTuple& pg, const NodeTuple& ph) {
        if (atp(g_, pg) != atp(h_, ph)) return true;
        auto key = ef_key(phase, pg, ph);
        if (won_.contains(key)) return true;
        if (!on_path_.insert(key).second) return false;  // Duplicator survives a cycle
        const bool ok = evaluate(phase, pg, ph);
        on_path_.erase(key);
        if (ok) won_.insert(std::move(key));
        return ok;
    }

    bool evaluate(const Phase& phase, const NodeTuple& pg, const NodeTuple& ph) {
        if (phase.kind != Phase::Kind::Remove) {
            const TupleSet& a = tg_.options(phase, pg);
            const TupleSet& b = th_.options(phase, ph);
            if (a.size() != b.size()) return true;  // no bijection exists
        }
        auto it = strategy_.find(ef_key(phase, pg, ph));
        if (it == strategy_.end()) return false;
        const CertificateEntry& e = *it->second;

        if (phase.kind == Phase::Kind::Remove) {
            const std::vector<int> keep(e.choice.begin(), e.choice.end());
            if (std::find(remove_sets_.begin(), remove_sets_.end(), keep) == remove_sets_.end()) return false;
            return spoiler_wins_at(next_phase(spec_, phase), select(pg, keep), select(ph, keep));
        }

        // copies: recursive calls below may grow the move tables
        const TupleSet a = tg_.options(phase, pg);
        const TupleSet b = th_.options(phase, ph);
        const std::set<NodeTuple> chosen(e.spoiler_set.begin(), e.spoiler_set.end());
        for (const auto& x : chosen)
            if (!std::binary_search(a.begin(), a.end(), x)) return false;

        // Duplicator escapes iff some bijection sends every chosen option to a
        // partner from which Spoiler's strategy does not win.
        BipartiteGraph bg{static_cast<int>(a.size()), static_cast<int>(b.size()),
                          std::vector<std::vector<int>>(a.size())};
        const Phase next = next_phase(spec_, phase);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (!chosen.contains(a[i]) || !spoiler_wins_at(next, concat(pg, a[i]), concat(ph, b[j])))
                    bg.adj[i].push_back(static_cast<int>(j));
            }
        }
        return !has_perfect_matching(bg);
    }

    const GfwlSpec& spec_;
    const Graph& g_;
    const Graph& h_;
    MoveTable tg_;
    MoveTable th_;
    std::vector<std::vector<int>> remove_sets_;
    std::unordered_map<std::string, const CertificateEntry*> strategy_;
    std::set<std::string> won_;
    std::set<std::string> on_path_;
};

}  // namespace detail

/// Plays the certificate's Spoiler strategy against every Duplicator bijection.
inline bool replay_spoiler_certificate(const GameVerdict& verdict, const GfwlSpec& spec, const Graph& g,
                                       const Graph& h) {
    if (verdict.game != GameKind::EhrenfeuchtFraisse) throw DomainError("not an Ehrenfeucht-Fraisse verdict");
    if (!verdict.first_player_wins()) return false;
    return detail::SpoilerReplay(spec, g, h, verdict.certificate).run();
}

/// Replays any verdict's certificate: `inputs` holds the query graph for a
/// Cops-Robber verdict and the pair (G, H) for an Ehrenfeucht-Fraisse verdict.
inline bool replay_certificate(const GameVerdict& verdict, const GfwlSpec& spec, const std::vector<Graph>& inputs) {
    const std::size_t expected = verdict.game == GameKind::CopsRobber ? 1 : 2;
    if (inputs.size() != expected)
        throw DomainError("replay needs " + std::to_string(expected) + " input graph(s)");
    for (const auto& e : verdict.certificate) {
        inputs[0].check_tuple(e.pebbles_g);
        if (expected == 2) inputs[1].check_tuple(e.pebbles_h);
        if ((e.robber & ~inputs[0].all_nodes()) != 0) throw DomainError("robber component outside the graph");
        for (const auto& x : e.spoiler_set) inputs[0].check_tuple(x);
    }
    if (verdict.game == GameKind::CopsRobber) return replay_cops_certificate(verdict, spec, inputs[0]);
    return replay_spoiler_certificate(verdict, spec, inputs[0], inputs[1]);
}

}  // namespace wlpower
