#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wlpower/game_common.hpp"

namespace wlpower {

/// Explicit game graph of the Cops-Robber game on one query graph.
///
/// Cops positions are (phase, pebbles, robber component). After every Cops
/// move the game passes through a Robber position (phase after the move,
/// new pebbles, old component) where Robber picks his next component: inside
/// the old one after a guarding move, containing it after an unguarding move.
/// The root is a Robber position with no pebbles and the whole node set, so
/// the initial choice of a connected component uses the same rule.
struct CopsRobberArena {
    struct State {
        bool robber_to_move = false;
        bool expand = false;  // Robber position after an unguarding move
        Phase phase;
        NodeTuple pebbles;
        NodeMask component = 0;
        std::vector<int> successors;
        std::vector<NodeTuple> move_labels;  // Cops positions: placed tuple or kept indices
    };

    std::vector<State> states;
    int root = 0;
    std::size_t cops_positions = 0;
    std::vector<char> cops_win;
    std::vector<int> chosen;  // Cops positions in the attractor: index into successors
};

namespace detail {

inline std::string cr_key(bool robber, bool expand, const Phase& phase, const NodeTuple& pebbles, NodeMask comp) {
    std::string key;
    key.reserve(4 + pebbles.size() + 8);
    key.push_back(static_cast<char>(robber));
    key.push_back(static_cast<char>(expand));
    key.push_back(static_cast<char>(phase.kind));
    key.push_back(static_cast<char>(phase.index));
    for (Node v : pebbles) key.push_back(static_cast<char>(v));
    key.push_back('|');
    for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((comp >> (8 * i)) & 0xff));
    return key;
}

/// Robber's legal components: after a guarding move the components of G - X
/// inside the old one; after an unguarding move the one component containing it.
inline std::vector<NodeMask> robber_options(const Graph& g, const NodeTuple& pebbles, NodeMask old, bool expand) {
    const NodeMask x = occupied(pebbles);
    if (expand) return {component_containing(g, x, old)};
    std::vector<NodeMask> out;
    for (NodeMask c : component_masks(g, x))
        if ((c & ~old) == 0) out.push_back(c);
    return out;
}

inline double cr_state_bound(const GfwlSpec& spec, int n) {
    return std::pow(n + 1.0, spec.k + spec.t) * std::pow(2.0, n) *
           (spec.init_moves() + spec.update_moves() + 1);
}

}  // namespace detail

inline CopsRobberArena build_cops_robber_arena(const GfwlSpec& spec, const Graph& f, const SolveLimits& limits = {}) {
    if (auto report = validate_spec(spec, f); !report.ok()) throw ConfigError(report.violations.front());
    MoveTable table(spec, f);
    const auto remove_sets = replacement_indices(spec.k, spec.t);

    CopsRobberArena arena;
    std::unordered_map<std::string, int> index;
    std::deque<int> queue;
    auto intern = [&](bool robber, bool expand, const Phase& phase, NodeTuple pebbles, NodeMask comp) {
        auto key = detail::cr_key(robber, expand, phase, pebbles, comp);
        auto [it, fresh] = index.try_emplace(std::move(key), static_cast<int>(arena.states.size()));
        if (fresh) {
            arena.states.push_back({robber, expand, phase, std::move(pebbles), comp, {}, {}});
            if (!robber) ++arena.cops_positions;
            queue.push_back(it->second);
            limits.check_states(arena.states.size());
            if ((arena.states.size() & 0xfff) == 0) limits.check_time(arena.states.size());
        }
        return it->second;
    };

    arena.root = intern(true, false, Phase{Phase::Kind::InitPut, 1}, {}, f.all_nodes());
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        // copy: interning may reallocate `states`
        const auto cur = arena.states[s];
        std::vector<int> succ;
        std::vector<NodeTuple> labels;
        if (cur.robber_to_move) {
            for (NodeMask c : detail::robber_options(f, cur.pebbles, cur.component, cur.expand))
                succ.push_back(intern(false, false, cur.phase, cur.pebbles, c));
        } else if (cur.phase.kind == Phase::Kind::Remove) {
            for (const auto& keep : remove_sets) {
                succ.push_back(intern(true, true, next_phase(spec, cur.phase), select(cur.pebbles, keep),
                                      cur.component));
                labels.emplace_back(keep.begin(), keep.end());
            }
        } else {
            for (const auto& delta : table.options(cur.phase, cur.pebbles)) {
                succ.push_back(intern(true, false, next_phase(spec, cur.phase), concat(cur.pebbles, delta),
                                      cur.component));
                labels.push_back(delta);
            }
        }
        arena.states[s].successors = std::move(succ);
        arena.states[s].move_labels = std::move(labels);
    }

    if (static_cast<double>(arena.cops_positions) > detail::cr_state_bound(spec, f.node_count()))
        throw std::logic_error("Cops-Robber position count exceeds the finiteness bound");
    return arena;
}

/// Least fixed point of Cops-winning positions: Robber positions without a
/// legal component are Cops wins; Cops positions need one winning successor,
/// Robber positions need all successors winning.
inline void solve_attractor(CopsRobberArena& arena) {
    const std::size_t n = arena.states.size();
    arena.cops_win.assign(n, 0);
    arena.chosen.assign(n, -1);
    std::vector<std::vector<int>> preds(n);
    std::vector<std::size_t> pending(n);
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        for (int t : arena.states[s].successors) preds[t].push_back(static_cast<int>(s));
        pending[s] = arena.states[s].successors.size();
        if (arena.states[s].robber_to_move && pending[s] == 0) {
            arena.cops_win[s] = 1;
            queue.push_back(static_cast<int>(s));
        }
    }
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        for (int p : preds[s]) {
            if (arena.cops_win[p]) continue;
            auto& ps = arena.states[p];
            if (!ps.robber_to_move) {
                const auto it = std::find(ps.successors.begin(), ps.successors.end(), s);
                arena.chosen[p] = static_cast<int>(it - ps.successors.begin());
                arena.cops_win[p] = 1;
                queue.push_back(p);
            } else if (--pending[p] == 0) {
                arena.cops_win[p] = 1;
                queue.push_back(p);
            }
        }
    }
}

/// Decides whether Cops win on `f`; a Cops win carries their positional
/// strategy on every winning Cops position as the certificate.
inline GameVerdict cops_robber_wins(const GfwlSpec& spec, const Graph& f, const SolveLimits& limits = {}) {
    auto arena = build_cops_robber_arena(spec, f, limits);
    solve_attractor(arena);
    GameVerdict verdict;
    verdict.game = GameKind::CopsRobber;
    verdict.states_explored = arena.states.size();
    verdict.winner = arena.cops_win[arena.root] ? Winner::FirstPlayer : Winner::SecondPlayer;
    if (verdict.first_player_wins()) {
        for (std::size_t s = 0; s < arena.states.size(); ++s) {
            const auto& st = arena.states[s];
            if (st.robber_to_move || !arena.cops_win[s]) continue;
            CertificateEntry e;
            e.phase = st.phase;
            e.pebbles_g = st.pebbles;
            e.robber = st.component;
            e.choice = st.move_labels[arena.chosen[s]];
            verdict.certificate.push_back(std::move(e));
        }
    }
    return verdict;
}

namespace detail {

class CopsReplay {
public:
    CopsReplay(const GfwlSpec& spec, const Graph& f, const std::vector<CertificateEntry>& cert)
        : spec_(spec), f_(f), table_(spec, f), remove_sets_(replacement_indices(spec.k, spec.t)) {
        for (const auto& e : cert) {
            auto key = cr_key(false, false, e.phase, e.pebbles_g, e.robber);
            if (!strategy_.emplace(std::move(key), &e).second)
                throw DomainError("certificate lists a Cops position twice");
        }
    }

    bool run() { return robber_moves(Phase{Phase::Kind::InitPut, 1}, {}, f_.all_nodes(), false); }

private:
    // every Robber answer must lead to a position the strategy wins
    bool robber_moves(const Phase& phase, const NodeTuple& pebbles, NodeMask old, bool expand) {
        for (NodeMask c : robber_options(f_, pebbles, old, expand))
            if (!cops_move(phase, pebbles, c)) return false;
        return true;
    }

    bool cops_move(const Phase& phase, const NodeTuple& pebbles, NodeMask comp) {
        auto key = cr_key(false, false, phase, pebbles, comp);
        if (won_.contains(key)) return true;
        if (!on_path_.insert(key).second) return false;  // Robber can repeat forever
        auto it = strategy_.find(key);
        bool ok = false;
        if (it != strategy_.end()) {
            const auto& choice = it->second->choice;
            if (phase.kind == Phase::Kind::Remove) {
                const std::vector<int> keep(choice.begin(), choice.end());
                if (std::find(remove_sets_.begin(), remove_sets_.end(), keep) != remove_sets_.end())
                    ok = robber_moves(next_phase(spec_, phase), select(pebbles, keep), comp, true);
            } else {
                const auto& opts = table_.options(phase, pebbles);
                if (std::binary_search(opts.begin(), opts.end(), choice))
                    ok = robber_moves(next_phase(spec_, phase), concat(pebbles, choice), comp, false);
            }
        }
        on_path_.erase(key);
        if (ok) won_.insert(std::move(key));
        return ok;
    }

    const GfwlSpec& spec_;
    const Graph& f_;
    MoveTable table_;
    std::vector<std::vector<int>> remove_sets_;
    std::unordered_map<std::string, const CertificateEntry*> strategy_;
    std::set<std::string> won_;
    std::set<std::string> on_path_;
};

}  // namespace detail

/// Plays the certificate's Cops strategy against every Robber line of play.
inline bool replay_cops_certificate(const GameVerdict& verdict, const GfwlSpec& spec, const Graph& f) {
    if (verdict.game != GameKind::CopsRobber) throw DomainError("not a Cops-Robber verdict");
    if (!verdict.first_player_wins()) return false;
    return detail::CopsReplay(spec, f, verdict.certificate).run();
}

}  // namespace wlpower
