#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlpower/errors.hpp"
#include "wlpower/gfwl.hpp"
#include "wlpower/graph.hpp"
#include "wlpower/selectors.hpp"

namespace wlpower {

/// Which move of a round is next. Indices are 1-based like the move numbers.
struct Phase {
    enum class Kind : std::uint8_t { InitPut, UpdatePut, Remove };
    Kind kind = Kind::InitPut;
    int index = 1;

    friend auto operator<=>(const Phase&, const Phase&) = default;
    friend bool operator==(const Phase&, const Phase&) = default;
};

inline std::string to_string(const Phase& p) {
    switch (p.kind) {
        case Phase::Kind::InitPut: return "init:" + std::to_string(p.index);
        case Phase::Kind::UpdatePut: return "update:" + std::to_string(p.index);
        case Phase::Kind::Remove: return "remove";
    }
    return "?";
}

inline std::optional<Phase> parse_phase(const std::string& s) {
    if (s == "remove") return Phase{Phase::Kind::Remove, 1};
    auto colon = s.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const auto head = s.substr(0, colon);
    int idx = 0;
    try {
        idx = std::stoi(s.substr(colon + 1));
    } catch (...) {
        return std::nullopt;
    }
    if (head == "init") return Phase{Phase::Kind::InitPut, idx};
    if (head == "update") return Phase{Phase::Kind::UpdatePut, idx};
    return std::nullopt;
}

/// Phase that follows a putting move with index `p.index`.
inline Phase next_phase(const GfwlSpec& spec, const Phase& p) {
    switch (p.kind) {
        case Phase::Kind::InitPut:
            return p.index < spec.init_moves() ? Phase{Phase::Kind::InitPut, p.index + 1}
                                               : Phase{Phase::Kind::UpdatePut, 1};
        case Phase::Kind::UpdatePut:
            return p.index < spec.update_moves() ? Phase{Phase::Kind::UpdatePut, p.index + 1}
                                                 : Phase{Phase::Kind::Remove, 1};
        case Phase::Kind::Remove:
            return Phase{Phase::Kind::UpdatePut, 1};
    }
    return p;
}

struct SolveLimits {
    std::size_t max_states = 5'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_time(std::size_t work) const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw ResourceError("time limit exceeded after " + std::to_string(work) + " states", work);
    }
    void check_states(std::size_t states) const {
        if (states > max_states)
            throw ResourceError("state budget of " + std::to_string(max_states) + " exceeded", states);
    }
};

/// The option sets a player picks from in each putting move on one graph:
/// suffix sets of the prefix projections R_n(G) and F_m(G, v).
class MoveTable {
public:
    MoveTable(const GfwlSpec& spec, const Graph& g) : spec_(spec), g_(g), dist_(g) {
        const TupleSet r = r_set(spec.r, spec.k, g, dist_);
        init_.resize(spec.init_moves());
        for (int n = 1; n <= spec.init_moves(); ++n) init_[n - 1] = split(prefix_project(r, spec.i_seq[n]),
                                                                            spec.i_seq[n - 1]);
    }

    const Graph& graph() const noexcept { return g_; }

    const TupleSet& init_options(int n, const NodeTuple& prefix) const {
        return lookup(init_[n - 1], prefix);
    }

    /// Options for the m-th auxiliary move given the main tuple and the auxiliary prefix.
    const TupleSet& update_options(const NodeTuple& main, int m, const NodeTuple& aux_prefix) {
        auto it = update_.find(main);
        if (it == update_.end()) {
            const TupleSet f = f_set(spec_.f, spec_.t, g_, main, dist_);
            std::vector<Levels> levels(spec_.update_moves());
            for (int j = 1; j <= spec_.update_moves(); ++j)
                levels[j - 1] = split(prefix_project(f, spec_.j_seq[j]), spec_.j_seq[j - 1]);
            it = update_.emplace(main, std::move(levels)).first;
        }
        return lookup(it->second[m - 1], aux_prefix);
    }

    /// Options for the putting move described by `phase`, where `pebbles`
    /// holds the main tuple (k entries, once placed) followed by auxiliaries.
    const TupleSet& options(const Phase& phase, const NodeTuple& pebbles) {
        if (phase.kind == Phase::Kind::InitPut) return init_options(phase.index, pebbles);
        const NodeTuple main(pebbles.begin(), pebbles.begin() + spec_.k);
        const NodeTuple aux(pebbles.begin() + spec_.k, pebbles.end());
        return update_options(main, phase.index, aux);
    }

private:
    using Levels = std::map<NodeTuple, TupleSet>;

    static Levels split(const TupleSet& tuples, int prefix_len) {
        Levels out;
        for (const auto& t : tuples)
            out[NodeTuple(t.begin(), t.begin() + prefix_len)].emplace_back(t.begin() + prefix_len, t.end());
        return out;
    }

    static const TupleSet& lookup(const Levels& levels, const NodeTuple& prefix) {
        static const TupleSet empty;
        auto it = levels.find(prefix);
        return it == levels.end() ? empty : it->second;
    }

    const GfwlSpec& spec_;
    const Graph& g_;
    DistanceTable dist_;
    std::vector<Levels> init_;
    std::map<NodeTuple, std::vector<Levels>> update_;
};

inline NodeTuple concat(const NodeTuple& a, const NodeTuple& b) {
    NodeTuple out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline NodeTuple select(const NodeTuple& t, const std::vector<int>& idx) {
    NodeTuple out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(t[i]);
    return out;
}

inline NodeMask occupied(const NodeTuple& t) {
    NodeMask m = 0;
    for (Node v : t) m |= bit(v);
    return m;
}

// ---------------------------------------------------------------------------
// Verdicts and certificates
// ---------------------------------------------------------------------------

enum class GameKind { CopsRobber, EhrenfeuchtFraisse };
enum class Winner { FirstPlayer, SecondPlayer };

/// One decision of the winning player.
///
/// Cops-Robber: `pebbles_g` and `robber` identify the Cops position; `choice`
/// is the placed tuple (putting moves) or the kept pebble indices (removing).
///
/// Ehrenfeucht-Fraisse: `pebbles_g`/`pebbles_h` identify the position. For a
/// putting move, Spoiler wins against every bijection because the G-side
/// options in `spoiler_set` have too few good partners (or the option sets
/// differ in size); for a removing move, `choice` holds the kept indices.
struct CertificateEntry {
    Phase phase;
    NodeTuple pebbles_g;
    NodeTuple pebbles_h;
    NodeMask robber = 0;
    NodeTuple choice;
    std::vector<NodeTuple> spoiler_set;
    bool size_mismatch = false;
};

struct GameVerdict {
    GameKind game = GameKind::CopsRobber;
    Winner winner = Winner::SecondPlayer;
    std::size_t states_explored = 0;
    std::vector<CertificateEntry> certificate;  // present only for first-player wins

    bool first_player_wins() const { return winner == Winner::FirstPlayer; }
};

inline std::string winner_name(const GameVerdict& v) {
    if (v.game == GameKind::CopsRobber) return v.first_player_wins() ? "cops" : "robber";
    return v.first_player_wins() ? "spoiler" : "duplicator";
}

}  // namespace wlpower
