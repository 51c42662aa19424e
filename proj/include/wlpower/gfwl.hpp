#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wlpower/errors.hpp"
#include "wlpower/graph.hpp"
#include "wlpower/iso_type.hpp"
#include "wlpower/selectors.hpp"

namespace wlpower {

/// Hyperparameters of one generalized folklore WL instance.
///
/// Main tuples have length k and are drawn from R(G); auxiliary tuples have
/// length t and are drawn from F(G, v). `i_seq` (0 = i_0 < ... < i_N = k) and
/// `j_seq` (0 = j_0 < ... < j_M = t) give the prefix lengths of the nested
/// aggregations used for pooling and for the update step.
struct GfwlSpec {
    int k = 1;
    int t = 1;
    std::vector<int> i_seq{0, 1};
    std::vector<int> j_seq{0, 1};
    RSelector r;
    FSelector f;

    int init_moves() const { return static_cast<int>(i_seq.size()) - 1; }
    int update_moves() const { return static_cast<int>(j_seq.size()) - 1; }

    friend bool operator==(const GfwlSpec&, const GfwlSpec&) = default;
};

namespace detail {

inline std::optional<std::string> check_sequence(const std::vector<int>& seq, int end, const char* name) {
    if (seq.size() < 2 || seq.front() != 0 || seq.back() != end)
        return std::string(name) + " must start at 0 and end at " + std::to_string(end);
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] <= seq[i - 1]) return std::string(name) + " must be strictly increasing";
    return std::nullopt;
}

}  // namespace detail

/// Throws ConfigError unless the index sequences and selector arities are consistent.
inline void check_structure(const GfwlSpec& spec) {
    if (spec.k < 1 || spec.t < 1) throw ConfigError("k and t must be positive");
    if (auto e = detail::check_sequence(spec.i_seq, spec.k, "i_seq")) throw ConfigError(*e);
    if (auto e = detail::check_sequence(spec.j_seq, spec.t, "j_seq")) throw ConfigError(*e);
    check_arity(spec.r, spec.k);
    check_arity(spec.f, spec.k, spec.t);
}

namespace presets {

inline GfwlSpec fwl(int k) {
    return {k, 1, {0, k}, {0, 1}, RSelector::all_tuples(), FSelector::all_nodes()};
}

inline GfwlSpec local_fwl(int k) {
    return {k, 1, {0, k}, {0, 1}, RSelector::all_tuples(), FSelector::local_neighbor_union()};
}

inline GfwlSpec drfwl2(int delta) {
    return {2, 1, {0, 2}, {0, 1}, RSelector::distance_restricted(delta), FSelector::delta_ball_intersection(delta)};
}

/// (k,t)-FWL+ index sequences (one pebble per move); defaults give (k,t)-FWL.
inline GfwlSpec fwl_plus(int k, int t, RSelector r = RSelector::all_tuples(), FSelector f = FSelector::all_tuples()) {
    GfwlSpec s{k, t, {}, {}, r, f};
    for (int i = 0; i <= k; ++i) s.i_seq.push_back(i);
    for (int j = 0; j <= t; ++j) s.j_seq.push_back(j);
    return s;
}

}  // namespace presets

// ---------------------------------------------------------------------------
// Tuple-set primitives
// ---------------------------------------------------------------------------

/// Index sets (0-based positions into the concatenation (v,u)) of all
/// k-element replacements, in lexicographic order. The first is {0..k-1}.
inline std::vector<std::vector<int>> replacement_indices(int k, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    const int total = k + t;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == total - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline std::vector<NodeTuple> replacements(std::span<const Node> v, std::span<const Node> u) {
    NodeTuple cat(v.begin(), v.end());
    cat.insert(cat.end(), u.begin(), u.end());
    std::vector<NodeTuple> out;
    for (const auto& idx : replacement_indices(static_cast<int>(v.size()), static_cast<int>(u.size()))) {
        NodeTuple r;
        r.reserve(idx.size());
        for (int i : idx) r.push_back(cat[i]);
        out.push_back(std::move(r));
    }
    return out;
}

inline TupleSet prefix_project(const TupleSet& tuples, std::size_t len) {
    TupleSet out;
    for (const auto& t : tuples) {
        if (len > t.size()) throw DomainError("prefix length exceeds tuple length");
        NodeTuple p(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
        if (out.empty() || out.back() != p) out.push_back(std::move(p));
    }
    // input sorted => prefixes arrive sorted, but guard against unsorted callers
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// {w : (prefix, w) in tuples}
inline TupleSet suffix_set(const TupleSet& tuples, std::span<const Node> prefix) {
    TupleSet out;
    for (const auto& t : tuples) {
        if (prefix.size() > t.size()) throw DomainError("prefix longer than tuple");
        if (std::equal(prefix.begin(), prefix.end(), t.begin()))
            out.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(prefix.size()), t.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Colors
// ---------------------------------------------------------------------------

using Color = std::uint32_t;

/// Tags keep the dictionary content of different hash stages disjoint, so a
/// single dictionary acts as an independent injective hash per stage.
enum class ColorTag : std::int64_t { Initial = 1, Message = 2, Aggregate = 3, Update = 4, Pool = 5 };

/// Shared append-only injection from content vectors to small integers.
class ColorDictionary {
public:
    Color intern(std::vector<std::int64_t> content) {
        auto [it, inserted] = ids_.try_emplace(std::move(content), static_cast<Color>(ids_.size()));
        return it->second;
    }
    std::size_t size() const noexcept { return ids_.size(); }

private:
    std::map<std::vector<std::int64_t>, Color> ids_;
};

/// Colors of the tuples of R(G), aligned with the sorted `tuples`.
struct ColorMap {
    TupleSet tuples;
    std::vector<Color> colors;

    std::optional<Color> color_of(std::span<const Node> t) const {
        auto it = std::lower_bound(tuples.begin(), tuples.end(), t,
                                   [](const NodeTuple& a, std::span<const Node> b) {
                                       return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                                   });
        if (it == tuples.end() || !std::equal(it->begin(), it->end(), t.begin(), t.end())) return std::nullopt;
        return colors[static_cast<std::size_t>(it - tuples.begin())];
    }

    std::size_t class_count() const {
        std::set<Color> s(colors.begin(), colors.end());
        return s.size();
    }
};

/// Tuple indices grouped by color, in order of first occurrence. Two color
/// maps over the same tuples induce the same partition iff these agree.
inline std::vector<std::vector<std::size_t>> partition_of(const ColorMap& m) {
    std::map<Color, std::size_t> slot;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < m.colors.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(m.colors[i], out.size());
        if (fresh) out.emplace_back();
        out[it->second].push_back(i);
    }
    return out;
}

struct RefinementResult {
    ColorMap stable_colors;
    int iterations = 0;
    Color graph_color = 0;
};

// ---------------------------------------------------------------------------
// Spec validation
// ---------------------------------------------------------------------------

struct SpecReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline constexpr std::size_t kMaxReportedViolations = 20;

/// Well-formedness, arity, and closure of every replacement inside R(G).
inline SpecReport validate_spec(const GfwlSpec& spec, const Graph& g) {
    SpecReport report;
    try {
        check_structure(spec);
    } catch (const ConfigError& e) {
        report.violations.emplace_back(e.what());
        return report;
    }
    const DistanceTable dist(g);
    const TupleSet r = r_set(spec.r, spec.k, g, dist);
    const std::set<NodeTuple> members(r.begin(), r.end());
    for (const auto& v : r) {
        for (const auto& u : f_set(spec.f, spec.t, g, v, dist)) {
            const auto reps = replacements(v, u);
            for (std::size_t c = 0; c < reps.size(); ++c) {
                if (members.contains(reps[c])) continue;
                if (report.violations.size() < kMaxReportedViolations)
                    report.violations.push_back("replacement c=" + std::to_string(c + 1) + " " +
                                                tuple_string(reps[c]) + " of v=" + tuple_string(v) + " by u=" +
                                                tuple_string(u) + " lies outside R(G)");
                else
                    return report;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Refinement engine
// ---------------------------------------------------------------------------

namespace detail {

// Everything about one graph that does not change between iterations: the
// tuple universe, and per tuple its auxiliary tuples with the concatenated
// isomorphism type and the positions of all replacements inside R(G).
struct PreparedGraph {
    struct Message {
        NodeTuple aux;
        Color concat_type;
        std::vector<std::uint32_t> replacement_slots;
    };

    TupleSet r;
    std::vector<Color> initial;
    std::vector<std::vector<Message>> messages;
};

inline PreparedGraph prepare(const GfwlSpec& spec, const Graph& g, ColorDictionary& dict) {
    check_structure(spec);
    const DistanceTable dist(g);
    PreparedGraph p;
    p.r = r_set(spec.r, spec.k, g, dist);
    const auto slots = replacement_indices(spec.k, spec.t);

    auto type_color = [&](std::span<const Node> tuple) {
        auto content = encode(atp(g, tuple));
        content.insert(content.begin(), static_cast<std::int64_t>(ColorTag::Initial));
        return dict.intern(std::move(content));
    };
    auto slot_of = [&](const NodeTuple& t) -> std::optional<std::uint32_t> {
        auto it = std::lower_bound(p.r.begin(), p.r.end(), t);
        if (it == p.r.end() || *it != t) return std::nullopt;
        return static_cast<std::uint32_t>(it - p.r.begin());
    };

    p.initial.reserve(p.r.size());
    p.messages.resize(p.r.size());
    for (std::size_t vi = 0; vi < p.r.size(); ++vi) {
        const auto& v = p.r[vi];
        p.initial.push_back(type_color(v));
        for (auto& u : f_set(spec.f, spec.t, g, v, dist)) {
            NodeTuple cat = v;
            cat.insert(cat.end(), u.begin(), u.end());
            PreparedGraph::Message msg{u, type_color(cat), {}};
            msg.replacement_slots.reserve(slots.size());
            for (std::size_t c = 0; c < slots.size(); ++c) {
                NodeTuple rep;
                for (int i : slots[c]) rep.push_back(cat[i]);
                auto s = slot_of(rep);
                if (!s)
                    throw ConfigError("replacement c=" + std::to_string(c + 1) + " " + tuple_string(rep) +
                                      " of v=" + tuple_string(v) + " by u=" + tuple_string(u) +
                                      " lies outside R(G)");
                msg.replacement_slots.push_back(*s);
            }
            p.messages[vi].push_back(std::move(msg));
        }
    }
    return p;
}

// Nested multiset aggregation of values keyed by sorted tuples, collapsing to
// prefix lengths levels[n-1], ..., levels[0] = 0. Returns the final value;
// an empty input aggregates to the empty multiset at depth 0.
inline Color aggregate_nested(std::vector<std::pair<NodeTuple, Color>> keyed, const std::vector<int>& levels,
                              ColorTag tag, ColorDictionary& dict) {
    for (int m = static_cast<int>(levels.size()) - 1; m >= 1; --m) {
        const auto len = static_cast<std::size_t>(levels[m - 1]);
        std::vector<std::pair<NodeTuple, Color>> next;
        std::size_t i = 0;
        while (i < keyed.size()) {
            NodeTuple prefix(keyed[i].first.begin(), keyed[i].first.begin() + static_cast<std::ptrdiff_t>(len));
            std::vector<std::int64_t> content{static_cast<std::int64_t>(tag), m - 1};
            std::vector<std::int64_t> members;
            std::size_t j = i;
            while (j < keyed.size() && std::equal(prefix.begin(), prefix.end(), keyed[j].first.begin())) {
                members.push_back(keyed[j].second);
                ++j;
            }
            std::sort(members.begin(), members.end());
            content.insert(content.end(), members.begin(), members.end());
            next.emplace_back(std::move(prefix), dict.intern(std::move(content)));
            i = j;
        }
        keyed = std::move(next);
    }
    if (keyed.empty()) return dict.intern({static_cast<std::int64_t>(tag), 0});
    return keyed.front().second;
}

inline std::vector<Color> refine_once(const GfwlSpec& spec, const PreparedGraph& p, const std::vector<Color>& colors,
                                      ColorDictionary& dict) {
    std::vector<Color> next(colors.size());
    for (std::size_t vi = 0; vi < p.r.size(); ++vi) {
        std::vector<std::pair<NodeTuple, Color>> keyed;
        keyed.reserve(p.messages[vi].size());
        for (const auto& msg : p.messages[vi]) {
            std::vector<std::int64_t> content{static_cast<std::int64_t>(ColorTag::Message), msg.concat_type};
            for (auto s : msg.replacement_slots) content.push_back(colors[s]);
            keyed.emplace_back(msg.aux, dict.intern(std::move(content)));
        }
        const Color aggregated = aggregate_nested(std::move(keyed), spec.j_seq, ColorTag::Aggregate, dict);
        // keep the previous color so refinement never merges classes, even when F(G,v) is empty
        next[vi] = dict.intern({static_cast<std::int64_t>(ColorTag::Update), colors[vi], aggregated});
    }
    return next;
}

inline Color pool(const GfwlSpec& spec, const PreparedGraph& p, const std::vector<Color>& colors,
                  ColorDictionary& dict) {
    std::vector<std::pair<NodeTuple, Color>> keyed;
    keyed.reserve(p.r.size());
    for (std::size_t i = 0; i < p.r.size(); ++i) keyed.emplace_back(p.r[i], colors[i]);
    return aggregate_nested(std::move(keyed), spec.i_seq, ColorTag::Pool, dict);
}

inline std::size_t distinct_count(const std::vector<Color>& a, const std::vector<Color>& b = {}) {
    std::set<Color> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return s.size();
}

}  // namespace detail

/// Initial colors: the dictionary id of each tuple's isomorphism type.
inline ColorMap init_colors(const GfwlSpec& spec, const Graph& g, ColorDictionary& dict) {
    auto p = detail::prepare(spec, g, dict);
    return {std::move(p.r), std::move(p.initial)};
}

/// One update step: messages carry the concatenated tuple's isomorphism type
/// and the colors of all C replacements, then M nested aggregations along j_seq.
inline ColorMap refine_step(const GfwlSpec& spec, const Graph& g, const ColorMap& colors, ColorDictionary& dict) {
    auto p = detail::prepare(spec, g, dict);
    if (colors.tuples != p.r) throw DomainError("color map is not defined on exactly R(G)");
    auto next = detail::refine_once(spec, p, colors.colors, dict);
    return {std::move(p.r), std::move(next)};
}

/// Refines until the partition of R(G) stops changing, then pools along i_seq.
inline RefinementResult stabilize(const GfwlSpec& spec, const Graph& g, ColorDictionary& dict) {
    const auto p = detail::prepare(spec, g, dict);
    std::vector<Color> colors = p.initial;
    RefinementResult result;
    while (true) {
        auto next = detail::refine_once(spec, p, colors, dict);
        ++result.iterations;
        const bool stable = detail::distinct_count(next) == detail::distinct_count(colors);
        colors = std::move(next);
        if (stable) break;
    }
    result.graph_color = detail::pool(spec, p, colors, dict);
    result.stable_colors = {p.r, std::move(colors)};
    return result;
}

struct JointRefinement {
    RefinementResult g;
    RefinementResult h;
    bool distinguished = false;
};

/// Refines both graphs in lockstep with one dictionary and one stability
/// test over the union of both tuple universes, so final colors compare.
inline JointRefinement refine_jointly(const GfwlSpec& spec, const Graph& g, const Graph& h) {
    ColorDictionary dict;
    const auto pg = detail::prepare(spec, g, dict);
    const auto ph = detail::prepare(spec, h, dict);
    std::vector<Color> cg = pg.initial;
    std::vector<Color> ch = ph.initial;
    JointRefinement out;
    int iterations = 0;
    while (true) {
        auto ng = detail::refine_once(spec, pg, cg, dict);
        auto nh = detail::refine_once(spec, ph, ch, dict);
        ++iterations;
        const bool stable = detail::distinct_count(ng, nh) == detail::distinct_count(cg, ch);
        cg = std::move(ng);
        ch = std::move(nh);
        if (stable) break;
    }
    out.g = {{pg.r, cg}, iterations, detail::pool(spec, pg, cg, dict)};
    out.h = {{ph.r, ch}, iterations, detail::pool(spec, ph, ch, dict)};
    out.distinguished = out.g.graph_color != out.h.graph_color;
    return out;
}

inline bool distinguish(const GfwlSpec& spec, const Graph& g, const Graph& h) {
    return refine_jointly(spec, g, h).distinguished;
}

}  // namespace wlpower
