#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wlpower/errors.hpp"
#include "wlpower/graph.hpp"
#include "wlpower/homomorphism.hpp"

namespace wlpower {

/// Sorted, duplicate-free set of equal-length tuples.
using TupleSet = std::vector<NodeTuple>;

inline std::string tuple_string(std::span<const Node> t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

/// All tuples in V^len, lexicographically.
inline TupleSet all_tuples(int node_count, int len) {
    TupleSet out;
    if (len == 0) return {NodeTuple{}};
    if (node_count == 0) return out;
    NodeTuple t(len, 0);
    while (true) {
        out.push_back(t);
        int i = len - 1;
        while (i >= 0 && ++t[i] == node_count) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// R selectors (k-invariant tuple universes)
// ---------------------------------------------------------------------------

enum class RKind { AllTuples, DistanceRestricted };

struct RSelector {
    RKind kind = RKind::AllTuples;
    int delta = 0;

    static RSelector all_tuples() { return {RKind::AllTuples, 0}; }
    static RSelector distance_restricted(int delta) { return {RKind::DistanceRestricted, delta}; }

    friend bool operator==(const RSelector&, const RSelector&) = default;
};

inline void check_arity(const RSelector& sel, int k) {
    if (k < 1) throw ConfigError("k must be positive");
    if (sel.kind == RKind::DistanceRestricted) {
        if (k != 2) throw ConfigError("distance_restricted R selector requires k = 2");
        if (sel.delta < 1) throw ConfigError("distance_restricted R selector requires delta >= 1");
    }
}

inline TupleSet r_set(const RSelector& sel, int k, const Graph& g, const DistanceTable& dist) {
    check_arity(sel, k);
    if (sel.kind == RKind::AllTuples) return all_tuples(g.node_count(), k);
    TupleSet out;
    for (Node u = 0; u < g.node_count(); ++u)
        for (Node v = 0; v < g.node_count(); ++v)
            if (dist(u, v) <= sel.delta) out.push_back({u, v});
    return out;
}

inline TupleSet r_set(const RSelector& sel, int k, const Graph& g) {
    return r_set(sel, k, g, distance_table(g));
}

// ---------------------------------------------------------------------------
// F selectors ((k,t)-equivariant auxiliary sets)
// ---------------------------------------------------------------------------

enum class FKind { AllTuples, AllNodes, LocalNeighborUnion, DeltaBallIntersection };

struct FSelector {
    FKind kind = FKind::AllNodes;
    int delta = 0;

    static FSelector all_tuples() { return {FKind::AllTuples, 0}; }
    static FSelector all_nodes() { return {FKind::AllNodes, 0}; }
    static FSelector local_neighbor_union() { return {FKind::LocalNeighborUnion, 0}; }
    static FSelector delta_ball_intersection(int delta) { return {FKind::DeltaBallIntersection, delta}; }

    friend bool operator==(const FSelector&, const FSelector&) = default;
};

inline void check_arity(const FSelector& sel, int k, int t) {
    if (k < 1 || t < 1) throw ConfigError("k and t must be positive");
    switch (sel.kind) {
        case FKind::AllTuples:
            break;
        case FKind::AllNodes:
        case FKind::LocalNeighborUnion:
            if (t != 1) throw ConfigError("this F selector requires t = 1");
            break;
        case FKind::DeltaBallIntersection:
            if (k != 2 || t != 1) throw ConfigError("delta_ball_intersection requires k = 2 and t = 1");
            if (sel.delta < 1) throw ConfigError("delta_ball_intersection requires delta >= 1");
            break;
    }
}

inline TupleSet f_set(const FSelector& sel, int t, const Graph& g, std::span<const Node> v, const DistanceTable& dist) {
    g.check_tuple(v);
    check_arity(sel, static_cast<int>(v.size()), t);
    switch (sel.kind) {
        case FKind::AllTuples:
        case FKind::AllNodes:
            return all_tuples(g.node_count(), t);
        case FKind::LocalNeighborUnion: {
            NodeMask nb = 0;
            for (Node x : v) nb |= g.neighbors(x);
            TupleSet out;
            for (Node w : mask_nodes(nb)) out.push_back({w});
            return out;
        }
        case FKind::DeltaBallIntersection: {
            TupleSet out;
            for (Node w = 0; w < g.node_count(); ++w)
                if (dist(v[0], w) <= sel.delta && dist(w, v[1]) <= sel.delta) out.push_back({w});
            return out;
        }
    }
    return {};
}

inline TupleSet f_set(const FSelector& sel, int t, const Graph& g, std::span<const Node> v) {
    return f_set(sel, t, g, v, distance_table(g));
}

// ---------------------------------------------------------------------------
// Names and static containment
// ---------------------------------------------------------------------------

inline std::string_view kind_name(RKind k) {
    return k == RKind::AllTuples ? "all_k_tuples" : "distance_restricted";
}

inline std::string_view kind_name(FKind k) {
    switch (k) {
        case FKind::AllTuples: return "all_t_tuples";
        case FKind::AllNodes: return "all_nodes";
        case FKind::LocalNeighborUnion: return "local_neighbor_union";
        case FKind::DeltaBallIntersection: return "delta_ball_intersection";
    }
    return "?";
}

inline std::optional<RKind> parse_r_kind(std::string_view s) {
    if (s == "all_k_tuples") return RKind::AllTuples;
    if (s == "distance_restricted") return RKind::DistanceRestricted;
    return std::nullopt;
}

inline std::optional<FKind> parse_f_kind(std::string_view s) {
    if (s == "all_t_tuples") return FKind::AllTuples;
    if (s == "all_nodes") return FKind::AllNodes;
    if (s == "local_neighbor_union") return FKind::LocalNeighborUnion;
    if (s == "delta_ball_intersection") return FKind::DeltaBallIntersection;
    return std::nullopt;
}

/// True when a's set is a subset of b's on every graph (a sufficient,
/// statically known relation between built-in kinds).
inline bool contained_in(const RSelector& a, const RSelector& b) {
    if (b.kind == RKind::AllTuples) return true;
    return a.kind == RKind::DistanceRestricted && a.delta <= b.delta;
}

inline bool contained_in(const FSelector& a, const FSelector& b, int t) {
    const bool b_everything = b.kind == FKind::AllTuples || (b.kind == FKind::AllNodes && t == 1);
    if (b_everything) return true;
    if (a == b) return true;
    return a.kind == FKind::DeltaBallIntersection && b.kind == FKind::DeltaBallIntersection && a.delta <= b.delta;
}

// ---------------------------------------------------------------------------
// Empirical property checks
// ---------------------------------------------------------------------------

struct InvarianceReport {
    int trials = 0;
    std::vector<std::string> violations;
    bool passed() const { return violations.empty(); }
};

inline std::vector<Node> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<Node> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline TupleSet map_tuples(const TupleSet& in, std::span<const Node> f) {
    TupleSet out;
    out.reserve(in.size());
    for (const auto& t : in) {
        NodeTuple m(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) m[i] = f[t[i]];
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Checks pi(R(G)) = R(pi(G)) for random relabelings pi. `r` maps a graph to
/// a TupleSet; any callable works so that broken fixtures can be tested.
template <class RFn>
InvarianceReport check_r_invariance(RFn&& r, const Graph& g, int trials, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    InvarianceReport report;
    const TupleSet base = r(g);
    for (int i = 0; i < trials; ++i) {
        auto pi = random_permutation(g.node_count(), rng);
        auto lhs = map_tuples(base, pi);
        auto rhs = r(g.permuted(pi));
        std::sort(rhs.begin(), rhs.end());
        ++report.trials;
        if (lhs != rhs) {
            std::ostringstream msg;
            msg << "trial " << i << ": permuted selection differs (" << lhs.size() << " vs " << rhs.size()
                << " tuples)";
            report.violations.push_back(msg.str());
        }
    }
    return report;
}

inline InvarianceReport check_r_invariance(const RSelector& sel, int k, const Graph& g, int trials,
                                           std::uint64_t seed = 1) {
    return check_r_invariance([&](const Graph& h) { return r_set(sel, k, h); }, g, trials, seed);
}

/// Checks pi(F(G,v)) = F(pi(G), pi(v)) for all v in V^k and random pi.
template <class FFn>
InvarianceReport check_f_equivariance(FFn&& f, int k, const Graph& g, int trials, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    InvarianceReport report;
    const auto bases = all_tuples(g.node_count(), k);
    for (int i = 0; i < trials; ++i) {
        auto pi = random_permutation(g.node_count(), rng);
        const Graph h = g.permuted(pi);
        ++report.trials;
        for (const auto& v : bases) {
            NodeTuple pv(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) pv[j] = pi[v[j]];
            auto lhs = map_tuples(f(g, v), pi);
            auto rhs = f(h, pv);
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) {
                report.violations.push_back("trial " + std::to_string(i) + ": base " + tuple_string(v));
                break;
            }
        }
    }
    return report;
}

inline InvarianceReport check_f_equivariance(const FSelector& sel, int k, int t, const Graph& g, int trials,
                                             std::uint64_t seed = 1) {
    return check_f_equivariance([&](const Graph& h, std::span<const Node> v) { return f_set(sel, t, h, v); }, k,
                                g, trials, seed);
}

struct ClosureReport {
    std::size_t homomorphisms_checked = 0;
    bool partial = false;  // hom budget ran out before the pool was exhausted
    std::vector<std::string> counterexamples;
    bool closed() const { return counterexamples.empty(); }
};

inline constexpr std::size_t kDefaultHomBudget = 50'000'000;
inline constexpr std::size_t kMaxReportedCounterexamples = 20;

namespace detail {

template <class Check>
ClosureReport for_pool_homomorphisms(const std::vector<Graph>& pool, std::size_t budget, Check&& check) {
    ClosureReport report;
    for (std::size_t a = 0; a < pool.size() && !report.partial; ++a) {
        for (std::size_t b = 0; b < pool.size() && !report.partial; ++b) {
            for_each_homomorphism(pool[a], pool[b], [&](const std::vector<Node>& h) {
                if (report.homomorphisms_checked >= budget) {
                    report.partial = true;
                    return false;
                }
                ++report.homomorphisms_checked;
                if (auto bad = check(a, b, h); bad && report.counterexamples.size() < kMaxReportedCounterexamples)
                    report.counterexamples.push_back("pool[" + std::to_string(a) + "] -> pool[" + std::to_string(b) +
                                                     "]: " + *bad);
                return true;
            });
        }
    }
    return report;
}

}  // namespace detail

/// h(R(G)) subset of R(H) for every homomorphism h between pool graphs.
template <class RFn>
ClosureReport check_hom_closed_r(RFn&& r, const std::vector<Graph>& pool, std::size_t budget = kDefaultHomBudget) {
    std::vector<std::set<NodeTuple>> sets;
    std::vector<TupleSet> lists;
    for (const auto& g : pool) {
        lists.push_back(r(g));
        sets.emplace_back(lists.back().begin(), lists.back().end());
    }
    return detail::for_pool_homomorphisms(pool, budget, [&](std::size_t a, std::size_t b, const std::vector<Node>& h)
                                              -> std::optional<std::string> {
        for (const auto& t : lists[a]) {
            NodeTuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) m[i] = h[t[i]];
            if (!sets[b].contains(m)) return tuple_string(t) + " maps outside R";
        }
        return std::nullopt;
    });
}

/// h(F(G,u)) subset of F(H,h(u)) for every u in V_G^k and homomorphism h.
template <class FFn>
ClosureReport check_hom_closed_f(FFn&& f, int k, const std::vector<Graph>& pool,
                                 std::size_t budget = kDefaultHomBudget) {
    // per graph: base tuple -> selected set
    std::vector<std::vector<TupleSet>> lists;
    std::vector<std::vector<std::set<NodeTuple>>> sets;
    for (const auto& g : pool) {
        auto& l = lists.emplace_back();
        auto& s = sets.emplace_back();
        for (const auto& u : all_tuples(g.node_count(), k)) {
            l.push_back(f(g, u));
            s.emplace_back(l.back().begin(), l.back().end());
        }
    }
    auto index_of = [k](std::span<const Node> u, int n) {
        std::size_t idx = 0;
        for (int i = 0; i < k; ++i) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(u[i]);
        return idx;
    };
    return detail::for_pool_homomorphisms(pool, budget, [&](std::size_t a, std::size_t b, const std::vector<Node>& h)
                                              -> std::optional<std::string> {
        const int na = pool[a].node_count();
        const int nb = pool[b].node_count();
        const auto bases = all_tuples(na, k);
        for (std::size_t ui = 0; ui < bases.size(); ++ui) {
            NodeTuple hu(k);
            for (int i = 0; i < k; ++i) hu[i] = h[bases[ui][i]];
            const auto& target = sets[b][index_of(hu, nb)];
            for (const auto& w : lists[a][ui]) {
                NodeTuple hw(w.size());
                for (std::size_t i = 0; i < w.size(); ++i) hw[i] = h[w[i]];
                if (!target.contains(hw))
                    return "base " + tuple_string(bases[ui]) + ", member " + tuple_string(w) + " maps outside F";
            }
        }
        return std::nullopt;
    });
}

inline ClosureReport check_hom_closed(const RSelector& sel, int k, const std::vector<Graph>& pool,
                                      std::size_t budget = kDefaultHomBudget) {
    return check_hom_closed_r([&](const Graph& g) { return r_set(sel, k, g); }, pool, budget);
}

inline ClosureReport check_hom_closed(const FSelector& sel, int k, int t, const std::vector<Graph>& pool,
                                      std::size_t budget = kDefaultHomBudget) {
    return check_hom_closed_f([&](const Graph& g, std::span<const Node> u) { return f_set(sel, t, g, u); }, k, pool,
                              budget);
}

}  // namespace wlpower
