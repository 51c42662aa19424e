#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "wlpower/canonical.hpp"
#include "wlpower/cops_robber.hpp"
#include "wlpower/ef_game.hpp"
#include "wlpower/enumerate.hpp"
#include "wlpower/homomorphism.hpp"
#include "wlpower/treewidth.hpp"

namespace wlpower {

/// Runs fn(0..count-1) on up to `threads` workers; results keep input order.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> out(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphism counting power
// ---------------------------------------------------------------------------

enum class PowerVerdict { CopsWin, RobberWin, Undecided };

inline std::string_view verdict_name(PowerVerdict v) {
    switch (v) {
        case PowerVerdict::CopsWin: return "cops";
        case PowerVerdict::RobberWin: return "robber";
        case PowerVerdict::Undecided: return "undecided";
    }
    return "?";
}

struct GraphOutcome {
    std::string graph6;
    CanonicalForm form;
    int nodes = 0;
    PowerVerdict verdict = PowerVerdict::Undecided;
    std::size_t states = 0;
    double millis = 0;   // telemetry only
    std::string reason;  // why the graph is undecided
};

struct PowerReport {
    GfwlSpec spec;
    int n_max = 0;
    std::vector<GraphOutcome> graphs;  // ascending node count, then canonical form

    std::vector<const GraphOutcome*> with(PowerVerdict v) const {
        std::vector<const GraphOutcome*> out;
        for (const auto& g : graphs)
            if (g.verdict == v) out.push_back(&g);
        return out;
    }
    std::vector<const GraphOutcome*> cops_win() const { return with(PowerVerdict::CopsWin); }
    std::vector<const GraphOutcome*> robber_win() const { return with(PowerVerdict::RobberWin); }
    std::vector<const GraphOutcome*> undecided() const { return with(PowerVerdict::Undecided); }
    bool complete() const { return undecided().empty(); }
};

inline GraphOutcome decide_graph(const GfwlSpec& spec, const Graph& f, const SolveLimits& limits) {
    GraphOutcome out;
    out.graph6 = to_graph6(f);
    out.form = canonical_form(f);
    out.nodes = f.node_count();
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto v = cops_robber_wins(spec, f, limits);
        out.verdict = v.first_player_wins() ? PowerVerdict::CopsWin : PowerVerdict::RobberWin;
        out.states = v.states_explored;
    } catch (const ResourceError& e) {
        out.states = e.work_done();
        out.reason = e.what();
    }
    out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// Decides the Cops-Robber game on every connected class with at most n_max nodes.
inline PowerReport enumerate_power(const GfwlSpec& spec, int n_max, const SolveLimits& limits = {},
                                   unsigned threads = 1) {
    check_structure(spec);
    const auto graphs = enumerate_connected_graphs(n_max);
    PowerReport report{spec, n_max, {}};
    report.graphs = parallel_map(graphs.size(), threads,
                                 [&](std::size_t i) { return decide_graph(spec, graphs[i], limits); });
    return report;
}

// ---------------------------------------------------------------------------
// Validation suites
// ---------------------------------------------------------------------------

enum class Suite { Theorem2, Treewidth, Soundness, Monotonicity, HomClosed };

inline std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::Theorem2: return "theorem2";
        case Suite::Treewidth: return "treewidth";
        case Suite::Soundness: return "soundness";
        case Suite::Monotonicity: return "monotonicity";
        case Suite::HomClosed: return "hom_closed";
    }
    return "?";
}

inline std::optional<Suite> parse_suite(std::string_view s) {
    for (Suite v : {Suite::Theorem2, Suite::Treewidth, Suite::Soundness, Suite::Monotonicity, Suite::HomClosed})
        if (suite_name(v) == s) return v;
    return std::nullopt;
}

struct ValidationReport {
    Suite suite = Suite::Theorem2;
    std::size_t cases_run = 0;
    std::vector<std::string> mismatches;
    std::map<std::string, std::size_t> coverage;  // informational counters

    bool passed() const { return mismatches.empty(); }
};

/// Cops win under k-FWL iff treewidth(F) <= k, over connected F.
inline ValidationReport compare_to_treewidth(int k, int n_max, const SolveLimits& limits = {}, unsigned threads = 1) {
    if (k < 1 || k > 3) throw ConfigError("treewidth suite supports k in {1, 2, 3}");
    const auto graphs = enumerate_connected_graphs(n_max);
    const auto spec = presets::fwl(k);
    const auto rows = parallel_map(graphs.size(), threads, [&](std::size_t i) {
        const bool cops = cops_robber_wins(spec, graphs[i], limits).first_player_wins();
        return std::pair{cops, treewidth(graphs[i])};
    });
    ValidationReport report{Suite::Treewidth, graphs.size(), {}, {}};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto [cops, tw] = rows[i];
        ++report.coverage[cops ? "cops_win" : "robber_win"];
        if (cops != (tw <= k))
            report.mismatches.push_back(to_graph6(graphs[i]) + ": cops_win=" + (cops ? "true" : "false") +
                                        " treewidth=" + std::to_string(tw));
    }
    return report;
}

namespace detail {

/// Pairs (i, j), i < j, of distinct classes plus one (i, i) pair per class
/// standing for the class against a randomly relabeled copy.
inline std::vector<std::pair<std::size_t, std::size_t>> class_pairs(std::size_t count) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i; j < count; ++j) out.emplace_back(i, j);
    return out;
}

inline std::vector<Graph> permuted_copies(const std::vector<Graph>& graphs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(g.permuted(random_permutation(g.node_count(), rng)));
    return out;
}

}  // namespace detail

/// Refinement distinguishes a pair iff Spoiler wins the bijective pebble game,
/// checked over every pair of connected classes (and each class against a
/// relabeled copy). Spoiler certificates are replayed as well.
inline ValidationReport validate_theorem2(const GfwlSpec& spec, int n_max, const SolveLimits& limits = {},
                                          unsigned threads = 1, std::uint64_t seed = 1) {
    check_structure(spec);
    const auto graphs = enumerate_connected_graphs(n_max);
    const auto copies = detail::permuted_copies(graphs, seed);
    const auto pairs = detail::class_pairs(graphs.size());
    const auto rows = parallel_map(pairs.size(), threads, [&](std::size_t p) -> std::string {
        const auto [i, j] = pairs[p];
        const Graph& g = graphs[i];
        const Graph& h = i == j ? copies[i] : graphs[j];
        const bool refined = distinguish(spec, g, h);
        const auto verdict = spoiler_wins(spec, g, h, limits);
        std::string tag = to_graph6(g) + " vs " + to_graph6(h) + ": ";
        if (refined != verdict.first_player_wins())
            return tag + "distinguish=" + (refined ? "true" : "false") + " spoiler_wins=" +
                   (verdict.first_player_wins() ? "true" : "false");
        if (verdict.first_player_wins() && !replay_spoiler_certificate(verdict, spec, g, h))
            return tag + "Spoiler certificate does not replay";
        return {};
    });
    ValidationReport report{Suite::Theorem2, pairs.size(), {}, {}};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!rows[p].empty()) report.mismatches.push_back(rows[p]);
    }
    return report;
}

/// Undistinguished pairs must agree on Hom(F, .) for every Cops-win pattern F.
/// For distinguished pairs the first Cops-win pattern (ascending size, then
/// canonical order) with differing counts is searched; a miss is coverage
/// data only, since the separating pattern may exceed the size cap.
inline ValidationReport validate_soundness(const GfwlSpec& spec, int n_max_pairs, int n_max_patterns,
                                           const SolveLimits& limits = {}, unsigned threads = 1,
                                           std::uint64_t seed = 1) {
    check_structure(spec);
    const auto power = enumerate_power(spec, n_max_patterns, limits, threads);
    if (!power.complete()) throw ResourceError("pattern power set undecided within budget");
    const auto all_patterns = enumerate_connected_graphs(n_max_patterns);
    std::vector<Graph> patterns;
    for (std::size_t i = 0; i < all_patterns.size(); ++i)
        if (power.graphs[i].verdict == PowerVerdict::CopsWin) patterns.push_back(all_patterns[i]);

    const auto graphs = enumerate_connected_graphs(n_max_pairs);
    const auto copies = detail::permuted_copies(graphs, seed);
    auto profile = [&](const Graph& g) {
        std::vector<HomCount> counts;
        counts.reserve(patterns.size());
        for (const auto& f : patterns) counts.push_back(hom_count(f, g));
        return counts;
    };
    const auto prof = parallel_map(graphs.size(), threads, [&](std::size_t i) { return profile(graphs[i]); });
    const auto prof_copy = parallel_map(graphs.size(), threads, [&](std::size_t i) { return profile(copies[i]); });

    const auto pairs = detail::class_pairs(graphs.size());
    const auto distinguished = parallel_map(pairs.size(), threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        return static_cast<char>(distinguish(spec, graphs[i], i == j ? copies[i] : graphs[j]));
    });

    ValidationReport report{Suite::Soundness, pairs.size(), {}, {}};
    report.coverage["patterns"] = patterns.size();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        const auto& a = prof[i];
        const auto& b = i == j ? prof_copy[i] : prof[j];
        const std::string tag = to_graph6(graphs[i]) + " vs " + to_graph6(i == j ? copies[i] : graphs[j]);
        const auto diff = std::mismatch(a.begin(), a.end(), b.begin());
        if (!distinguished[p]) {
            ++report.coverage["undistinguished_pairs"];
            if (diff.first != a.end()) {
                const auto f = static_cast<std::size_t>(diff.first - a.begin());
                report.mismatches.push_back(tag + ": not distinguished but Hom(" + to_graph6(patterns[f]) +
                                            ") = " + std::to_string(*diff.first) + " vs " +
                                            std::to_string(*diff.second));
            }
        } else {
            ++report.coverage[diff.first != a.end() ? "witness_hit" : "witness_miss"];
        }
    }
    return report;
}

/// Cops wins under `small` must stay Cops wins under `large`.
inline ValidationReport check_monotonicity(const GfwlSpec& small, const GfwlSpec& large, int n_max,
                                           const SolveLimits& limits = {}, unsigned threads = 1) {
    check_structure(small);
    check_structure(large);
    if (small.k != large.k || small.t != large.t || small.i_seq != large.i_seq || small.j_seq != large.j_seq)
        throw ConfigError("monotonicity needs identical k, t, i_seq and j_seq");
    if (!contained_in(small.r, large.r) || !contained_in(small.f, large.f, small.t))
        throw ConfigError("selectors of the first spec are not contained in those of the second");
    const auto a = enumerate_power(small, n_max, limits, threads);
    const auto b = enumerate_power(large, n_max, limits, threads);
    ValidationReport report{Suite::Monotonicity, a.graphs.size(), {}, {}};
    for (std::size_t i = 0; i < a.graphs.size(); ++i) {
        if (a.graphs[i].verdict == PowerVerdict::Undecided || b.graphs[i].verdict == PowerVerdict::Undecided) {
            report.mismatches.push_back(a.graphs[i].graph6 + ": undecided");
            continue;
        }
        ++report.coverage[std::string(verdict_name(a.graphs[i].verdict)) + "_small"];
        if (a.graphs[i].verdict == PowerVerdict::CopsWin && b.graphs[i].verdict != PowerVerdict::CopsWin)
            report.mismatches.push_back(a.graphs[i].graph6 + ": Cops win only under the smaller spec");
    }
    return report;
}

/// Homomorphism closure of both selectors over all graphs with at most n_max nodes.
inline ValidationReport validate_hom_closed(const GfwlSpec& spec, int n_max) {
    check_structure(spec);
    const auto pool = enumerate_graphs(n_max, {.connected_only = false});
    const auto r = check_hom_closed(spec.r, spec.k, pool);
    const auto f = check_hom_closed(spec.f, spec.k, spec.t, pool);
    ValidationReport report{Suite::HomClosed, r.homomorphisms_checked + f.homomorphisms_checked, {}, {}};
    for (const auto& c : r.counterexamples) report.mismatches.push_back("R: " + c);
    for (const auto& c : f.counterexamples) report.mismatches.push_back("F: " + c);
    report.coverage["partial"] = (r.partial || f.partial) ? 1 : 0;
    return report;
}

}  // namespace wlpower
