#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "wlpower/graph.hpp"

namespace wlpower {

/// Byte string identifying an isomorphism class: the node count followed by
/// the packed upper adjacency triangle (graph6 order) of the canonical relabeling.
struct CanonicalForm {
    std::vector<std::uint8_t> bytes;

    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(bytes.size() * 2);
        for (auto b : bytes) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 15]);
        }
        return out;
    }

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr std::size_t kDefaultCanonicalLeafBudget = 1'000'000;

namespace detail {

using Cells = std::vector<std::vector<Node>>;
using AdjacencyCode = std::vector<NodeMask>;

inline AdjacencyCode relabeled_rows(const Graph& g, const std::vector<Node>& position) {
    AdjacencyCode rows(g.node_count(), 0);
    for (Node u = 0; u < g.node_count(); ++u) {
        NodeMask r = 0;
        for (Node w : mask_nodes(g.neighbors(u))) r |= bit(position[w]);
        rows[position[u]] = r;
    }
    return rows;
}

// Splits cells by neighbor counts into other cells until the ordered
// partition is equitable. Split order depends only on counts.
inline void refine_equitable(const Graph& g, Cells& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
            NodeMask splitter = 0;
            for (Node v : cells[s]) splitter |= bit(v);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                auto& cell = cells[c];
                if (cell.size() < 2) continue;
                std::vector<std::pair<int, Node>> keyed;
                keyed.reserve(cell.size());
                for (Node v : cell) keyed.emplace_back(std::popcount(g.neighbors(v) & splitter), v);
                std::stable_sort(keyed.begin(), keyed.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                if (keyed.front().first == keyed.back().first) continue;
                Cells parts;
                for (std::size_t i = 0; i < keyed.size(); ++i) {
                    if (i == 0 || keyed[i].first != keyed[i - 1].first) parts.emplace_back();
                    parts.back().push_back(keyed[i].second);
                }
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), parts.begin(), parts.end());
                changed = true;
                break;
            }
        }
    }
}

class CanonicalSearch {
public:
    CanonicalSearch(const Graph& g, std::size_t leaf_budget) : g_(g), budget_(leaf_budget) {}

    std::vector<Node> run() {
        Cells cells;
        if (g_.node_count() > 0) {
            std::vector<Node> all(g_.node_count());
            std::iota(all.begin(), all.end(), 0);
            cells.push_back(all);
        }
        refine_equitable(g_, cells);  // unit partition -> degree-based equitable partition
        search(cells);
        return best_position_;
    }

private:
    void search(const Cells& cells) {
        auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
        if (target == cells.end()) {
            visit_leaf(cells);
            return;
        }
        const auto ti = static_cast<std::size_t>(target - cells.begin());
        std::vector<Node> tried;
        for (Node v : *target) {
            // swapping twins fixes the partition, so one representative per class suffices
            const bool twin_of_tried = std::any_of(tried.begin(), tried.end(), [&](Node w) {
                return (g_.neighbors(v) & ~bit(w)) == (g_.neighbors(w) & ~bit(v));
            });
            if (twin_of_tried) continue;
            tried.push_back(v);

            Cells next = cells;
            std::vector<Node> rest;
            for (Node w : cells[ti])
                if (w != v) rest.push_back(w);
            next[ti] = {v};
            next.insert(next.begin() + static_cast<std::ptrdiff_t>(ti) + 1, rest);
            refine_equitable(g_, next);
            search(next);
        }
    }

    void visit_leaf(const Cells& cells) {
        if (++leaves_ > budget_)
            throw ResourceError("canonical labeling exceeded leaf budget of " + std::to_string(budget_), leaves_);
        std::vector<Node> position(g_.node_count());
        for (std::size_t i = 0; i < cells.size(); ++i) position[cells[i][0]] = static_cast<Node>(i);
        auto code = relabeled_rows(g_, position);
        if (best_position_.empty() && g_.node_count() > 0) {
            best_code_ = std::move(code);
            best_position_ = std::move(position);
        } else if (code < best_code_) {
            best_code_ = std::move(code);
            best_position_ = std::move(position);
        }
    }

    const Graph& g_;
    std::size_t budget_;
    std::size_t leaves_ = 0;
    AdjacencyCode best_code_;
    std::vector<Node> best_position_;
};

inline CanonicalForm form_from_labeled(const Graph& g) {
    const int n = g.node_count();
    CanonicalForm f;
    f.bytes.push_back(static_cast<std::uint8_t>(n));
    std::uint8_t acc = 0;
    int filled = 0;
    for (Node v = 1; v < n; ++v) {
        for (Node u = 0; u < v; ++u) {
            acc = static_cast<std::uint8_t>((acc << 1) | (g.has_edge(u, v) ? 1 : 0));
            if (++filled == 8) {
                f.bytes.push_back(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) f.bytes.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return f;
}

}  // namespace detail

/// A relabeling `position` (node v goes to position[v]) such that
/// g.permuted(position) is the same graph for every member of g's
/// isomorphism class. Individualization-refinement over equitable partitions.
inline std::vector<Node> canonical_labeling(const Graph& g, std::size_t leaf_budget = kDefaultCanonicalLeafBudget) {
    return detail::CanonicalSearch(g, leaf_budget).run();
}

inline Graph canonical_graph(const Graph& g, std::size_t leaf_budget = kDefaultCanonicalLeafBudget) {
    return g.permuted(canonical_labeling(g, leaf_budget));
}

inline CanonicalForm canonical_form(const Graph& g, std::size_t leaf_budget = kDefaultCanonicalLeafBudget) {
    return detail::form_from_labeled(canonical_graph(g, leaf_budget));
}

/// Minimum adjacency code over all n! relabelings. Only for n <= 8; used to
/// cross-check the refinement-based labeling.
inline CanonicalForm canonical_form_exhaustive(const Graph& g) {
    const int n = g.node_count();
    if (n > 8) throw ResourceError("exhaustive canonical form limited to 8 nodes");
    std::vector<Node> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    detail::AdjacencyCode best;
    std::vector<Node> best_perm = perm;
    bool first = true;
    do {
        auto code = detail::relabeled_rows(g, perm);
        if (first || code < best) {
            best = std::move(code);
            best_perm = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return detail::form_from_labeled(g.permuted(best_perm));
}

}  // namespace wlpower
