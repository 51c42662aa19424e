#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "wlpower/graph.hpp"

namespace wlpower {

using HomCount = std::uint64_t;

namespace detail {

// Backtracking over pattern nodes. Nodes are visited in an order that keeps
// as many already-mapped neighbors as possible, so each candidate set is the
// intersection of their target neighborhoods.
class HomSearch {
public:
    HomSearch(const Graph& pattern, const Graph& target, const std::map<Node, Node>& pins)
        : pattern_(pattern), target_(target), image_(pattern.node_count(), -1) {
        for (auto [p, t] : pins) {
            pattern.check_node(p);
            target.check_node(t);
            image_[p] = t;
        }
        for (auto [p, t] : pins)
            for (Node q : mask_nodes(pattern.neighbors(p)))
                if (image_[q] >= 0 && !target.has_edge(t, image_[q])) consistent_ = false;
        build_order();
    }

    HomCount count() {
        if (!consistent_) return 0;
        if (order_.empty()) return 1;
        return count_from(0);
    }

    /// Calls visit(image) for every homomorphism; stops early when visit returns false.
    /// Returns false iff stopped early.
    bool enumerate(const std::function<bool(const std::vector<Node>&)>& visit) {
        if (!consistent_) return true;
        return enumerate_from(0, visit);
    }

private:
    void build_order() {
        const int n = pattern_.node_count();
        NodeMask placed = 0;
        for (Node p = 0; p < n; ++p)
            if (image_[p] >= 0) placed |= bit(p);
        while (std::popcount(placed) < n) {
            Node best = -1;
            int best_links = -1;
            for (Node p = 0; p < n; ++p) {
                if (placed & bit(p)) continue;
                const int links = std::popcount(pattern_.neighbors(p) & placed);
                if (links > best_links) {
                    best = p;
                    best_links = links;
                }
            }
            order_.push_back(best);
            placed |= bit(best);
        }
    }

    NodeMask candidates(Node p) const {
        NodeMask cand = target_.all_nodes();
        for (Node q : mask_nodes(pattern_.neighbors(p)))
            if (image_[q] >= 0) cand &= target_.neighbors(image_[q]);
        return cand;
    }

    HomCount count_from(std::size_t depth) {
        const Node p = order_[depth];
        const NodeMask cand = candidates(p);
        if (depth + 1 == order_.size()) return static_cast<HomCount>(std::popcount(cand));
        HomCount total = 0;
        for (Node t : mask_nodes(cand)) {
            image_[p] = t;
            total += count_from(depth + 1);
        }
        image_[p] = -1;
        return total;
    }

    bool enumerate_from(std::size_t depth, const std::function<bool(const std::vector<Node>&)>& visit) {
        if (depth == order_.size()) return visit(image_);
        const Node p = order_[depth];
        for (Node t : mask_nodes(candidates(p))) {
            image_[p] = t;
            if (!enumerate_from(depth + 1, visit)) {
                image_[p] = -1;
                return false;
            }
        }
        image_[p] = -1;
        return true;
    }

    const Graph& pattern_;
    const Graph& target_;
    std::vector<Node> image_;
    std::vector<Node> order_;
    bool consistent_ = true;
};

}  // namespace detail

/// Number of edge-preserving maps V(pattern) -> V(target). The empty pattern has one.
inline HomCount hom_count(const Graph& pattern, const Graph& target) {
    return detail::HomSearch(pattern, target, {}).count();
}

/// Homomorphisms that extend the partial map `pins` (pattern node -> target node).
inline HomCount rooted_hom_count(const Graph& pattern, const std::map<Node, Node>& pins, const Graph& target) {
    return detail::HomSearch(pattern, target, pins).count();
}

/// Visits every homomorphism as a full image vector. Returns false if the
/// visitor stopped the enumeration.
inline bool for_each_homomorphism(const Graph& pattern, const Graph& target,
                                  const std::function<bool(const std::vector<Node>&)>& visit) {
    return detail::HomSearch(pattern, target, {}).enumerate(visit);
}

}  // namespace wlpower
