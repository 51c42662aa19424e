#pragma once

#include <map>
#include <string>
#include <vector>

#include "wlpower/canonical.hpp"
#include "wlpower/graph.hpp"

namespace wlpower {

inline constexpr int kDefaultEnumerationCap = 8;

struct EnumerationOptions {
    bool connected_only = true;
    int node_cap = kDefaultEnumerationCap;
};

/// One canonical representative per isomorphism class on 1..n_max nodes,
/// ordered by node count and then canonical form.
///
/// Every graph on n nodes arises from one on n-1 nodes by adding a node with
/// some neighbor set, so level n is built from all (not only connected)
/// classes of level n-1 and deduplicated by canonical form.
inline std::vector<Graph> enumerate_graphs(int n_max, const EnumerationOptions& options = {}) {
    if (n_max > options.node_cap)
        throw ResourceError("enumeration of " + std::to_string(n_max) + "-node graphs exceeds cap " +
                            std::to_string(options.node_cap));
    std::vector<Graph> out;
    if (n_max < 1) return out;

    std::map<CanonicalForm, Graph> level{{canonical_form(Graph(1)), Graph(1)}};
    for (int n = 1;; ++n) {
        for (const auto& [form, g] : level)
            if (!options.connected_only || is_connected(g)) out.push_back(g);
        if (n == n_max) break;

        std::map<CanonicalForm, Graph> next;
        for (const auto& [form, g] : level) {
            for (NodeMask attach = 0; attach < bit(n); ++attach) {
                Graph h(n + 1);
                for (auto [u, v] : g.edges()) h.add_edge(u, v);
                for (Node u : mask_nodes(attach)) h.add_edge(u, n);
                auto labeling = canonical_labeling(h);
                Graph canon = h.permuted(labeling);
                auto key = detail::form_from_labeled(canon);
                next.try_emplace(std::move(key), std::move(canon));
            }
        }
        level = std::move(next);
    }
    return out;
}

inline std::vector<Graph> enumerate_connected_graphs(int n_max, int node_cap = kDefaultEnumerationCap) {
    return enumerate_graphs(n_max, {.connected_only = true, .node_cap = node_cap});
}

}  // namespace wlpower
