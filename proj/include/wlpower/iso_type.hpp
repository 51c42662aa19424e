#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "wlpower/graph.hpp"

namespace wlpower {

/// Isomorphism type of a node tuple: its length, which positions hold equal
/// nodes, and which position pairs are adjacent in the host graph.
///
/// `equality[i]` is the smallest index j with tuple[j] == tuple[i], so two
/// tuples share an equality pattern iff these vectors match. `adjacency` packs
/// the strict upper triangle row by row. Both are label-free, so IsoType values
/// compare directly across different graphs.
struct IsoType {
    std::vector<std::uint8_t> equality;
    std::vector<bool> adjacency;

    std::size_t length() const noexcept { return equality.size(); }

    bool adjacent(std::size_t i, std::size_t j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return adjacency[pair_index(i, j, length())];
    }

    static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t len) {
        // offset of row i in the strict upper triangle, then column
        return i * len - i * (i + 1) / 2 + (j - i - 1);
    }

    friend auto operator<=>(const IsoType&, const IsoType&) = default;
    friend bool operator==(const IsoType&, const IsoType&) = default;
};

inline IsoType atp(const Graph& g, std::span<const Node> tuple) {
    g.check_tuple(tuple);
    const std::size_t len = tuple.size();
    if (len > 255) throw DomainError("tuple too long for an isomorphism type");
    IsoType t;
    t.equality.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t j = 0;
        while (tuple[j] != tuple[i]) ++j;
        t.equality[i] = static_cast<std::uint8_t>(j);
    }
    t.adjacency.reserve(len * (len ? len - 1 : 0) / 2);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j) t.adjacency.push_back(g.has_edge(tuple[i], tuple[j]));
    return t;
}

/// Flat integer encoding (length, equality pattern, adjacency bits), used as
/// dictionary content by the refinement engine.
inline std::vector<std::int64_t> encode(const IsoType& t) {
    std::vector<std::int64_t> out;
    out.reserve(1 + t.equality.size() + t.adjacency.size());
    out.push_back(static_cast<std::int64_t>(t.length()));
    for (auto e : t.equality) out.push_back(e);
    for (bool a : t.adjacency) out.push_back(a ? 1 : 0);
    return out;
}

}  // namespace wlpower
