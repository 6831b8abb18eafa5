#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

// Total edge-preserving vertex map. Loops in the source require loops on the
// image vertex. Validation is re-runnable at any time.
struct Hom {
    const Graph* source = nullptr;
    const Graph* target = nullptr;
    std::vector<Vertex> map;

    bool valid() const;
    // First violated source edge, if any.
    std::optional<Edge> violation() const;
};

Hom compose(const Hom& first, const Hom& then);

// Deadline/node budget checked between node expansions.
struct SearchLimits {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    std::chrono::steady_clock::time_point deadline{};  // epoch = none
    bool has_deadline = false;

    static SearchLimits none() { return {}; }
    static SearchLimits nodes(std::uint64_t n) { return {n, {}, false}; }
};

// Exact: nullopt means no homomorphism exists. Deterministic witness
// (BFS order from a maximum-degree vertex, ascending value order).
// `pinned[v]` (optional) fixes the image of v.
std::optional<Hom> find_hom(const Graph& g, const Graph& k,
                            const std::vector<std::optional<Vertex>>& pinned = {},
                            const SearchLimits& limits = SearchLimits::none());

bool is_hom_equivalent(const Graph& g, const Graph& h);

// Hom G -> G[S] fixing S pointwise, expressed as a map into G itself with
// image inside S. Exact nullopt.
std::optional<Hom> find_retraction(const Graph& g, const std::vector<Vertex>& s);

// Exact bijective edge-preserving map with edge-preserving inverse.
std::optional<Hom> find_isomorphism(const Graph& g, const Graph& h);

// Enumerate all homomorphisms G -> K (use only at desk scale). The callback
// returns false to stop early. Returns the number of maps visited.
std::uint64_t for_each_hom(const Graph& g, const Graph& k,
                           const std::function<bool(const std::vector<Vertex>&)>& cb);

}  // namespace homlab
