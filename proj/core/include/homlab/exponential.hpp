#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "homlab/cover.hpp"
#include "homlab/graph.hpp"
#include "homlab/hom.hpp"
#include "homlab/walk.hpp"

namespace homlab {

// Vertex of K^{C_n}: a total table V(C_n) -> V(K). The exponential graph is
// never materialized; adjacency is the predicate below and components are
// explored by budgeted BFS.
using ExpTable = std::vector<Vertex>;

// f,f' adjacent iff {f(u),f'(v)} is an edge of K for every edge {u,v} of C_n.
bool exp_adjacent(const Graph& k, int n, const ExpTable& f, const ExpTable& g);

// BFS closure of `start` under exponential adjacency. `truncated` is set when
// the vertex budget stops the search; the partial result is still returned.
struct ExpComponent {
    Graph graph;                 // discovered subgraph (ids = discovery order)
    std::vector<ExpTable> tables;
    int n = 0;
    bool truncated = false;

    std::optional<int> index_of(const ExpTable& t) const;
};
ExpComponent exp_component(const Graph& k, int n, const ExpTable& start, int vertex_budget);

// True iff the length-2n walk of the arc (h,h2) has empty normal form.
bool eps_membership(const DismantlingSequence& d, int n, const ExpTable& h, const ExpTable& h2);

struct RecolourStep {
    Vertex position;  // vertex of the source graph
    Vertex from;
    Vertex to;
};

// Exact BFS over the finite hom space from `a` to `b`, one vertex changed per
// step, vertices in `rel` never recoloured. Looped positions additionally
// need old ~ new. Refuses (BudgetExceeded) when |V(K)|^|V(G)| would pass
// `state_guard`.
std::optional<std::vector<RecolourStep>> recolour_path(
    const Graph& g, const Graph& k, const Hom& a, const Hom& b,
    const std::vector<Vertex>& rel = {}, std::uint64_t state_guard = 20'000'000);

// Canonical m-lengthening: backtracks to the least neighbour of the endpoint,
// appended at the end.
Walk lengthen(const Walk& w, int m);

// Semi-decision for box-conjugacy in an arbitrary host: searches for a chain
// of relator moves between the cyclically reduced cyclic words, which by the
// lengthening-and-recolouring correspondence certifies that m-lengthenings of
// the walks are recolourable into each other. Confirmed is always sound (the
// relator path is replayed and re-verified); Unresolved certifies nothing.
struct OracleConfirmed {
    int m;  // length at which the recolouring exists
};
struct OracleUnresolved {};
using OracleVerdict = std::variant<OracleConfirmed, OracleUnresolved>;

OracleVerdict conjugacy_oracle(const Graph& k, const Walk& c1, const Walk& c2, int m_max,
                               std::uint64_t state_budget = 400'000);

// Trichotomy of a homomorphism phi on (G x D) | (C x H) into a
// square-dismantlable K, decided on the fixed lexicographically least arcs of
// C and D:
//    1: the doubled C walk maps to a trivial class; every H-edge lands in the
//      epsilon subgraph of K^C (verified),
//   2: symmetric with the roles of G and H swapped,
//   3: both classes nontrivial; phi lifts into the unicyclic cover over the
//      primitive root (witness constructed and validated).
struct TrichotomyCase1 {
    std::vector<ExpTable> h_tables;  // phi^*: H -> K^C
};
struct TrichotomyCase2 {
    std::vector<ExpTable> g_tables;  // phi^*: G -> K^D
};
struct TrichotomyCase3 {
    Walk primitive;                       // closed walk generating the common root
    int exponent_c, exponent_d;           // winding exponents of the two tensor walks
    std::vector<int> lift;                // union-subproduct vertex -> cover vertex
};
struct TrichotomyResult {
    int which;  // 1, 2 or 3
    std::variant<TrichotomyCase1, TrichotomyCase2, TrichotomyCase3> detail;
};

TrichotomyResult classify_trichotomy(const Graph& g, const std::vector<Vertex>& c,
                                     const Graph& h, const std::vector<Vertex>& d,
                                     const Graph& k, const DismantlingSequence* dsm,
                                     const Hom& phi);

// Factor a hom phi (from a connected graph into dsm's source) through the
// unicyclic cover over the closed walk r: phi = tau . lift. Each vertex is
// sent to the orbit class of the normal form of the phi-image of a prefix
// walk from base_vertex; requires the images of closed walks to wind only
// around [r]. Validated edge by edge before returning.
struct UnicyclicLift {
    CoverGraph cover;
    std::vector<int> lift;  // source vertex -> cover vertex
};
UnicyclicLift unicyclic_lift(const DismantlingSequence& dsm, const Walk& r, const Hom& phi,
                             Vertex base_vertex);

// From phi: G x H -> K with phi(-,h0) constant: restricts G to an odd cycle,
// curries into K^C, and runs the median pipeline on the component of the
// constants. nullopt (Unresolved) when the pipeline obstructs or the
// component BFS exceeds its budget.
std::optional<Hom> constant_slice_hom(const Graph& g, const Graph& h, const Hom& phi,
                                      Vertex h0, const DismantlingSequence& dsm,
                                      int vertex_budget = 200'000);

// Dual homomorphism of the canonical lengthening map C_m -> C_n applied to a
// table: identity on 0..n-1, then oscillating between n-1 and n-2.
ExpTable lengthen_table(const ExpTable& h, int m);

}  // namespace homlab
