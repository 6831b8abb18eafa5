#pragma once

#include <optional>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

// Third power: same vertices, {u,v} an edge iff some walk of length exactly 3
// joins u and v. Length-3 closed walks become loops and are kept.
Graph p3(const Graph& g);

// Right adjoint of p3. Vertices are pairs (u, A) with A a nonempty subset of
// N(u); (u,A) ~ (v,B) iff u in B, v in A, and A is completely joined to B.
// Refuses graphs with maximum degree above `degree_guard` unless forced.
struct AdjointVertex {
    Vertex u;
    std::vector<Vertex> a;  // sorted
};
struct P3Inverse {
    Graph graph;
    std::vector<AdjointVertex> labels;
    std::optional<int> index_of(Vertex u, const std::vector<Vertex>& a) const;
};
P3Inverse p3_inverse(const Graph& g, int degree_guard = 12, bool force = false);

enum class TransposeDirection { left_to_right, right_to_left };

// Adjoint transpose.
//   left_to_right: f : P3(G) -> H becomes g |-> (f(g), f(N_G(g))) into P3^-1(H).
//   right_to_left: f : G -> P3^-1(H) becomes the first-coordinate map
//   P3(G) -> H.
// The result is validated before being returned.
Hom transpose(const Graph& g, const Graph& h, const Graph& p3g, const P3Inverse& p3ih,
              const Hom& f, TransposeDirection direction);

// The unit g |-> (g, N(g)) : G -> P3^-1(P3(G)).
Hom unit_map(const Graph& g, const Graph& p3g, const P3Inverse& p3i_of_p3g);

// For girth(K) >= 13: psi(u,A) = u when A has no common neighbour, else the
// unique element of CN(A) closest to u; a valid hom P3^-1(P3(K)) -> K.
// Throws GirthTooSmall with a short cycle witness otherwise.
Hom girth13_psi(const Graph& k, const Graph& p3k, const P3Inverse& p3i_of_p3k);

}  // namespace homlab
