#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlab/errors.hpp"

namespace homlab {

using Vertex = int;

// Unordered edge, normalized so u <= v. Loops are {v,v}.
struct Edge {
    Vertex u, v;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}
    bool is_loop() const { return u == v; }
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Finite undirected graph with optional loops. Vertex ids are dense 0..n-1;
// figure names ("a", "p13", ...) live in the label table only.
// Treat as immutable once built: every operation below is a pure function.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n), labels_(n) {}

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(Vertex a, Vertex b);
    bool has_edge(Vertex a, Vertex b) const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_loop(Vertex v) const { return has_edge(v, v); }

    void set_label(Vertex v, std::string name);
    const std::string& label(Vertex v) const { return labels_.at(v); }
    // Label if set, else the numeric id.
    std::string display(Vertex v) const;
    std::optional<Vertex> find_label(const std::string& name) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adj_ == b.adj_;
    }

private:
    std::vector<std::vector<Vertex>> adj_;  // sorted, loop stored once
    std::vector<Edge> edges_;               // sorted
    std::vector<std::string> labels_;
};

Graph cycle_graph(int n);
Graph path_graph(int n_vertices);
Graph complete_graph(int n);

// Index encoding of product vertices: (g,h) -> g*|V(H)| + h.
inline Vertex pair_index(Vertex g, Vertex h, int n_right) { return g * n_right + h; }
inline std::pair<Vertex, Vertex> pair_split(Vertex v, int n_right) {
    return {v / n_right, v % n_right};
}

// Tensor (categorical) product: {(g1,h1),(g2,h2)} is an edge iff
// {g1,g2} in E(G) and {h1,h2} in E(H). Labels record the pair.
Graph tensor_product(const Graph& g, const Graph& h);

// Subgraph of tensor_product(g,h) on E(G x D) | E(C x H), where C and D are
// odd cycles given as vertex sequences in g and h. All of V(G)xV(H) is kept,
// isolated vertices included.
Graph union_subproduct(const Graph& g, const std::vector<Vertex>& cycle_in_g,
                       const Graph& h, const std::vector<Vertex>& cycle_in_h);

// All vertex-distinct 4-cycles through e, one per rotation/reflection class,
// as cyclic vertex arrays [a,b,c,d] with e = {a,b}. Chords are permitted.
std::vector<std::array<Vertex, 4>> squares_through_edge(const Graph& g, Edge e);
std::vector<std::array<Vertex, 4>> all_squares(const Graph& g);
bool is_square_free(const Graph& g);

// (v,u) with v != u and N(v) a subset of N(u), if any.
std::optional<std::pair<Vertex, Vertex>> find_fold(const Graph& g);

// One dismantling step: `removed` lay in exactly one square of the graph it
// was removed from, `detour` is that square's complementary 3-edge path,
// oriented removed.u -> removed.v.
struct DismantlingStep {
    Edge removed;
    std::array<Vertex, 4> detour;  // detour[0] = removed.u, detour[3] = removed.v
};

class DismantlingSequence {
public:
    // Validates the given removal order step by step (each edge must lie in
    // exactly one square of the current graph) and that the final kernel is
    // square-free. Throws Error on any violation.
    static DismantlingSequence build(const Graph& source, const std::vector<Edge>& removal_order);

    const Graph& source() const { return source_; }
    const Graph& kernel() const { return kernel_; }
    const std::vector<DismantlingStep>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }

private:
    DismantlingSequence() = default;
    Graph source_;
    Graph kernel_;
    std::vector<DismantlingStep> steps_;
};

// Greedy search with backtracking over candidate edges-in-exactly-one-square,
// lexicographically least first. Exhaustive up to `max_steps` removals, so
// nullopt for graphs at most `max_steps` edges above a square-free kernel
// really means no sequence exists.
std::optional<DismantlingSequence> find_dismantling_sequence(const Graph& g, int max_steps = 24);

// Vertex sequence of a cycle subgraph check; throws NotACycle / EvenCycle.
void require_odd_cycle(const Graph& g, const std::vector<Vertex>& cycle, const char* what);

bool is_connected(const Graph& g);
// 2-coloring if bipartite.
std::optional<std::vector<int>> bipartition(const Graph& g);
// Length of a shortest cycle; nullopt for forests (girth infinity).
std::optional<int> girth(const Graph& g, std::vector<Vertex>* witness = nullptr);
// Some shortest odd cycle as a vertex sequence, if the graph has one.
std::optional<std::vector<Vertex>> shortest_odd_cycle(const Graph& g);
// Induced subgraph; out_index maps old vertex -> new id (or -1).
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& verts,
                       std::vector<int>* out_index = nullptr);

}  // namespace homlab
