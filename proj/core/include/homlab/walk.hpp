#pragma once

#include <optional>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

// Walk in a fixed host graph, stored as its vertex sequence (start included,
// so an empty walk rooted at r is just [r]). Arcs are consecutive pairs.
class Walk {
public:
    Walk() = default;
    Walk(const Graph* host, Vertex start) : host_(host), verts_{start} { check_range(start); }
    Walk(const Graph* host, std::vector<Vertex> verts);

    const Graph* host() const { return host_; }
    int length() const { return static_cast<int>(verts_.size()) - 1; }
    bool empty() const { return length() == 0; }
    Vertex start() const { return verts_.front(); }
    Vertex iota() const { return verts_.front(); }
    Vertex tau() const { return verts_.back(); }
    bool closed() const { return iota() == tau(); }
    const std::vector<Vertex>& verts() const { return verts_; }
    Vertex operator[](int i) const { return verts_.at(i); }

    Walk& append(Vertex next);
    Walk concat(const Walk& other) const;      // requires tau() == other.iota()
    Walk inverse() const;
    Walk rotate(int arcs) const;               // closed walks only
    Walk subwalk(int from, int to) const;      // vertices [from..to]

    // Hosts are compared by value where it matters (rho_rewrite, conjugacy);
    // walk equality is equality of vertex sequences.
    friend bool operator==(const Walk& a, const Walk& b) { return a.verts_ == b.verts_; }
    friend auto operator<=>(const Walk& a, const Walk& b) { return a.verts_ <=> b.verts_; }

private:
    void check_range(Vertex v) const;
    const Graph* host_ = nullptr;
    std::vector<Vertex> verts_;
};

// Delete adjacent mutually-inverse arc pairs until none remain. Endpoints are
// preserved; the result does not depend on deletion order.
Walk reduce(const Walk& w);
bool is_reduced(const Walk& w);

// Cyclic reduction of a closed walk: w = prefix . core . prefix^-1 with core
// cyclically reduced. Returns {core, prefix}.
std::pair<Walk, Walk> cyclic_reduce(const Walk& w);

// Apply one dismantling step's substitution: every traversal of the removed
// edge becomes the 3-arc detour.
Walk rho_rewrite_step(const DismantlingStep& step, const Walk& w);
// Full cascade over the first `steps` entries (default all) in sequence
// order; the result lives in the kernel when the whole sequence is applied.
Walk rho_rewrite(const DismantlingSequence& d, const Walk& w, int steps = -1);

// Canonical representative of the box-equivalence class of a walk in a
// square-dismantlable host: the reduced kernel word of the full cascade.
struct NormalForm {
    const DismantlingSequence* context = nullptr;
    Walk word;  // reduced, kernel edges only

    bool empty() const { return word.empty(); }
    int length() const { return word.length(); }
    Vertex start() const { return word.start(); }
    Vertex tau() const { return word.tau(); }
    friend bool operator==(const NormalForm& a, const NormalForm& b) {
        return a.word == b.word;
    }
};

NormalForm normal_form(const DismantlingSequence& d, const Walk& w);
// Two walks of the dismantlable host are box-equivalent iff their normal
// forms coincide arc for arc.
bool box_equivalent(const DismantlingSequence& d, const Walk& a, const Walk& b);

// Decide box-conjugacy of two closed walks via free-group conjugacy of their
// cyclically reduced normal forms. On success returns a witness walk W in the
// host with  c1 ~ W . c2 . W^-1.
std::optional<Walk> conjugacy(const DismantlingSequence& d, const Walk& c1, const Walk& c2);

// Shortest period of a nonempty cyclically reduced closed word:
// root^exponent == nf with the exponent maximal.
struct PrimitiveRoot {
    Walk root;
    int exponent;
};
PrimitiveRoot primitive_root(const NormalForm& nf);
PrimitiveRoot primitive_root_of_cyclic_word(const Walk& cyclically_reduced);

// The closed walk of length 2n in K read off an arc (h,h2) of K^{C_n}:
// h(0), h2(1), h(2), ..., h(n-1), h2(0), h(1), ..., h(0).
Walk arc_closed_walk(const Graph& k, int n, const std::vector<Vertex>& h,
                     const std::vector<Vertex>& h2);

// Closed walk C (x) h0h1 in the product: length 2|C|, projecting to C.C on
// the left factor and to (h0,h1)(h1,h0) repeated on the right.
Walk tensor_walk_left(const Graph& product, int n_right, const Walk& c_in_left,
                      Vertex h0, Vertex h1);
// Dual form g0g1 (x) D: projects to (g0,g1)(g1,g0) repeated on the left and
// to D.D on the right.
Walk tensor_walk_right(const Graph& product, int n_right, Vertex g0, Vertex g1,
                       const Walk& d_in_right);

// Coordinate projections of a walk in an index-encoded product.
Walk walk_project_left(const Graph& left, int n_right, const Walk& w);
Walk walk_project_right(const Graph& right, int n_right, const Walk& w);

// Image of a walk under a vertex map into `target` (map must be a Hom).
Walk walk_map(const Graph& target, const std::vector<Vertex>& map, const Walk& w);

}  // namespace homlab
