#pragma once

#include <map>
#include <optional>
#include <vector>

#include "homlab/cover.hpp"
#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

struct ExpComponent;  // exponential.hpp
class DismantlingSequence;

// Nonnegative weights with odd total on the kernel tree of a universal cover.
struct WeightedTreeView {
    const CoverGraph* cover = nullptr;
    std::map<int, int> weights;  // cover vertex -> weight

    int total() const;
};

// The unique vertex towards which every kernel-tree edge points under the
// majority orientation. Throws IndeterminateAtBoundary when the walk to the
// sink leaves the certified interior.
int median(const WeightedTreeView& v);

// Tuple of cover vertices; monochromatic when all entries share the
// bipartition class of the cover tree.
using Tuple = std::vector<int>;
bool monochromatic(const CoverGraph& c, const Tuple& x);

enum class PsiMode { square_free, one_square };

// Median homomorphism on tuples of universal-cover vertices: the median when
// it is correctly coloured, otherwise a neighbour picked by the mode rule
// (least tau; in one_square mode a square-partner component with a weight
// majority takes precedence). Non-monochromatic tuples are projected to
// their odd monochromatic sub-tuple first.
int psi(const CoverGraph& c, const Tuple& x);
int psi(const CoverGraph& c, const Tuple& x, PsiMode mode);

struct ObstructionWitness {
    int u, v;        // component vertex ids of the failing edge
    Vertex fu, fv;   // assigned values that are not adjacent in K
};

struct CyclicHomResult {
    std::optional<Hom> hom;  // source = component graph, target = K
    std::optional<ObstructionWitness> obstruction;
};

// Median pipeline: for every vertex of an epsilon component of K^{C_n}, lift
// one incident arc walk to the universal cover, read the position tuple,
// apply psi and project by tau. The assembled map is validated edge by edge;
// a failing edge is returned as the obstruction. Two independent lifts per
// vertex are cross-checked.
CyclicHomResult cyclic_hom(const Graph& k, const DismantlingSequence& d, int n,
                           const ExpComponent& component);

// Retraction of a unicyclic cover onto an odd cycle: anchor-parity map, then
// the clockwise-link map onto the central cycle, then elimination of
// distance-3 chords. The result fixes its image pointwise.
Hom retract_unicyclic(const CoverGraph& c);

}  // namespace homlab
