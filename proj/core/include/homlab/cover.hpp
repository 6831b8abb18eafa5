#pragma once

#include <map>
#include <optional>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/walk.hpp"

namespace homlab {

// Radius-truncated box-universal or unicyclic cover of a square-dismantlable
// base. Vertices are normal forms: reduced kernel words rooted at `root`
// (universal mode) or canonical orbit representatives under the deck
// transform of a fixed closed walk (unicyclic mode). Kernel-word edges give
// the tree / unicycle skeleton; one extra edge per lift of each removed
// edge's cascaded detour.
class CoverGraph {
public:
    enum class Mode { universal, unicyclic };

    Mode mode() const { return mode_; }
    const DismantlingSequence& context() const { return *context_; }
    const Graph& base() const { return context_->source(); }
    Vertex root() const { return root_; }
    int radius() const { return radius_; }

    int vertex_count() const { return skeleton_.vertex_count(); }
    const Graph& skeleton() const { return skeleton_; }          // all cover edges
    const Graph& kernel_skeleton() const { return kernel_skeleton_; }  // tree / unicycle only
    Vertex tau(int cv) const { return tau_.at(cv); }
    bool interior(int cv) const { return interior_.at(cv); }
    const std::vector<Vertex>& word(int cv) const { return words_.at(cv); }
    std::optional<int> find_word(const std::vector<Vertex>& w) const;
    // id of the normal form of (root-walk . w) inside the truncation
    std::optional<int> locate(const Walk& walk_from_root) const;

    // unicyclic only
    const std::vector<int>& central_cycle() const { return cycle_; }
    int distance_to_cycle(int cv) const { return cycle_dist_.at(cv); }
    // orbit-canonical representative of a kernel word (unicyclic mode)
    std::vector<Vertex> canon(std::vector<Vertex> word) const;

    static CoverGraph universal(const DismantlingSequence& d, Vertex root, int radius);
    static CoverGraph unicyclic(const DismantlingSequence& d, const Walk& r, int window);

    // longest cascaded detour; interiors keep this margin to the boundary
    int margin() const { return margin_; }

private:
    const DismantlingSequence* context_ = nullptr;
    Mode mode_ = Mode::universal;
    Vertex root_ = 0;
    int radius_ = 0;
    int margin_ = 3;
    Graph skeleton_;
    Graph kernel_skeleton_;
    std::vector<std::vector<Vertex>> words_;
    std::map<std::vector<Vertex>, int> index_;
    std::vector<Vertex> tau_;
    std::vector<char> interior_;
    std::vector<int> cycle_;       // unicyclic: central cycle vertex ids in order
    std::vector<int> cycle_dist_;  // unicyclic: kernel distance to the cycle
    Walk cycle_word_{};            // unicyclic: cyclically reduced core of rho(R)

    std::vector<Vertex> detour_path(int step) const;
    friend CoverGraph build_cover(const DismantlingSequence&, Vertex, int, bool, const Walk*);
};

struct CoverReport {
    bool local_ok = true;
    bool vertex_surjective = false;
    bool edge_surjective = false;
    std::vector<std::pair<int, std::string>> violations;  // cover vertex, description
    bool pass() const { return local_ok && vertex_surjective && edge_surjective; }
};

// Checks local bijectivity of tau at every interior vertex and surjectivity
// onto base vertices and edges.
CoverReport verify_covering_map(const CoverGraph& c);

// The unique cover walk over `w` starting at cover vertex `start`;
// nullopt when the lift leaves the truncation.
std::optional<std::vector<int>> lift_walk(const CoverGraph& c, int start, const Walk& w);

// alpha_A on cover vertices: [W] -> [A.W] wherever both normal forms lie in
// the truncation. A must be closed at the cover root.
std::vector<std::optional<int>> deck_transform(const CoverGraph& c, const Walk& a);

// Extract the cover as a plain labelled graph (labels = tau images).
Graph cover_to_graph(const CoverGraph& c);

std::string format_cover(const CoverGraph& c);
std::string cover_to_dot(const CoverGraph& c);

}  // namespace homlab
