#pragma once

#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

// Bundled example graphs, each validated structurally at load time.
//   moser  - 7-vertex spindle, 11 edges, every edge in at most one square
//   bowtie - two triangles glued at a hub vertex
//   ka     - 16-vertex subcubic core whose central squares share star edges
//   kb     - 10-vertex 4-regular graph: an outer 5-cycle, an inner 5-cycle
//            and two spoke families; the inner-cycle edges each lie in a
//            unique square
//   k72    - circular clique on 7 vertices, differences 2 and 3
//   c3..c15 (odd) - cycle graphs
namespace fixtures {

Graph moser();
Graph bowtie();
Graph ka();
Graph kb();
Graph k72();

// Named lookup: "moser", "bowtie", "ka", "kb", "k72", "c3".."c15".
Graph by_name(const std::string& name);
std::vector<std::string> names();

// The dismantling orders the tests use, validated on construction.
DismantlingSequence moser_dismantling();   // ({a,2},{b,3})
DismantlingSequence ka_dismantling();      // ({2,3},{4,5},{6,1})
DismantlingSequence kb_dismantling();      // inner cycle, then the second spoke family
DismantlingSequence trivial_dismantling(const Graph& square_free);

// Vertex ids of notable substructures.
std::vector<Vertex> moser_outer_cycle();   // 0,1,2,3,4
std::vector<Vertex> kb_thick_cycle();      // a,b,c,d,e

}  // namespace fixtures
}  // namespace homlab
