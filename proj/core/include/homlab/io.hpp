#pragma once

#include <iosfwd>
#include <string>

#include "homlab/graph.hpp"
#include "homlab/hom.hpp"
#include "homlab/walk.hpp"

namespace homlab {

// Edge-list text format shared by the whole artifact:
//   lines `u v` with integer ids, `#` comments, optional `label v name` lines.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);
std::string format_edge_list(const Graph& g);

std::string to_dot(const Graph& g, const std::string& name = "G");

// Walk text format: `start; v1 v2 v3 ...` (vertices after the start).
// Tokens may be labels of the host graph instead of ids.
Walk parse_walk(const Graph& host, const std::string& text);
std::string format_walk(const Walk& w);

// Hom serialization: lines `u -> k(u)`.
std::string format_hom(const Hom& h);
// Parses `u -> k(u)` lines into a map for the given source/target pair.
Hom parse_hom(const Graph& source, const Graph& target, std::istream& in);

// ExpVertex text form: comma-separated values indexed by C_n position.
std::vector<Vertex> parse_table(const Graph& target, const std::string& text);
std::string format_table(const std::vector<Vertex>& table);

}  // namespace homlab
