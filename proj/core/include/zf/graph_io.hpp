#pragma once

#include <iosfwd>
#include <string>

#include "zf/graph.hpp"

namespace zf {

// Edge-list text format:
//   n m d
//   u v        (m lines, 0-indexed, u <= v, sorted; loops as "u u")
// d is the common degree, or 0 for a graph that is not regular.

void write_edge_list(std::ostream &out, const MultiGraph &g);
void write_edge_list(std::ostream &out, const Graph &g);

/// Parses the format above. Throws PreconditionError on malformed input or when
/// a positive d disagrees with the degrees found.
MultiGraph read_edge_list(std::istream &in);

MultiGraph load_edge_list(const std::string &path);
void save_edge_list(const std::string &path, const Graph &g);

} // namespace zf
