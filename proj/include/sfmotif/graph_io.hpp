#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sfmotif/synthesis.hpp"

namespace sfmotif {

/// Header of an edge-list file. Lines look like "# n = 1000".
struct EdgeListHeader {
  std::int64_t n = 0;
  std::optional<std::string> tau;
  std::optional<std::uint64_t> seed;
  std::string source = "given";
  std::int64_t erased_self_loops = 0;
  std::int64_t erased_multi_edges = 0;
};

struct LoadedGraph {
  EdgeListHeader header;
  SimpleGraph graph;
};

EdgeListHeader header_for(const SimpleGraph& g, const DegreeSequence& d);

void write_edge_list(std::ostream& out, const SimpleGraph& g, const EdgeListHeader& header);
/// Requires the n header; every edge line is "u v" with 0 <= u < v < n.
LoadedGraph read_edge_list(std::istream& in);

/// One degree per line.
void write_degrees(std::ostream& out, const DegreeSequence& d);
std::vector<std::int64_t> read_degrees(std::istream& in);

}  // namespace sfmotif
