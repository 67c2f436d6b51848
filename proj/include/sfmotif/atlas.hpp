#pragma once

#include <cstdint>
#include <vector>

#include "sfmotif/motif_graph.hpp"

namespace sfmotif {

struct AtlasEntry {
  MotifGraph graph;
  CanonicalKey key;
};

/// One representative per isomorphism class of connected graphs on k
/// vertices (3 <= k <= 6), ordered by (edge count, canonical key). The
/// representative is the canonical relabeling itself.
std::vector<AtlasEntry> enumerate_connected_graphs(int k);

/// Maps the adjacency pattern of a k-vertex set (k <= 5) to its class in
/// enumerate_connected_graphs(k), or -1 when the pattern is disconnected.
///
/// Pattern bits follow the pair order (0,1),(0,2),...,(0,k-1),(1,2),...
/// with pair (0,1) in bit 0.
class PatternClassifier {
 public:
  explicit PatternClassifier(int k);

  int k() const { return k_; }
  const std::vector<AtlasEntry>& classes() const { return classes_; }
  int classify(std::uint32_t pattern) const { return table_[pattern]; }

  static int pair_bit(int k, int i, int j);
  static MotifGraph pattern_graph(int k, std::uint32_t pattern);

 private:
  int k_;
  std::vector<AtlasEntry> classes_;
  std::vector<std::int16_t> table_;
};

}  // namespace sfmotif
