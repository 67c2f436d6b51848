#include "sfmotif/atlas.hpp"

#include <algorithm>
#include <map>

#include "sfmotif/error.hpp"

namespace sfmotif {

int PatternClassifier::pair_bit(int k, int i, int j) {
  if (i > j) std::swap(i, j);
  // pairs before row i: sum_{r<i} (k-1-r)
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

MotifGraph PatternClassifier::pattern_graph(int k, std::uint32_t pattern) {
  std::array<VertexMask, kMaxMotifVertices> rows{};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if ((pattern >> pair_bit(k, i, j)) & 1U) {
        rows[i] |= static_cast<VertexMask>(1U << j);
        rows[j] |= static_cast<VertexMask>(1U << i);
      }
    }
  }
  return MotifGraph::from_rows_unchecked(k, rows);
}

std::vector<AtlasEntry> enumerate_connected_graphs(int k) {
  if (k < 3 || k > 6) throw PreconditionError("enumerate_connected_graphs: k must be in [3,6]");
  const int pairs = k * (k - 1) / 2;
  std::map<std::pair<int, CanonicalKey>, MotifGraph> found;
  for (std::uint32_t pattern = 0; pattern < (1U << pairs); ++pattern) {
    const MotifGraph g = PatternClassifier::pattern_graph(k, pattern);
    if (!g.connected()) continue;
    CanonicalKey key = canonical_form(g);
    found.try_emplace({g.edge_count(), std::move(key)}, g);
  }
  std::vector<AtlasEntry> out;
  out.reserve(found.size());
  for (auto& [order, g] : found) {
    // Decode the canonical key back into the canonical relabeling.
    const auto& b = order.second.bytes();
    const std::uint32_t code = (std::uint32_t{b[1]} << 24) | (std::uint32_t{b[2]} << 16) |
                               (std::uint32_t{b[3]} << 8) | std::uint32_t{b[4]};
    std::array<VertexMask, kMaxMotifVertices> rows{};
    int bit = pairs - 1;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j, --bit) {
        if ((code >> bit) & 1U) {
          rows[i] |= static_cast<VertexMask>(1U << j);
          rows[j] |= static_cast<VertexMask>(1U << i);
        }
      }
    }
    std::vector<MotifGraph::Edge> edges;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if ((rows[i] >> j) & 1U) edges.emplace_back(i, j);
    out.push_back({MotifGraph::from_edges(k, edges), order.second});
  }
  return out;
}

PatternClassifier::PatternClassifier(int k) : k_(k) {
  if (k < 3 || k > 5) throw PreconditionError("PatternClassifier: k must be in [3,5]");
  classes_ = enumerate_connected_graphs(k);
  std::map<CanonicalKey, int> index;
  for (std::size_t i = 0; i < classes_.size(); ++i) index[classes_[i].key] = static_cast<int>(i);
  const int pairs = k * (k - 1) / 2;
  table_.assign(std::size_t{1} << pairs, -1);
  for (std::uint32_t pattern = 0; pattern < (1U << pairs); ++pattern) {
    const MotifGraph g = pattern_graph(k, pattern);
    if (g.connected()) table_[pattern] = static_cast<std::int16_t>(index.at(canonical_form(g)));
  }
}

}  // namespace sfmotif
