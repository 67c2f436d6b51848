#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sfmotif {

inline constexpr int kMaxMotifVertices = 8;
inline constexpr int kMinMotifVertices = 3;

using VertexMask = std::uint8_t;

/// Byte-sequence key that is equal for two motifs iff they are isomorphic.
/// Layout: vertex count, then the upper-triangle adjacency bits of the
/// lexicographically largest relabeling packed into 4 big-endian bytes.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::string hex() const;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// A small simple undirected graph H on k <= 8 vertices.
///
/// Construction through from_edges / parse_motif validates that H is simple
/// and connected with 3 <= k <= 8. Values are immutable afterwards.
class MotifGraph {
 public:
  using Edge = std::pair<int, int>;

  static MotifGraph from_edges(int k, const std::vector<Edge>& edges);
  /// Builds from adjacency rows without the k >= 3 / connectivity checks.
  /// Used for the k-vertex patterns that appear inside a census.
  static MotifGraph from_rows_unchecked(int k, const std::array<VertexMask, kMaxMotifVertices>& rows);

  int k() const { return k_; }
  int edge_count() const { return edge_count_; }
  bool adjacent(int u, int v) const { return (rows_[u] >> v) & 1U; }
  VertexMask row(int v) const { return rows_[v]; }
  const std::array<VertexMask, kMaxMotifVertices>& rows() const { return rows_; }
  int degree(int v) const;

  VertexMask degree_one_set() const { return degree_one_; }
  bool is_degree_one(int v) const { return (degree_one_ >> v) & 1U; }
  int k1() const;
  int k2plus() const { return k_ - k1(); }
  int min_degree() const;
  bool connected() const;
  bool complete() const { return edge_count_ == k_ * (k_ - 1) / 2; }

  std::vector<Edge> edges() const;
  /// Motif-spec text, e.g. "k=3; edges=0-1,0-2,1-2".
  std::string to_spec() const;

  /// Returns the graph with vertex v renamed to perm[v].
  MotifGraph relabeled(const std::array<int, kMaxMotifVertices>& perm) const;

  friend bool operator==(const MotifGraph& a, const MotifGraph& b) {
    return a.k_ == b.k_ && a.rows_ == b.rows_;
  }

 private:
  MotifGraph() = default;
  void finish();

  int k_ = 0;
  int edge_count_ = 0;
  std::array<VertexMask, kMaxMotifVertices> rows_{};
  VertexMask degree_one_ = 0;
};

/// Parses `k=<int>; edges=<a>-<b>,...` (whitespace-insensitive).
/// Throws ParseError, or DisconnectedError for disconnected input.
MotifGraph parse_motif(std::string_view spec);

/// Parses a multi-spec file body: one spec per line, `#` comment lines and
/// blank lines skipped.
std::vector<MotifGraph> parse_motif_list(std::string_view text);

CanonicalKey canonical_form(const MotifGraph& g);

/// Number of adjacency-preserving permutations of V_H.
std::uint64_t automorphism_count(const MotifGraph& g);

/// Number of unordered copies of h inside g as a (not necessarily induced)
/// subgraph. Requires h.k() <= g.k().
std::uint64_t count_copies_in(const MotifGraph& h, const MotifGraph& g);

/// Number of injective maps V_h -> V_g carrying edges to edges.
std::uint64_t count_embeddings(const MotifGraph& h, const MotifGraph& g);

}  // namespace sfmotif
