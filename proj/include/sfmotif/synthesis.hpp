#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sfmotif/exact.hpp"

namespace sfmotif {

/// Sampled degrees D_1..D_n with their total L_n.
struct DegreeSequence {
  std::int64_t n = 0;
  std::vector<std::int64_t> degrees;
  std::int64_t total = 0;  // L_n
  Tau tau;
  std::uint64_t seed = 0;
  bool parity_fixed = false;  // D_n was incremented to make L_n even

  std::int64_t operator[](std::int64_t v) const { return degrees[v]; }
};

/// i.i.d. D_i = floor(U_i^{-1/(τ-1)}), so P(D >= k) = k^{-(τ-1)}; if the
/// sum is odd the last degree gets one extra half-edge.
DegreeSequence sample_degrees(std::int64_t n, const Tau& tau, std::uint64_t seed);

/// Wraps a given degree list (every entry >= 1), applying the same parity rule.
DegreeSequence degree_sequence_from(std::vector<std::int64_t> degrees, const Tau& tau,
                                    std::uint64_t seed = 0);

/// μ = E[D] = ζ(τ−1) for the sampler above.
double degree_mean(const Tau& tau);

enum class GraphSource { ecm, rank1, given };

std::string_view to_string(GraphSource source);

/// Simple undirected graph in compressed adjacency form with sorted
/// neighbor lists.
class SimpleGraph {
 public:
  using Vertex = std::uint32_t;

  SimpleGraph() = default;
  /// Builds from an edge list; self-loops and repeated pairs are dropped and
  /// counted in erased_self_loops / erased_multi_edges.
  static SimpleGraph from_edges(std::int64_t n, std::vector<std::pair<Vertex, Vertex>> edges,
                                GraphSource source = GraphSource::given);

  std::int64_t n() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(neighbors_.size()) / 2; }
  std::int64_t degree(std::int64_t v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(std::int64_t v) const {
    return {neighbors_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }
  bool has_edge(std::int64_t u, std::int64_t v) const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, sorted

  std::int64_t erased_self_loops() const { return self_loops_; }
  std::int64_t erased_multi_edges() const { return multi_edges_; }
  GraphSource source() const { return source_; }

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::int64_t self_loops_ = 0;
  std::int64_t multi_edges_ = 0;
  GraphSource source_ = GraphSource::given;
};

/// Maximum number of half-edges pair_half_edges accepts.
inline constexpr std::int64_t kMaxHalfEdges = std::int64_t{1} << 31;

/// Uniform matching of the half-edges (Fisher–Yates shuffle, then adjacent
/// pairing), followed by erasure of self-loops and multi-edges.
SimpleGraph pair_half_edges(const DegreeSequence& d, std::uint64_t seed);

/// Each pair {i,j} independently present with probability
/// 1 − exp(−D_i D_j/(μn)).
SimpleGraph generate_rank1(const DegreeSequence& d, std::uint64_t seed);

/// |L_n − μn| <= n^{1/(τ−1)}.
bool check_Jn(const DegreeSequence& d);

/// Closed interval of original degrees.
struct DegreeWindow {
  double lo = 1.0;
  double hi = 0.0;

  bool contains(std::int64_t degree) const {
    const auto x = static_cast<double>(degree);
    return x >= lo && x <= hi;
  }
};

/// [ε (μn)^α, (μn)^α / ε].
DegreeWindow degree_window(std::int64_t n, const Tau& tau, const Rational& alpha, const Rational& eps);

/// Vertices whose original degree D_i lies in degree_window(n, τ, α, ε).
std::vector<std::int64_t> degree_window_members(const DegreeSequence& d, const Rational& alpha,
                                                const Rational& eps);

}  // namespace sfmotif
