#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfmotif/atlas.hpp"
#include "sfmotif/motif_graph.hpp"
#include "sfmotif/optimizer.hpp"
#include "sfmotif/synthesis.hpp"

namespace sfmotif {

using BigCount = boost::multiprecision::cpp_int;

enum class Engine { generic, clique, star, oracle };

std::string_view to_string(Engine engine);

struct CensusOptions {
  /// Refuse when the projected enumeration size exceeds this.
  double ceiling = 1e9;
  /// Worker threads over enumeration roots; 0 means hardware concurrency.
  unsigned threads = 0;
};

struct CensusReport {
  CanonicalKey key;
  Mode mode = Mode::sub;
  BigCount count;               // unordered copies
  BigCount labeled_embeddings;  // ordered tuples (i_1..i_k)
  std::optional<std::vector<DegreeWindow>> windows;
  /// False when asymmetric windows make count = labeled/|Aut| meaningless;
  /// count is still reported as that quotient (rounded down).
  bool aut_normalized = true;
  Engine engine = Engine::generic;
  double elapsed = 0.0;  // seconds
};

/// Induced counts of every connected k-vertex class, 3 <= k <= 5.
struct GraphletCensus {
  int k = 0;
  std::vector<AtlasEntry> classes;
  std::vector<BigCount> induced;  // parallel to classes
  BigCount connected_sets;        // number of connected induced k-sets

  std::map<CanonicalKey, BigCount> table() const;
};

/// Σ_v C(deg(v), k − 1), the hub-guard projection.
double projected_enumeration_size(const SimpleGraph& g, int k);

GraphletCensus graphlet_census(const SimpleGraph& g, int k, const CensusOptions& options = {});

CensusReport count_subgraph(const SimpleGraph& g, const MotifGraph& h, const CensusOptions& options = {});
CensusReport count_induced(const SimpleGraph& g, const MotifGraph& h, const CensusOptions& options = {});

/// Labeled embeddings with D_{i_j} in windows[j] for every position j.
CensusReport count_with_windows(const SimpleGraph& g, std::span<const std::int64_t> degrees,
                                const MotifGraph& h, std::span<const DegreeWindow> windows, Mode mode,
                                const CensusOptions& options = {});

/// k-cliques, 3 <= k <= 6, by degree-ordered orientation.
BigCount count_cliques(const SimpleGraph& g, int k);

/// Σ_i C(deg(i), r) over simple-graph degrees.
BigCount count_star_subgraphs(const SimpleGraph& g, int r);
/// Σ_i C(D_i, r) over sampled (pre-erasure) degrees.
BigCount count_star_subgraphs(const DegreeSequence& d, int r);

/// All C(n,k) vertex subsets times all k! maps; n <= 15.
BigCount brute_force_census(const SimpleGraph& g, const MotifGraph& h, Mode mode);

/// N_sub(h) = Σ_{h'} count_copies_in(h, h') N_ind(h') over every class h'
/// on h.k() vertices. Throws PreconditionError on a missing class.
BigCount motif_from_graphlets(const MotifGraph& h, const std::map<CanonicalKey, BigCount>& graphlet_counts);

}  // namespace sfmotif
