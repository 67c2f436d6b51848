#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfmotif/exact.hpp"
#include "sfmotif/motif_graph.hpp"

namespace sfmotif {

/// Motif (subgraph) or graphlet (induced subgraph) counting.
enum class Mode { sub, ind };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

/// Degree regime of a vertex of H. V1 is reserved for degree-one vertices;
/// S1, S2, S3 correspond to degrees of order n^{(τ−2)/(τ−1)}, n^{1/(τ−1)}
/// and n^{1/2}.
enum class Part : std::uint8_t { V1 = 0, S1 = 1, S2 = 2, S3 = 3 };

std::string_view to_string(Part part);

struct PartitionTallies {
  int s1 = 0;
  int s2 = 0;
  int s3 = 0;
  int e_s1 = 0;     // edges inside S1
  int e_s1_s3 = 0;  // edges between S1 and S3
  int e_s1_1 = 0;   // edges between S1 and V1
  int e_s2_1 = 0;
  int e_s3_1 = 0;
};

/// Assignment of every vertex of H to V1 (exactly the degree-one vertices)
/// or to one of S1/S2/S3.
class StructurePartition {
 public:
  /// Validates that V1 entries coincide with h's degree-one vertices.
  StructurePartition(const MotifGraph& h, const std::vector<Part>& parts);

  int k() const { return k_; }
  Part operator[](int v) const { return parts_[v]; }
  std::vector<Part> parts() const { return {parts_.begin(), parts_.begin() + k_}; }

  PartitionTallies tallies(const MotifGraph& h) const;
  /// e.g. "S1,S2,S1,V1"
  std::string text() const;

  friend bool operator==(const StructurePartition&, const StructurePartition&) = default;
  friend auto operator<=>(const StructurePartition&, const StructurePartition&) = default;

 private:
  int k_;
  std::array<Part, kMaxMotifVertices> parts_{};
};

/// |S1| − |S2| − (2E_{S1} + E_{S1,S3} + E_{S1,1} − E_{S2,1})/(τ−1), without
/// checking the graphlet constraint.
LinearInTauInv partition_value(const MotifGraph& h, const StructurePartition& p);

/// Every u in S2 is adjacent to every other v in S2 ∪ S3.
bool satisfies_graphlet_constraint(const MotifGraph& h, const StructurePartition& p);

/// The objective in the given mode; nullopt marks a partition that is
/// infeasible for graphlets.
std::optional<LinearInTauInv> partition_objective(const MotifGraph& h, const StructurePartition& p,
                                                  Mode mode);

enum class AlphaLevel : std::uint8_t { zero, low, half, high };

Rational alpha_value(AlphaLevel level, const Tau& tau);
AlphaLevel alpha_level(Part part);

struct OptimizationOutcome {
  Mode mode;
  Tau tau;
  LinearInTauInv B_form;  // symbolic objective of the first reported optimizer
  Rational B;             // optimum value at tau
  std::vector<StructurePartition> optimizers;  // lexicographic order
  bool unique;
  std::vector<AlphaLevel> alpha_levels;  // of the first optimizer
  std::vector<Rational> alpha;
  ExponentForm exponent;
  bool log_correction_possible;

  const StructurePartition& optimizer() const { return optimizers.front(); }
  bool sqrt_class() const;  // unique all-S3 optimum
};

/// Exhaustive search over all 3^{k2plus} partitions.
OptimizationOutcome optimize(const MotifGraph& h, const Tau& tau, Mode mode);

/// (3−τ)/2·(k2plus + B) + k1/2, expanded symbolically.
ExponentForm scaling_exponent(const MotifGraph& h, const LinearInTauInv& B, const Tau& tau);

/// (1−τ)Σα_i + Σ_{ij∈E, α_i+α_j<1}(α_i+α_j−1). In graphlet mode returns
/// nullopt (the −∞ sentinel) when a non-edge has α_i+α_j > 1. Throws
/// PreconditionError if some α_i lies outside [0, 1/(τ−1)].
std::optional<Rational> continuous_objective(const MotifGraph& h, std::span<const Rational> alpha,
                                             const Tau& tau, Mode mode = Mode::sub);

/// Value of the continuous problem implied by a partition optimum B:
/// (1−τ)k/2 + (3−τ)/2·B + (τ−2)/2·k1.
Rational continuous_value_from_partition(const MotifGraph& h, const Rational& B, const Tau& tau);

struct GridOracleResult {
  Rational value;
  std::vector<std::vector<Rational>> argmax;
  std::size_t values_per_axis = 0;
};

/// Brute-force maximum of continuous_objective over the grid of multiples of
/// step in [0, 1/(τ−1)], augmented by the four special levels. Requires
/// k <= 5 and at most 41 multiples per axis (ResourceLimitError otherwise).
GridOracleResult grid_oracle_max(const MotifGraph& h, const Tau& tau, const Rational& step, Mode mode);

}  // namespace sfmotif
