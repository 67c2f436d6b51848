#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sfmotif/census.hpp"
#include "sfmotif/constants.hpp"
#include "sfmotif/exact.hpp"
#include "sfmotif/motif_graph.hpp"
#include "sfmotif/optimizer.hpp"
#include "sfmotif/synthesis.hpp"

namespace sfmotif {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { scaling, ratio, self_averaging };

std::string_view to_string(ExperimentKind kind);

/// automatic: clique counter for complete H, star counter for stars in sub
/// mode, the generic census otherwise.
enum class EngineChoice { automatic, generic, clique, star };

std::string_view to_string(EngineChoice choice);
EngineChoice parse_engine(std::string_view text);

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::scaling;
  Tau tau{Rational(5, 2)};
  std::vector<std::int64_t> n_grid;
  int replications = 1;
  std::vector<MotifGraph> motifs;
  std::vector<Mode> modes{Mode::sub};
  EngineChoice engine = EngineChoice::automatic;
  Rational eps{1, 10};
  /// α vectors; each adds a windowed labeled count to every scaling row.
  std::vector<std::vector<Rational>> windows;
  std::optional<std::vector<Rational>> alpha_star;
  std::optional<std::vector<Rational>> alpha_alt;
  /// Ratio runs repeat the whole grid for this many independent base seeds.
  int families = 1;
  std::uint64_t seed = 1;
  std::string output_dir;  // empty: nothing written
  GraphSource generator = GraphSource::ecm;
  double ceiling = 1e9;
  unsigned threads = 0;

  /// Throws PreconditionError unless n_grid is nonempty and strictly
  /// increasing, replications >= 1, families >= 1, at least one motif.
  void validate() const;
};

/// Plain-text plan: `key = value` lines, `#` comments, comma-separated
/// lists. `motif` and `window` may repeat. Throws ParseError.
ExperimentPlan parse_plan(std::string_view text);
ExperimentPlan load_plan(const std::filesystem::path& path);

/// Round-trips through parse_plan.
std::string plan_text(const ExperimentPlan& plan);

/// A motif spec, or one of: triangle, claw, P4, C4, paw, diamond, K4,
/// star<r>, K<k>, C<k>, P<k>.
MotifGraph resolve_motif(std::string_view text);

/// Seed of cell (n_index, replication) under base.
std::uint64_t cell_seed(std::uint64_t base, std::size_t n_index, std::size_t replication);

struct GeneratedGraph {
  DegreeSequence degrees;
  SimpleGraph graph;
};

/// Degrees from derive_seed(seed, 0), edges from derive_seed(seed, 1).
GeneratedGraph generate_graph(std::int64_t n, const Tau& tau, GraphSource source, std::uint64_t seed);

/// Dispatches to the selected counter. labeled_embeddings is always filled.
CensusReport count_motif(const SimpleGraph& g, const MotifGraph& h, Mode mode, EngineChoice choice,
                         const CensusOptions& options = {});

/// Exponent of n in the windowed count at α: k + continuous_objective.
std::optional<Rational> window_exponent(const MotifGraph& h, std::span<const Rational> alpha, const Tau& tau,
                                        Mode mode);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_ = 0.0;
  std::size_t points = 0;
  std::vector<std::string> warnings;
};

/// OLS of log value on log n. Nonpositive values are dropped with a warning;
/// fewer than 3 distinct n left throws PreconditionError.
SlopeFit fit_log_slope(std::span<const std::pair<double, double>> points);

struct ScalingRow {
  std::string motif;  // canonical key, hex
  Mode mode = Mode::sub;
  std::int64_t n = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  Engine engine = Engine::generic;
  bool ok = true;  // false: the census hit the resource ceiling
  BigCount count;
  double predicted_exponent = 0.0;
  bool log_correction = false;
  double rescaled = 0.0;  // count / n^predicted_exponent
  std::vector<double> windowed_labeled;
  std::vector<double> windowed_rescaled;  // over n^window_exponent
  bool jn = false;
  std::int64_t erased_self_loops = 0;
  std::int64_t erased_multi_edges = 0;
  double elapsed = 0.0;
};

struct ScalingSummary {
  std::string motif;
  Mode mode = Mode::sub;
  ExponentForm exponent;
  double predicted_exponent = 0.0;
  bool log_correction = false;
  std::vector<std::int64_t> n;
  std::vector<double> mean_count;  // over ok cells
  std::vector<std::vector<double>> mean_windowed_rescaled;  // [window][n]
  std::optional<SlopeFit> fit;
  std::vector<std::string> warnings;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;  // (motif, mode, n, replication) order
  std::vector<ScalingSummary> summaries;
};

ScalingResult run_scaling_experiment(const ExperimentPlan& plan);

struct RatioPoint {
  std::int64_t n = 0;
  double numerator = 0.0;    // alt-window labeled count, summed over replications
  double denominator = 0.0;  // optimizer-window labeled count
  bool zero_denominator = false;
  double ratio = 0.0;
};

struct RatioFamily {
  std::uint64_t seed = 0;
  std::vector<RatioPoint> points;
  bool strictly_decreasing = false;
  double kendall_tau = 0.0;  // between n and ratio; −1 for a strictly decreasing sequence
};

struct RatioResult {
  std::string motif;
  std::vector<Rational> alpha_star;
  std::vector<Rational> alpha_alt;
  std::vector<RatioFamily> families;
  int decreasing_families = 0;
};

/// alpha_star must be the α of one of optimize(h)'s optimizers in the first
/// plan mode; alpha_alt must differ from it somewhere.
RatioResult run_ratio_experiment(const ExperimentPlan& plan, const MotifGraph& h,
                                 std::span<const Rational> alpha_star, std::span<const Rational> alpha_alt);

struct AtlasRow {
  MotifGraph graph;
  CanonicalKey key;
  Mode mode = Mode::sub;
  Tau tau{Rational(5, 2)};
  LinearInTauInv B_form;
  Rational B;
  ExponentForm exponent;
  bool unique = true;
  std::string optimizer;
  bool log_correction = false;
};

/// One row per connected class on k vertices, 3 <= k <= 5, atlas order.
std::vector<AtlasRow> emit_atlas_table(int k, const Tau& tau, Mode mode);

struct EnsembleStats {
  std::vector<double> counts;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double relative_variance = 0.0;  // variance / mean²
};

struct SelfAveragingReport {
  std::string motif;
  std::int64_t n = 0;
  Tau tau{Rational(5, 2)};
  int replications = 0;
  EnsembleStats iid;    // fresh degrees every replication
  EnsembleStats fixed;  // one degree sequence, re-paired
};

/// One report per n in the grid, for the first plan mode. Requires h in the
/// √n class and replications >= 2.
std::vector<SelfAveragingReport> self_averaging_probe(const ExperimentPlan& plan, const MotifGraph& h);

void write_atlas_csv(std::ostream& out, std::span<const AtlasRow> rows);
void write_scaling_csv(std::ostream& out, const ScalingResult& result);
void write_ratio_csv(std::ostream& out, const RatioResult& result);
void write_self_averaging_csv(std::ostream& out, std::span<const SelfAveragingReport> reports);
void write_census_csv(std::ostream& out, std::span<const CensusReport> reports);
void write_constant_csv(std::ostream& out, std::span<const ConstantEstimate> estimates);
std::string constant_json(const ConstantEstimate& estimate);

/// Runs plan.kind, writes <kind>.csv and manifest.json into plan.output_dir
/// when it is set, and prints a short summary to log.
void run_plan(const ExperimentPlan& plan, std::ostream& log);

}  // namespace sfmotif
