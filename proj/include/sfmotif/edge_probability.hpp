#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfmotif/synthesis.hpp"

namespace sfmotif {

/// One bin of x = D_i D_j / L_n.
struct EdgeProbabilityBin {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::int64_t pairs = 0;           // vertex pairs i < j with x in the bin
  std::int64_t observed_edges = 0;  // summed over the ensemble
  std::int64_t graphs = 0;
  double observed = 0.0;   // observed_edges / (pairs · graphs)
  double predicted = 0.0;  // mean of 1 − exp(−x) over the bin's pairs
  double stderr_ = 0.0;    // sqrt(predicted (1 − predicted) / (pairs · graphs))

  /// |observed − predicted| <= z · stderr.
  bool within(double z) const;
};

/// Bins are [edges[b], edges[b+1]); pairs outside every bin are ignored.
/// Only bins holding at least one vertex pair are returned.
std::vector<EdgeProbabilityBin> empirical_edge_probability(const DegreeSequence& d,
                                                           std::span<const SimpleGraph> graphs,
                                                           std::span<const double> bin_edges);

/// per_decade log-spaced edges covering [lo, hi].
std::vector<double> log_spaced_edges(double lo, double hi, int per_decade);

}  // namespace sfmotif
