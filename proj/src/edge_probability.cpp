#include "sfmotif/edge_probability.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sfmotif/error.hpp"

namespace sfmotif {

bool EdgeProbabilityBin::within(double z) const {
  return std::abs(observed - predicted) <= z * stderr_;
}

std::vector<double> log_spaced_edges(double lo, double hi, int per_decade) {
  if (!(lo > 0 && hi > lo) || per_decade < 1) throw PreconditionError("log_spaced_edges: bad range");
  const double step = 1.0 / per_decade;
  const double first = std::floor(std::log10(lo) * per_decade) / per_decade;
  std::vector<double> out;
  for (double e = first;; e += step) {
    out.push_back(std::pow(10.0, e));
    if (out.back() > hi) break;
  }
  return out;
}

std::vector<EdgeProbabilityBin> empirical_edge_probability(const DegreeSequence& d,
                                                           std::span<const SimpleGraph> graphs,
                                                           std::span<const double> bin_edges) {
  if (bin_edges.size() < 2) throw PreconditionError("edge probability: need at least one bin");
  const double L = static_cast<double>(d.total);
  const auto nbins = bin_edges.size() - 1;
  auto bin_of = [&](double x) -> std::ptrdiff_t {
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), x);
    const auto b = (it - bin_edges.begin()) - 1;
    return (b < 0 || b >= static_cast<std::ptrdiff_t>(nbins)) ? -1 : b;
  };

  std::vector<EdgeProbabilityBin> bins(nbins);
  std::vector<double> predicted_sum(nbins, 0.0);
  for (std::size_t b = 0; b < nbins; ++b) {
    bins[b].x_lo = bin_edges[b];
    bins[b].x_hi = bin_edges[b + 1];
    bins[b].graphs = static_cast<std::int64_t>(graphs.size());
  }

  // Pairs are counted per pair of degree values, not per vertex pair.
  std::map<std::int64_t, std::int64_t> multiplicity;
  for (auto x : d.degrees) ++multiplicity[x];
  for (auto a = multiplicity.begin(); a != multiplicity.end(); ++a) {
    for (auto b = a; b != multiplicity.end(); ++b) {
      const double x = static_cast<double>(a->first) * static_cast<double>(b->first) / L;
      const auto bin = bin_of(x);
      if (bin < 0) continue;
      const std::int64_t pairs =
          a == b ? a->second * (a->second - 1) / 2 : a->second * b->second;
      bins[bin].pairs += pairs;
      predicted_sum[bin] += static_cast<double>(pairs) * -std::expm1(-x);
    }
  }

  for (const auto& g : graphs) {
    if (g.n() != d.n) throw PreconditionError("edge probability: graph does not match degree sequence");
    for (auto [u, v] : g.edges()) {
      const auto bin = bin_of(static_cast<double>(d.degrees[u]) * static_cast<double>(d.degrees[v]) / L);
      if (bin >= 0) ++bins[bin].observed_edges;
    }
  }

  std::vector<EdgeProbabilityBin> out;
  for (std::size_t b = 0; b < nbins; ++b) {
    auto& bin = bins[b];
    if (bin.pairs == 0) continue;
    const double trials = static_cast<double>(bin.pairs) * static_cast<double>(bin.graphs);
    bin.predicted = predicted_sum[b] / static_cast<double>(bin.pairs);
    bin.observed = trials > 0 ? static_cast<double>(bin.observed_edges) / trials : 0.0;
    bin.stderr_ = trials > 0 ? std::sqrt(bin.predicted * (1.0 - bin.predicted) / trials) : 0.0;
    out.push_back(bin);
  }
  return out;
}

}  // namespace sfmotif
