#include "sfmotif/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfmotif/error.hpp"
#include "sfmotif/rng.hpp"

namespace sfmotif {

std::string_view to_string(GraphSource source) {
  switch (source) {
    case GraphSource::ecm: return "ecm";
    case GraphSource::rank1: return "rank1";
    case GraphSource::given: return "given";
  }
  return "?";
}

SimpleGraph SimpleGraph::from_edges(std::int64_t n, std::vector<std::pair<Vertex, Vertex>> edges,
                                    GraphSource source) {
  SimpleGraph g;
  g.n_ = n;
  g.source_ = source;
  std::vector<std::pair<Vertex, Vertex>> kept;
  kept.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw PreconditionError("edge endpoint out of range");
    if (u == v) {
      ++g.self_loops_;
      continue;
    }
    kept.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(kept.begin(), kept.end());
  const auto before = static_cast<std::int64_t>(kept.size());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  g.multi_edges_ = before - static_cast<std::int64_t>(kept.size());

  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : kept) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.resize(2 * kept.size());
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // kept is sorted by (u, v): every list receives its smaller neighbors
  // first, in order, then its larger ones, so the lists come out sorted.
  for (auto [u, v] : kept) {
    g.neighbors_[fill[u]++] = v;
    g.neighbors_[fill[v]++] = u;
  }
  return g;
}

bool SimpleGraph::has_edge(std::int64_t u, std::int64_t v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<Vertex>(v));
}

std::vector<std::pair<SimpleGraph::Vertex, SimpleGraph::Vertex>> SimpleGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (std::int64_t u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (v > u) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

SimpleGraph pair_half_edges(const DegreeSequence& d, std::uint64_t seed) {
  if (d.total % 2 != 0) throw PreconditionError("pair_half_edges: L_n must be even");
  if (d.total > kMaxHalfEdges) throw ResourceLimitError("pair_half_edges: too many half-edges");
  std::vector<SimpleGraph::Vertex> half(static_cast<std::size_t>(d.total));
  std::size_t pos = 0;
  for (std::int64_t v = 0; v < d.n; ++v) {
    for (std::int64_t j = 0; j < d.degrees[v]; ++j) half[pos++] = static_cast<SimpleGraph::Vertex>(v);
  }
  Rng rng(seed);
  for (std::size_t i = half.size(); i > 1; --i) {
    std::swap(half[i - 1], half[uniform_below(rng, i)]);
  }
  std::vector<std::pair<SimpleGraph::Vertex, SimpleGraph::Vertex>> pairs(half.size() / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] = {half[2 * i], half[2 * i + 1]};
  return SimpleGraph::from_edges(d.n, std::move(pairs), GraphSource::ecm);
}

SimpleGraph generate_rank1(const DegreeSequence& d, std::uint64_t seed) {
  const double mun = degree_mean(d.tau) * static_cast<double>(d.n);
  std::vector<std::int64_t> order(d.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return d.degrees[a] > d.degrees[b]; });
  auto prob = [&](std::int64_t a, std::int64_t b) {
    return -std::expm1(-static_cast<double>(d.degrees[a]) * static_cast<double>(d.degrees[b]) / mun);
  };

  // Weights are non-increasing along order, so for fixed u the probability
  // only decreases; skip ahead geometrically with the current bound p and
  // accept the landing pair with probability q/p.
  Rng rng(seed);
  std::vector<std::pair<SimpleGraph::Vertex, SimpleGraph::Vertex>> edges;
  for (std::int64_t i = 0; i + 1 < d.n; ++i) {
    const auto u = order[i];
    std::int64_t j = i + 1;
    double p = prob(u, order[j]);
    while (j < d.n && p > 0.0) {
      if (p < 1.0) {
        const double skip = std::floor(std::log(uniform_open(rng)) / std::log1p(-p));
        if (skip >= static_cast<double>(d.n - j)) break;
        j += static_cast<std::int64_t>(skip);
      }
      const double q = prob(u, order[j]);
      if (uniform_open(rng) < q / p) {
        edges.emplace_back(static_cast<SimpleGraph::Vertex>(u), static_cast<SimpleGraph::Vertex>(order[j]));
      }
      p = q;
      ++j;
    }
  }
  return SimpleGraph::from_edges(d.n, std::move(edges), GraphSource::rank1);
}

}  // namespace sfmotif
