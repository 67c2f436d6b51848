#include "sfmotif/optimizer.hpp"

#include <algorithm>
#include <numeric>

#include "sfmotif/error.hpp"

namespace sfmotif {

Mode parse_mode(std::string_view text) {
  if (text == "sub") return Mode::sub;
  if (text == "ind") return Mode::ind;
  throw ParseError("mode must be 'sub' or 'ind', got '" + std::string(text) + "'");
}

std::string_view to_string(Mode mode) { return mode == Mode::sub ? "sub" : "ind"; }

std::string_view to_string(Part part) {
  switch (part) {
    case Part::V1: return "V1";
    case Part::S1: return "S1";
    case Part::S2: return "S2";
    case Part::S3: return "S3";
  }
  return "?";
}

StructurePartition::StructurePartition(const MotifGraph& h, const std::vector<Part>& parts)
    : k_(h.k()) {
  if (static_cast<int>(parts.size()) != k_) throw PreconditionError("partition size does not match motif");
  for (int v = 0; v < k_; ++v) {
    if ((parts[v] == Part::V1) != h.is_degree_one(v)) {
      throw PreconditionError("partition: V1 must be exactly the degree-one vertices");
    }
    parts_[v] = parts[v];
  }
}

PartitionTallies StructurePartition::tallies(const MotifGraph& h) const {
  PartitionTallies t;
  for (int v = 0; v < k_; ++v) {
    if (parts_[v] == Part::S1) ++t.s1;
    if (parts_[v] == Part::S2) ++t.s2;
    if (parts_[v] == Part::S3) ++t.s3;
  }
  for (auto [u, v] : h.edges()) {
    Part a = parts_[u];
    Part b = parts_[v];
    if (a > b) std::swap(a, b);
    if (a == Part::S1 && b == Part::S1) ++t.e_s1;
    if (a == Part::S1 && b == Part::S3) ++t.e_s1_s3;
    if (a == Part::V1 && b == Part::S1) ++t.e_s1_1;
    if (a == Part::V1 && b == Part::S2) ++t.e_s2_1;
    if (a == Part::V1 && b == Part::S3) ++t.e_s3_1;
  }
  return t;
}

std::string StructurePartition::text() const {
  std::string out;
  for (int v = 0; v < k_; ++v) {
    if (v) out += ',';
    out += to_string(parts_[v]);
  }
  return out;
}

LinearInTauInv partition_value(const MotifGraph& h, const StructurePartition& p) {
  const auto t = p.tallies(h);
  return {Rational(t.s1 - t.s2), Rational(-(2 * t.e_s1 + t.e_s1_s3 + t.e_s1_1 - t.e_s2_1))};
}

bool satisfies_graphlet_constraint(const MotifGraph& h, const StructurePartition& p) {
  for (int u = 0; u < h.k(); ++u) {
    if (p[u] != Part::S2) continue;
    for (int v = 0; v < h.k(); ++v) {
      if (v == u || (p[v] != Part::S2 && p[v] != Part::S3)) continue;
      if (!h.adjacent(u, v)) return false;
    }
  }
  return true;
}

std::optional<LinearInTauInv> partition_objective(const MotifGraph& h, const StructurePartition& p,
                                                  Mode mode) {
  if (mode == Mode::ind && !satisfies_graphlet_constraint(h, p)) return std::nullopt;
  return partition_value(h, p);
}

Rational alpha_value(AlphaLevel level, const Tau& tau) {
  switch (level) {
    case AlphaLevel::zero: return Rational(0);
    case AlphaLevel::low: return tau.low_level();
    case AlphaLevel::half: return Rational(1, 2);
    case AlphaLevel::high: return tau.high_level();
  }
  return Rational(0);
}

AlphaLevel alpha_level(Part part) {
  switch (part) {
    case Part::V1: return AlphaLevel::zero;
    case Part::S1: return AlphaLevel::low;
    case Part::S2: return AlphaLevel::high;
    case Part::S3: return AlphaLevel::half;
  }
  return AlphaLevel::zero;
}

bool OptimizationOutcome::sqrt_class() const {
  if (!unique) return false;
  const auto& p = optimizer();
  for (int v = 0; v < p.k(); ++v) {
    if (p[v] != Part::S3) return false;
  }
  return true;
}

ExponentForm scaling_exponent(const MotifGraph& h, const LinearInTauInv& B, const Tau& /*tau*/) {
  // (3−τ)/2·(K + a + b/(τ−1)) + k1/2 with (3−τ)/(τ−1) = 2/(τ−1) − 1.
  const Rational K = Rational(h.k2plus()) + B.a;
  return {Rational(3, 2) * K - B.b / 2 + Rational(h.k1(), 2), -K / 2, B.b};
}

OptimizationOutcome optimize(const MotifGraph& h, const Tau& tau, Mode mode) {
  std::vector<int> free_vertices;
  for (int v = 0; v < h.k(); ++v) {
    if (!h.is_degree_one(v)) free_vertices.push_back(v);
  }
  std::vector<Part> parts(h.k(), Part::V1);
  std::vector<int> digits(free_vertices.size(), 0);

  std::optional<Rational> best;
  std::vector<std::pair<StructurePartition, LinearInTauInv>> winners;
  for (;;) {
    for (std::size_t i = 0; i < free_vertices.size(); ++i) {
      parts[free_vertices[i]] = static_cast<Part>(digits[i] + 1);
    }
    StructurePartition p(h, parts);
    if (auto obj = partition_objective(h, p, mode)) {
      const Rational value = obj->at(tau);
      if (!best || value > *best) {
        best = value;
        winners.clear();
      }
      if (value == *best) winners.emplace_back(p, *obj);
    }
    // base-3 increment, last free vertex least significant
    std::size_t i = digits.size();
    while (i > 0 && digits[i - 1] == 2) digits[--i] = 0;
    if (i == 0) break;
    ++digits[i - 1];
  }

  std::sort(winners.begin(), winners.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<StructurePartition> optimizers;
  for (auto& w : winners) optimizers.push_back(w.first);
  const StructurePartition& first = winners.front().first;

  std::vector<AlphaLevel> levels;
  std::vector<Rational> alpha;
  for (int v = 0; v < h.k(); ++v) {
    levels.push_back(alpha_level(first[v]));
    alpha.push_back(alpha_value(levels.back(), tau));
  }
  const LinearInTauInv form = winners.front().second;
  const bool unique = optimizers.size() == 1;
  return OptimizationOutcome{mode,   tau,    form, *best, std::move(optimizers), unique,
                             levels, alpha, scaling_exponent(h, form, tau), !unique};
}

std::optional<Rational> continuous_objective(const MotifGraph& h, std::span<const Rational> alpha,
                                             const Tau& tau, Mode mode) {
  if (static_cast<int>(alpha.size()) != h.k()) throw PreconditionError("alpha size does not match motif");
  const Rational hi = tau.high_level();
  Rational sum(0);
  for (const auto& a : alpha) {
    if (a < 0 || a > hi) throw PreconditionError("alpha outside [0, 1/(tau-1)]");
    sum += a;
  }
  Rational value = (1 - tau.value()) * sum;
  for (int u = 0; u < h.k(); ++u) {
    for (int v = u + 1; v < h.k(); ++v) {
      const Rational s = alpha[u] + alpha[v];
      if (h.adjacent(u, v)) {
        if (s < 1) value += s - 1;
      } else if (mode == Mode::ind && s > 1) {
        return std::nullopt;
      }
    }
  }
  return value;
}

Rational continuous_value_from_partition(const MotifGraph& h, const Rational& B, const Tau& tau) {
  const Rational t = tau.value();
  return (1 - t) * Rational(h.k(), 2) + (3 - t) / 2 * B + (t - 2) / 2 * Rational(h.k1());
}

GridOracleResult grid_oracle_max(const MotifGraph& h, const Tau& tau, const Rational& step, Mode mode) {
  const int k = h.k();
  if (k > 5) throw ResourceLimitError("grid oracle: k must be at most 5");
  if (step <= 0) throw PreconditionError("grid oracle: step must be positive");
  const Rational hi = tau.high_level();
  const std::int64_t multiples = boost::rational_cast<std::int64_t>(hi / step) + 1;
  if (multiples > 41) throw ResourceLimitError("grid oracle: more than 41 grid values per axis");

  std::vector<Rational> values;
  for (std::int64_t m = 0; m < multiples; ++m) values.push_back(step * m);
  for (auto lvl : {AlphaLevel::zero, AlphaLevel::low, AlphaLevel::half, AlphaLevel::high}) {
    values.push_back(alpha_value(lvl, tau));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Scale everything to integers: α = A/D, τ = p/q; objective·D·q is integral.
  std::int64_t D = 1;
  for (const auto& v : values) D = std::lcm(D, v.denominator());
  const std::int64_t p = tau.value().numerator();
  const std::int64_t q = tau.value().denominator();
  std::vector<std::int64_t> scaled;
  for (const auto& v : values) scaled.push_back(v.numerator() * (D / v.denominator()));

  const auto edges = h.edges();
  std::vector<MotifGraph::Edge> non_edges;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (!h.adjacent(u, v)) non_edges.emplace_back(u, v);

  const std::size_t G = values.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<std::int64_t> A(k, 0);
  std::optional<std::int64_t> best;
  std::vector<std::vector<std::size_t>> best_points;
  for (;;) {
    for (int i = 0; i < k; ++i) A[i] = scaled[idx[i]];
    bool feasible = true;
    if (mode == Mode::ind) {
      for (auto [u, v] : non_edges) {
        if (A[u] + A[v] > D) {
          feasible = false;
          break;
        }
      }
    }
    if (feasible) {
      std::int64_t sum = 0;
      for (int i = 0; i < k; ++i) sum += A[i];
      std::int64_t edge_part = 0;
      for (auto [u, v] : edges) {
        const std::int64_t s = A[u] + A[v];
        if (s < D) edge_part += s - D;
      }
      const std::int64_t value = (q - p) * sum + q * edge_part;
      if (!best || value > *best) {
        best = value;
        best_points.clear();
      }
      if (value == *best) best_points.emplace_back(idx.begin(), idx.end());
    }
    int i = k - 1;
    while (i >= 0 && idx[i] + 1 == G) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }

  GridOracleResult out;
  out.values_per_axis = G;
  out.value = Rational(*best, D * q);
  for (const auto& pt : best_points) {
    std::vector<Rational> alpha;
    for (auto j : pt) alpha.push_back(values[j]);
    out.argmax.push_back(std::move(alpha));
  }
  return out;
}

}  // namespace sfmotif
