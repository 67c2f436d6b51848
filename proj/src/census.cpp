#include "sfmotif/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "sfmotif/error.hpp"

namespace sfmotif {

namespace {

using Clock = std::chrono::steady_clock;
using Vertex = SimpleGraph::Vertex;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned worker_count(const CensusOptions& options, std::int64_t roots) {
  unsigned t = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::int64_t>(roots, 1, t));
}

/// Runs body(worker, root) for roots 0..n-1, root r going to worker r mod t.
template <typename Body>
void for_each_root(std::int64_t n, unsigned workers, Body&& body) {
  if (workers <= 1) {
    for (std::int64_t r = 0; r < n; ++r) body(0U, r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t r = w; r < n; r += workers) body(w, r);
    });
  }
  for (auto& t : pool) t.join();
}

BigCount to_big(unsigned __int128 x) {
  BigCount out = static_cast<std::uint64_t>(x >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(x);
  return out;
}

BigCount choose(std::int64_t n, int r) {
  if (n < r) return 0;
  BigCount out = 1;
  for (int i = 0; i < r; ++i) {
    out *= n - i;
    out /= i + 1;  // exact: product of i+1 consecutive integers
  }
  return out;
}

void check_guard(double projected, const CensusOptions& options) {
  if (projected > options.ceiling) {
    throw ResourceLimitError("census: projected enumeration size " + std::to_string(projected) +
                             " exceeds the ceiling " + std::to_string(options.ceiling) +
                             "; use the closed-form star counter for hub-dominated motifs");
  }
}

// ESU enumeration of connected k-sets rooted at their smallest vertex.
class EsuWorker {
 public:
  EsuWorker(const SimpleGraph& g, const PatternClassifier& classifier)
      : g_(g), classifier_(classifier), k_(classifier.k()), mark_(g.n(), 0),
        counts_(classifier.classes().size(), 0) {}

  void run_root(Vertex v) {
    root_ = v;
    sub_.assign(1, v);
    touch(v, +1);
    std::vector<Vertex> ext;
    for (Vertex u : g_.neighbors(v)) {
      if (u > v) ext.push_back(u);
    }
    extend(ext);
    touch(v, -1);
  }

  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  void touch(Vertex w, int delta) {
    mark_[w] += delta;
    for (Vertex x : g_.neighbors(w)) mark_[x] += delta;
  }

  void extend(std::vector<Vertex> ext) {
    if (static_cast<int>(sub_.size()) == k_) {
      record();
      return;
    }
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g_.neighbors(w)) {
        if (u > root_ && mark_[u] == 0) next.push_back(u);
      }
      sub_.push_back(w);
      touch(w, +1);
      extend(std::move(next));
      touch(w, -1);
      sub_.pop_back();
    }
  }

  void record() {
    std::uint32_t pattern = 0;
    for (int i = 0; i < k_; ++i) {
      for (int j = i + 1; j < k_; ++j) {
        if (g_.has_edge(sub_[i], sub_[j])) pattern |= 1U << PatternClassifier::pair_bit(k_, i, j);
      }
    }
    ++counts_[classifier_.classify(pattern)];
  }

  const SimpleGraph& g_;
  const PatternClassifier& classifier_;
  int k_;
  Vertex root_ = 0;
  std::vector<Vertex> sub_;
  std::vector<std::int32_t> mark_;
  std::vector<std::uint64_t> counts_;
};

// Labeled-embedding search with per-position candidate filters.
class WindowedSearch {
 public:
  WindowedSearch(const SimpleGraph& g, const MotifGraph& h, std::vector<int> order,
                 const std::vector<std::vector<char>>& allowed, Mode mode)
      : g_(g), h_(h), order_(std::move(order)), allowed_(allowed), mode_(mode), image_(h.k(), 0) {
    anchor_.assign(h.k(), -1);
    for (int j = 1; j < h.k(); ++j) {
      for (int t = 0; t < j; ++t) {
        if (h.adjacent(order_[j], order_[t])) {
          anchor_[j] = t;
          break;
        }
      }
    }
  }

  unsigned __int128 from_root(Vertex v) {
    image_[0] = v;
    return extend(1);
  }

 private:
  unsigned __int128 extend(int j) {
    if (j == h_.k()) return 1;
    const int hv = order_[j];
    unsigned __int128 total = 0;
    for (Vertex c : g_.neighbors(image_[anchor_[j]])) {
      if (!allowed_[hv][c]) continue;
      bool ok = true;
      for (int t = 0; t < j && ok; ++t) {
        if (image_[t] == c) {
          ok = false;
        } else if (t != anchor_[j]) {
          const bool want = h_.adjacent(hv, order_[t]);
          if (want || mode_ == Mode::ind) ok = g_.has_edge(c, image_[t]) == want;
        }
      }
      if (!ok) continue;
      image_[j] = c;
      total += extend(j + 1);
    }
    return total;
  }

  const SimpleGraph& g_;
  const MotifGraph& h_;
  std::vector<int> order_;
  const std::vector<std::vector<char>>& allowed_;
  Mode mode_;
  std::vector<Vertex> image_;
  std::vector<int> anchor_;
};

std::vector<std::array<int, kMaxMotifVertices>> automorphisms(const MotifGraph& h) {
  std::array<int, kMaxMotifVertices> q{};
  std::iota(q.begin(), q.end(), 0);
  std::vector<std::array<int, kMaxMotifVertices>> out;
  do {
    bool ok = true;
    for (int u = 0; u < h.k() && ok; ++u) {
      for (int v = u + 1; v < h.k() && ok; ++v) ok = h.adjacent(u, v) == h.adjacent(q[u], q[v]);
    }
    if (ok) out.push_back(q);
  } while (std::next_permutation(q.begin(), q.begin() + h.k()));
  return out;
}

CensusReport report_from_census(const MotifGraph& h, Mode mode, const GraphletCensus& census) {
  CensusReport r;
  r.key = canonical_form(h);
  r.mode = mode;
  if (mode == Mode::ind) {
    for (std::size_t c = 0; c < census.classes.size(); ++c) {
      if (census.classes[c].key == r.key) r.count = census.induced[c];
    }
  } else {
    r.count = motif_from_graphlets(h, census.table());
  }
  r.labeled_embeddings = r.count * automorphism_count(h);
  return r;
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::generic: return "generic";
    case Engine::clique: return "clique";
    case Engine::star: return "star";
    case Engine::oracle: return "oracle";
  }
  return "?";
}

std::map<CanonicalKey, BigCount> GraphletCensus::table() const {
  std::map<CanonicalKey, BigCount> out;
  for (std::size_t c = 0; c < classes.size(); ++c) out.emplace(classes[c].key, induced[c]);
  return out;
}

double projected_enumeration_size(const SimpleGraph& g, int k) {
  double total = 0.0;
  for (std::int64_t v = 0; v < g.n(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    double c = 1.0;
    for (int i = 0; i < k - 1; ++i) c *= (d - i) / (i + 1);
    if (d >= k - 1) total += c;
  }
  return total;
}

GraphletCensus graphlet_census(const SimpleGraph& g, int k, const CensusOptions& options) {
  if (k < 3 || k > 5) throw PreconditionError("graphlet census: k must lie in [3,5]");
  check_guard(projected_enumeration_size(g, k), options);
  const PatternClassifier classifier(k);
  const unsigned workers = worker_count(options, g.n());
  std::vector<EsuWorker> state;
  for (unsigned w = 0; w < workers; ++w) state.emplace_back(g, classifier);
  for_each_root(g.n(), workers, [&](unsigned w, std::int64_t r) { state[w].run_root(static_cast<Vertex>(r)); });

  GraphletCensus out;
  out.k = k;
  out.classes = classifier.classes();
  out.induced.assign(out.classes.size(), 0);
  for (const auto& s : state) {
    for (std::size_t c = 0; c < out.classes.size(); ++c) out.induced[c] += s.counts()[c];
  }
  for (const auto& x : out.induced) out.connected_sets += x;
  return out;
}

CensusReport count_subgraph(const SimpleGraph& g, const MotifGraph& h, const CensusOptions& options) {
  const auto start = Clock::now();
  if (h.k() > 5) throw PreconditionError("generic census handles k <= 5");
  auto r = report_from_census(h, Mode::sub, graphlet_census(g, h.k(), options));
  r.elapsed = seconds_since(start);
  return r;
}

CensusReport count_induced(const SimpleGraph& g, const MotifGraph& h, const CensusOptions& options) {
  const auto start = Clock::now();
  if (h.k() > 5) throw PreconditionError("generic census handles k <= 5");
  auto r = report_from_census(h, Mode::ind, graphlet_census(g, h.k(), options));
  r.elapsed = seconds_since(start);
  return r;
}

CensusReport count_with_windows(const SimpleGraph& g, std::span<const std::int64_t> degrees,
                                const MotifGraph& h, std::span<const DegreeWindow> windows, Mode mode,
                                const CensusOptions& options) {
  const auto start = Clock::now();
  const int k = h.k();
  if (static_cast<int>(windows.size()) != k) throw PreconditionError("one degree window per motif vertex required");
  if (static_cast<std::int64_t>(degrees.size()) != g.n()) throw PreconditionError("degree list does not match graph");

  std::vector<std::vector<char>> allowed(k, std::vector<char>(g.n(), 0));
  std::vector<std::int64_t> members(k, 0);
  for (int j = 0; j < k; ++j) {
    for (std::int64_t v = 0; v < g.n(); ++v) {
      if (windows[j].contains(degrees[v])) {
        allowed[j][v] = 1;
        ++members[j];
      }
    }
  }

  // Root at the sparsest window, then grow in BFS order through H.
  std::vector<int> order{static_cast<int>(std::min_element(members.begin(), members.end()) - members.begin())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int v = 0; v < k; ++v) {
      if (h.adjacent(order[i], v) && std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    }
  }

  // The search only ever steps onto window members, so the guard counts a
  // root's neighbors that lie in some window rather than its full degree.
  std::vector<char> in_any(g.n(), 0);
  for (int j = 0; j < k; ++j) {
    for (std::int64_t v = 0; v < g.n(); ++v) in_any[v] |= allowed[j][v];
  }
  std::vector<Vertex> roots;
  double projected = 0.0;
  for (std::int64_t v = 0; v < g.n(); ++v) {
    if (!allowed[order[0]][v]) continue;
    roots.push_back(static_cast<Vertex>(v));
    double d = 0.0;
    for (Vertex u : g.neighbors(v)) d += in_any[u];
    projected += std::pow(d, k - 1);
  }
  check_guard(projected, options);

  const unsigned workers = worker_count(options, static_cast<std::int64_t>(roots.size()));
  std::vector<WindowedSearch> search;
  for (unsigned w = 0; w < workers; ++w) search.emplace_back(g, h, order, allowed, mode);
  std::vector<unsigned __int128> partial(workers, 0);
  for_each_root(static_cast<std::int64_t>(roots.size()), workers,
                [&](unsigned w, std::int64_t r) { partial[w] += search[w].from_root(roots[r]); });

  CensusReport report;
  report.key = canonical_form(h);
  report.mode = mode;
  report.windows = std::vector<DegreeWindow>(windows.begin(), windows.end());
  for (auto p : partial) report.labeled_embeddings += to_big(p);
  for (const auto& sigma : automorphisms(h)) {
    for (int i = 0; i < k; ++i) {
      const auto& a = windows[i];
      const auto& b = windows[sigma[i]];
      if (a.lo != b.lo || a.hi != b.hi) report.aut_normalized = false;
    }
  }
  report.count = report.labeled_embeddings / automorphism_count(h);
  report.engine = Engine::generic;
  report.elapsed = seconds_since(start);
  return report;
}

BigCount count_cliques(const SimpleGraph& g, int k) {
  if (k < 3 || k > 6) throw PreconditionError("count_cliques: k must lie in [3,6]");
  auto before = [&](std::int64_t a, std::int64_t b) {
    const auto da = g.degree(a);
    const auto db = g.degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<Vertex>> out(g.n());
  for (std::int64_t v = 0; v < g.n(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (before(v, u)) out[v].push_back(u);
    }
  }

  auto count = [&](auto&& self, const std::vector<Vertex>& cands, int depth) -> std::uint64_t {
    if (depth == 1) return cands.size();
    std::uint64_t total = 0;
    std::vector<Vertex> next;
    for (Vertex c : cands) {
      next.clear();
      std::set_intersection(cands.begin(), cands.end(), out[c].begin(), out[c].end(), std::back_inserter(next));
      if (static_cast<int>(next.size()) >= depth - 1) total += self(self, next, depth - 1);
    }
    return total;
  };
  BigCount total = 0;
  for (std::int64_t v = 0; v < g.n(); ++v) total += count(count, out[v], k - 1);
  return total;
}

BigCount count_star_subgraphs(const SimpleGraph& g, int r) {
  if (r < 2) throw PreconditionError("star counter: r must be at least 2");
  BigCount total = 0;
  for (std::int64_t v = 0; v < g.n(); ++v) total += choose(g.degree(v), r);
  return total;
}

BigCount count_star_subgraphs(const DegreeSequence& d, int r) {
  if (r < 2) throw PreconditionError("star counter: r must be at least 2");
  BigCount total = 0;
  for (auto x : d.degrees) total += choose(x, r);
  return total;
}

BigCount brute_force_census(const SimpleGraph& g, const MotifGraph& h, Mode mode) {
  if (g.n() > 15) throw PreconditionError("brute-force census: n must be at most 15");
  const int k = h.k();
  if (g.n() < k) return 0;
  std::array<std::uint16_t, 15> adj{};
  for (auto [u, v] : g.edges()) {
    adj[u] |= static_cast<std::uint16_t>(1U << v);
    adj[v] |= static_cast<std::uint16_t>(1U << u);
  }
  std::uint64_t embeddings = 0;
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    std::array<int, kMaxMotifVertices> perm{};
    std::iota(perm.begin(), perm.begin() + k, 0);
    do {
      bool ok = true;
      for (int u = 0; u < k && ok; ++u) {
        for (int v = u + 1; v < k && ok; ++v) {
          const bool present = (adj[subset[perm[u]]] >> subset[perm[v]]) & 1U;
          if (h.adjacent(u, v)) {
            ok = present;
          } else if (mode == Mode::ind) {
            ok = !present;
          }
        }
      }
      if (ok) ++embeddings;
    } while (std::next_permutation(perm.begin(), perm.begin() + k));
    // next k-subset in lexicographic order
    int i = k - 1;
    while (i >= 0 && subset[i] == g.n() - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return BigCount(embeddings / automorphism_count(h));
}

BigCount motif_from_graphlets(const MotifGraph& h, const std::map<CanonicalKey, BigCount>& graphlet_counts) {
  BigCount total = 0;
  for (const auto& entry : enumerate_connected_graphs(h.k())) {
    const auto it = graphlet_counts.find(entry.key);
    if (it == graphlet_counts.end()) {
      throw PreconditionError("motif_from_graphlets: missing class " + entry.graph.to_spec());
    }
    const auto c = count_copies_in(h, entry.graph);
    if (c != 0) total += it->second * c;
  }
  return total;
}

}  // namespace sfmotif
