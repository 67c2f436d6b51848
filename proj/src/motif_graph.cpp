#include "sfmotif/motif_graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include "sfmotif/error.hpp"

namespace sfmotif {

namespace {

std::string strip_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("motif spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

std::uint32_t relabeled_code(const MotifGraph& g, const std::array<int, kMaxMotifVertices>& q) {
  std::uint32_t code = 0;
  const int k = g.k();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      code = (code << 1) | (g.adjacent(q[i], q[j]) ? 1U : 0U);
    }
  }
  return code;
}

std::array<int, kMaxMotifVertices> identity_perm() {
  std::array<int, kMaxMotifVertices> q{};
  std::iota(q.begin(), q.end(), 0);
  return q;
}

// Counts injective edge-preserving maps by extending a partial map one h
// vertex at a time.
std::uint64_t extend_embedding(const MotifGraph& h, const MotifGraph& g, int depth,
                               std::array<int, kMaxMotifVertices>& image, unsigned used) {
  if (depth == h.k()) return 1;
  std::uint64_t total = 0;
  for (int v = 0; v < g.k(); ++v) {
    if ((used >> v) & 1U) continue;
    bool ok = true;
    for (int u = 0; u < depth && ok; ++u) {
      if (h.adjacent(depth, u) && !g.adjacent(v, image[u])) ok = false;
    }
    if (!ok) continue;
    image[depth] = v;
    total += extend_embedding(h, g, depth + 1, image, used | (1U << v));
  }
  return total;
}

}  // namespace

std::string CanonicalKey::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (auto b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

MotifGraph MotifGraph::from_edges(int k, const std::vector<Edge>& edges) {
  if (k < kMinMotifVertices || k > kMaxMotifVertices) {
    throw ParseError("motif spec: k=" + std::to_string(k) + " outside [3,8]");
  }
  MotifGraph g;
  g.k_ = k;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= k || b >= k) {
      throw ParseError("motif spec: vertex id out of range in edge " + std::to_string(a) + "-" +
                       std::to_string(b));
    }
    if (a == b) throw ParseError("motif spec: self-loop at vertex " + std::to_string(a));
    if (g.adjacent(a, b)) {
      throw ParseError("motif spec: duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    g.rows_[a] |= static_cast<VertexMask>(1U << b);
    g.rows_[b] |= static_cast<VertexMask>(1U << a);
  }
  g.finish();
  if (!g.connected()) throw DisconnectedError("motif spec: graph is disconnected");
  return g;
}

MotifGraph MotifGraph::from_rows_unchecked(int k, const std::array<VertexMask, kMaxMotifVertices>& rows) {
  MotifGraph g;
  g.k_ = k;
  g.rows_ = rows;
  g.finish();
  return g;
}

void MotifGraph::finish() {
  edge_count_ = 0;
  degree_one_ = 0;
  for (int v = 0; v < k_; ++v) {
    const int d = std::popcount(static_cast<unsigned>(rows_[v]));
    edge_count_ += d;
    if (d == 1) degree_one_ |= static_cast<VertexMask>(1U << v);
  }
  edge_count_ /= 2;
}

int MotifGraph::degree(int v) const { return std::popcount(static_cast<unsigned>(rows_[v])); }

int MotifGraph::k1() const { return std::popcount(static_cast<unsigned>(degree_one_)); }

int MotifGraph::min_degree() const {
  int m = k_;
  for (int v = 0; v < k_; ++v) m = std::min(m, degree(v));
  return m;
}

bool MotifGraph::connected() const {
  if (k_ == 0) return true;
  unsigned seen = 1U;
  unsigned frontier = 1U;
  while (frontier != 0) {
    unsigned next = 0;
    for (int v = 0; v < k_; ++v) {
      if ((frontier >> v) & 1U) next |= rows_[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1U << k_) - 1U;
}

std::vector<MotifGraph::Edge> MotifGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < k_; ++u) {
    for (int v = u + 1; v < k_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string MotifGraph::to_spec() const {
  std::ostringstream os;
  os << "k=" << k_ << "; edges=";
  bool first = true;
  for (auto [a, b] : edges()) {
    if (!first) os << ',';
    os << a << '-' << b;
    first = false;
  }
  return os.str();
}

MotifGraph MotifGraph::relabeled(const std::array<int, kMaxMotifVertices>& perm) const {
  std::array<VertexMask, kMaxMotifVertices> rows{};
  for (int u = 0; u < k_; ++u) {
    for (int v = 0; v < k_; ++v) {
      if (adjacent(u, v)) rows[perm[u]] |= static_cast<VertexMask>(1U << perm[v]);
    }
  }
  return from_rows_unchecked(k_, rows);
}

MotifGraph parse_motif(std::string_view spec) {
  const std::string s = strip_whitespace(spec);
  std::optional<int> k;
  std::optional<std::string> edge_text;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(';', pos);
    if (end == std::string::npos) end = s.size();
    std::string_view field(s.data() + pos, end - pos);
    pos = end + 1;
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("motif spec: expected key=value, got '" + std::string(field) + "'");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "k") {
      if (k) throw ParseError("motif spec: k given twice");
      k = parse_int(value, "vertex count");
    } else if (key == "edges") {
      if (edge_text) throw ParseError("motif spec: edges given twice");
      edge_text = std::string(value);
    } else {
      throw ParseError("motif spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (!k) throw ParseError("motif spec: missing k");
  if (!edge_text) throw ParseError("motif spec: missing edges");

  std::vector<MotifGraph::Edge> edges;
  std::string_view rest(*edge_text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) throw ParseError("motif spec: bad edge '" + std::string(item) + "'");
    edges.emplace_back(parse_int(item.substr(0, dash), "vertex id"), parse_int(item.substr(dash + 1), "vertex id"));
  }
  return MotifGraph::from_edges(*k, edges);
}

std::vector<MotifGraph> parse_motif_list(std::string_view text) {
  std::vector<MotifGraph> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = strip_whitespace(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_motif(line));
  }
  return out;
}

CanonicalKey canonical_form(const MotifGraph& g) {
  auto q = identity_perm();
  std::uint32_t best = 0;
  do {
    best = std::max(best, relabeled_code(g, q));
  } while (std::next_permutation(q.begin(), q.begin() + g.k()));
  return CanonicalKey({static_cast<std::uint8_t>(g.k()), static_cast<std::uint8_t>(best >> 24),
                       static_cast<std::uint8_t>(best >> 16), static_cast<std::uint8_t>(best >> 8),
                       static_cast<std::uint8_t>(best)});
}

std::uint64_t automorphism_count(const MotifGraph& g) {
  auto q = identity_perm();
  const std::uint32_t own = relabeled_code(g, q);
  std::uint64_t count = 0;
  do {
    if (relabeled_code(g, q) == own) ++count;
  } while (std::next_permutation(q.begin(), q.begin() + g.k()));
  return count;
}

std::uint64_t count_embeddings(const MotifGraph& h, const MotifGraph& g) {
  if (h.k() > g.k()) return 0;
  std::array<int, kMaxMotifVertices> image{};
  return extend_embedding(h, g, 0, image, 0U);
}

std::uint64_t count_copies_in(const MotifGraph& h, const MotifGraph& g) {
  if (h.k() > g.k()) throw PreconditionError("count_copies_in: h has more vertices than g");
  return count_embeddings(h, g) / automorphism_count(h);
}

}  // namespace sfmotif
