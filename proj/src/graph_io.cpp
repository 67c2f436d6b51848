#include "sfmotif/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "sfmotif/error.hpp"

namespace sfmotif {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

EdgeListHeader header_for(const SimpleGraph& g, const DegreeSequence& d) {
  EdgeListHeader h;
  h.n = g.n();
  h.tau = to_string(d.tau);
  h.seed = d.seed;
  h.source = std::string(to_string(g.source()));
  h.erased_self_loops = g.erased_self_loops();
  h.erased_multi_edges = g.erased_multi_edges();
  return h;
}

void write_edge_list(std::ostream& out, const SimpleGraph& g, const EdgeListHeader& header) {
  out << "# n = " << header.n << '\n';
  if (header.tau) out << "# tau = " << *header.tau << '\n';
  if (header.seed) out << "# seed = " << *header.seed << '\n';
  out << "# source = " << header.source << '\n';
  out << "# erased_self_loops = " << header.erased_self_loops << '\n';
  out << "# erased_multi_edges = " << header.erased_multi_edges << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

LoadedGraph read_edge_list(std::istream& in) {
  EdgeListHeader header;
  bool have_n = false;
  std::vector<std::pair<SimpleGraph::Vertex, SimpleGraph::Vertex>> edges;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      s.remove_prefix(1);
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) continue;  // free-form comment
      const auto key = trim(s.substr(0, eq));
      const auto value = trim(s.substr(eq + 1));
      if (key == "n") {
        header.n = parse_number<std::int64_t>(value, "n");
        have_n = true;
      } else if (key == "tau") {
        header.tau = std::string(value);
      } else if (key == "seed") {
        header.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "source") {
        header.source = std::string(value);
      } else if (key == "erased_self_loops") {
        header.erased_self_loops = parse_number<std::int64_t>(value, "erased_self_loops");
      } else if (key == "erased_multi_edges") {
        header.erased_multi_edges = parse_number<std::int64_t>(value, "erased_multi_edges");
      }
      continue;
    }
    if (!have_n) throw ParseError("edge list: edge before the '# n = ...' header");
    const auto space = s.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ParseError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    }
    const auto u = parse_number<std::int64_t>(s.substr(0, space), "vertex");
    const auto v = parse_number<std::int64_t>(s.substr(space + 1), "vertex");
    if (u < 0 || v >= header.n || u >= v) {
      throw ParseError("edge list line " + std::to_string(lineno) + ": need 0 <= u < v < n");
    }
    edges.emplace_back(static_cast<SimpleGraph::Vertex>(u), static_cast<SimpleGraph::Vertex>(v));
  }
  if (!have_n) throw ParseError("edge list: missing '# n = ...' header");
  const auto count = edges.size();
  auto g = SimpleGraph::from_edges(header.n, std::move(edges));
  if (static_cast<std::size_t>(g.edge_count()) != count) throw ParseError("edge list: duplicate edge");
  return {header, std::move(g)};
}

void write_degrees(std::ostream& out, const DegreeSequence& d) {
  for (auto x : d.degrees) out << x << '\n';
}

std::vector<std::int64_t> read_degrees(std::istream& in) {
  std::vector<std::int64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    out.push_back(parse_number<std::int64_t>(s, "degree"));
  }
  return out;
}

}  // namespace sfmotif
