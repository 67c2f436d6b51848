#include <charconv>
#include <fstream>
#include <sstream>

#include "sfmotif/error.hpp"
#include "sfmotif/experiment.hpp"

namespace sfmotif {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = value.find(',', pos);
    const auto item = trim(value.substr(pos, comma == std::string_view::npos ? value.npos : comma - pos));
    if (item.empty()) throw ParseError("empty list item in '" + std::string(value) + "'");
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T parse_integer(const std::string& key, std::string_view text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError("plan key '" + key + "': not an integer: '" + std::string(text) + "'");
  }
  return value;
}

// Integers may also be written as 1e5 or 3e4.
std::int64_t parse_count(const std::string& key, const std::string& text) {
  const auto e = text.find_first_of("eE");
  if (e == std::string::npos) return parse_integer<std::int64_t>(key, text);
  const auto mantissa = parse_integer<std::int64_t>(key, std::string_view(text).substr(0, e));
  const auto exponent = parse_integer<int>(key, std::string_view(text).substr(e + 1));
  if (exponent < 0 || exponent > 15) throw ParseError("plan key '" + key + "': bad exponent in '" + text + "'");
  std::int64_t value = mantissa;
  for (int i = 0; i < exponent; ++i) value *= 10;
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("plan key '" + key + "': not a boolean: '" + text + "'");
}

std::vector<Rational> parse_alpha(const std::string& value) {
  std::vector<Rational> alpha;
  for (const auto& item : split_list(value)) alpha.push_back(parse_rational(item));
  return alpha;
}

std::string alpha_text(const std::vector<Rational>& alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out += ", ";
    out += to_string(alpha[i]);
  }
  return out;
}

MotifGraph path(int k) {
  std::vector<MotifGraph::Edge> e;
  for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
  return MotifGraph::from_edges(k, e);
}

MotifGraph cycle(int k) {
  std::vector<MotifGraph::Edge> e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return MotifGraph::from_edges(k, e);
}

MotifGraph clique(int k) {
  std::vector<MotifGraph::Edge> e;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
  return MotifGraph::from_edges(k, e);
}

MotifGraph star(int r) {
  std::vector<MotifGraph::Edge> e;
  for (int i = 1; i <= r; ++i) e.emplace_back(0, i);
  return MotifGraph::from_edges(r + 1, e);
}

}  // namespace

EngineChoice parse_engine(std::string_view text) {
  if (text == "auto") return EngineChoice::automatic;
  if (text == "generic") return EngineChoice::generic;
  if (text == "clique") return EngineChoice::clique;
  if (text == "star") return EngineChoice::star;
  throw ParseError("unknown engine '" + std::string(text) + "'");
}

MotifGraph resolve_motif(std::string_view text) {
  const std::string name = trim(text);
  if (name == "triangle") return clique(3);
  if (name == "claw") return star(3);
  if (name == "paw") return MotifGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  if (name == "diamond") return MotifGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  if (name.size() >= 2 && (name[0] == 'K' || name[0] == 'C' || name[0] == 'P') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int k = parse_integer<int>("motif", std::string_view(name).substr(1));
    if (k < 3 || k > kMaxMotifVertices) throw ParseError("motif name out of range: " + name);
    return name[0] == 'K' ? clique(k) : name[0] == 'C' ? cycle(k) : path(k);
  }
  if (name.starts_with("star") && name.size() > 4) {
    const int r = parse_integer<int>("motif", std::string_view(name).substr(4));
    if (r < 2 || r + 1 > kMaxMotifVertices) throw ParseError("motif name out of range: " + name);
    return star(r);
  }
  return parse_motif(name);
}

void ExperimentPlan::validate() const {
  if (n_grid.empty()) throw PreconditionError("plan: n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw PreconditionError("plan: n_grid entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw PreconditionError("plan: n_grid must be strictly increasing");
  }
  if (replications < 1) throw PreconditionError("plan: replications must be >= 1");
  if (families < 1) throw PreconditionError("plan: families must be >= 1");
  if (motifs.empty()) throw PreconditionError("plan: no motif");
  if (modes.empty()) throw PreconditionError("plan: no mode");
  if (eps <= Rational(0) || eps >= Rational(1)) throw PreconditionError("plan: eps must lie in (0, 1)");
  for (const auto& w : windows) {
    for (const auto& m : motifs) {
      if (static_cast<int>(w.size()) != m.k()) throw PreconditionError("plan: window length differs from motif size");
    }
  }
  if (ceiling <= 0) throw PreconditionError("plan: ceiling must be positive");
}

ExperimentPlan parse_plan(std::string_view text) {
  ExperimentPlan plan;
  bool modes_set = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("plan line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.empty()) throw ParseError("plan line " + std::to_string(line_no) + ": empty value for " + key);

    if (key == "experiment") {
      if (value == "scaling") plan.kind = ExperimentKind::scaling;
      else if (value == "ratio") plan.kind = ExperimentKind::ratio;
      else if (value == "self_averaging") plan.kind = ExperimentKind::self_averaging;
      else throw ParseError("plan: unknown experiment '" + value + "'");
    } else if (key == "tau") {
      plan.tau = Tau::parse(value);
    } else if (key == "n_grid") {
      plan.n_grid.clear();
      for (const auto& item : split_list(value)) plan.n_grid.push_back(parse_count(key, item));
    } else if (key == "replications") {
      plan.replications = parse_integer<int>(key, value);
    } else if (key == "motif") {
      // The spec syntax itself contains commas, so one motif per line.
      plan.motifs.push_back(resolve_motif(value));
    } else if (key == "modes" || key == "mode") {
      if (!modes_set) plan.modes.clear();
      modes_set = true;
      for (const auto& item : split_list(value)) plan.modes.push_back(parse_mode(item));
    } else if (key == "engine") {
      plan.engine = parse_engine(value);
    } else if (key == "eps") {
      plan.eps = parse_rational(value);
    } else if (key == "window") {
      plan.windows.push_back(parse_alpha(value));
    } else if (key == "alpha_star") {
      plan.alpha_star = parse_alpha(value);
    } else if (key == "alpha_alt") {
      plan.alpha_alt = parse_alpha(value);
    } else if (key == "families") {
      plan.families = parse_integer<int>(key, value);
    } else if (key == "seed") {
      plan.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "output") {
      plan.output_dir = value;
    } else if (key == "generator") {
      if (value == "ecm") plan.generator = GraphSource::ecm;
      else if (value == "rank1") plan.generator = GraphSource::rank1;
      else throw ParseError("plan: unknown generator '" + value + "'");
    } else if (key == "rank1") {
      plan.generator = parse_bool(key, value) ? GraphSource::rank1 : GraphSource::ecm;
    } else if (key == "ceiling") {
      try {
        std::size_t used = 0;
        plan.ceiling = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::logic_error&) {
        throw ParseError("plan key 'ceiling': not a number: '" + value + "'");
      }
    } else if (key == "threads") {
      plan.threads = parse_integer<unsigned>(key, value);
    } else {
      throw ParseError("plan line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open plan file " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return parse_plan(body.str());
}

std::string plan_text(const ExperimentPlan& plan) {
  std::ostringstream out;
  out << "experiment = " << to_string(plan.kind) << '\n';
  out << "tau = " << to_string(plan.tau) << '\n';
  out << "n_grid = ";
  for (std::size_t i = 0; i < plan.n_grid.size(); ++i) out << (i ? ", " : "") << plan.n_grid[i];
  out << '\n';
  out << "replications = " << plan.replications << '\n';
  for (const auto& m : plan.motifs) out << "motif = " << m.to_spec() << '\n';
  out << "modes = ";
  for (std::size_t i = 0; i < plan.modes.size(); ++i) out << (i ? ", " : "") << to_string(plan.modes[i]);
  out << '\n';
  out << "engine = " << to_string(plan.engine) << '\n';
  out << "eps = " << to_string(plan.eps) << '\n';
  for (const auto& w : plan.windows) out << "window = " << alpha_text(w) << '\n';
  if (plan.alpha_star) out << "alpha_star = " << alpha_text(*plan.alpha_star) << '\n';
  if (plan.alpha_alt) out << "alpha_alt = " << alpha_text(*plan.alpha_alt) << '\n';
  out << "families = " << plan.families << '\n';
  out << "seed = " << plan.seed << '\n';
  if (!plan.output_dir.empty()) out << "output = " << plan.output_dir << '\n';
  out << "generator = " << to_string(plan.generator) << '\n';
  std::ostringstream ceiling;
  ceiling.precision(17);
  ceiling << plan.ceiling;
  out << "ceiling = " << ceiling.str() << '\n';
  out << "threads = " << plan.threads << '\n';
  return out.str();
}

}  // namespace sfmotif
