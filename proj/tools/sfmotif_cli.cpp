#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfmotif/census.hpp"
#include "sfmotif/constants.hpp"
#include "sfmotif/error.hpp"
#include "sfmotif/experiment.hpp"
#include "sfmotif/graph_io.hpp"
#include "sfmotif/optimizer.hpp"
#include "sfmotif/synthesis.hpp"

using namespace sfmotif;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

// "v:lo:hi" with lo/hi as decimal degrees; hi may be "inf".
std::pair<int, DegreeWindow> parse_window(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ParseError("window must look like v:lo:hi, got '" + text + "'");
  try {
    const int v = std::stoi(text.substr(0, a));
    DegreeWindow w;
    w.lo = std::stod(text.substr(a + 1, b - a - 1));
    const std::string hi = text.substr(b + 1);
    w.hi = hi == "inf" ? std::numeric_limits<double>::infinity() : std::stod(hi);
    return {v, w};
  } catch (const std::logic_error&) {
    throw ParseError("window must look like v:lo:hi, got '" + text + "'");
  }
}

void print_outcome(const MotifGraph& h, const OptimizationOutcome& o) {
  std::cout << "motif: " << h.to_spec() << '\n'
            << "canonical_key: " << canonical_form(h).hex() << '\n'
            << "mode: " << to_string(o.mode) << '\n'
            << "tau: " << to_string(o.tau) << '\n'
            << "B: " << o.B_form.text() << " = " << to_string(o.B) << '\n'
            << "exponent: " << o.exponent.text() << " = " << to_string(o.exponent.at(o.tau)) << '\n'
            << "unique: " << (o.unique ? "true" : "false") << '\n'
            << "log_correction_possible: " << (o.log_correction_possible ? "true" : "false") << '\n';
  for (const auto& p : o.optimizers) std::cout << "optimizer: " << p.text() << '\n';
  std::cout << "alpha:";
  for (const auto& a : o.alpha) std::cout << ' ' << to_string(a);
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motif and graphlet scaling in erased configuration models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string tau_text = "5/2";
  std::string mode_text = "sub";
  std::string motif_text;

  auto* atlas = app.add_subcommand("atlas", "Optimizer table for every connected graph on k vertices");
  int atlas_k = 4;
  atlas->add_option("--k", atlas_k, "Motif size (3..5)")->required();
  atlas->add_option("--tau", tau_text, "Degree exponent p/q in (2,3)")->required();
  atlas->add_option("--mode", mode_text, "sub or ind")->required();

  auto* opt = app.add_subcommand("optimize", "Optimal vertex partition and scaling exponent");
  opt->add_option("--motif", motif_text, "Motif spec or name")->required();
  opt->add_option("--tau", tau_text, "Degree exponent p/q")->required();
  opt->add_option("--mode", mode_text, "sub or ind")->required();

  auto* gen = app.add_subcommand("generate", "Sample an erased configuration model graph");
  std::int64_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  bool gen_rank1 = false;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--tau", tau_text, "Degree exponent p/q")->required();
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_flag("--rank1", gen_rank1, "Rank-1 inhomogeneous random graph instead of the ECM");
  gen->add_option("--out", gen_out, "Edge-list path; degrees go to <out>.degrees")->required();

  auto* census = app.add_subcommand("census", "Count a motif in an edge-list graph");
  std::string census_graph, census_degrees, census_engine = "auto";
  std::vector<std::string> census_windows;
  double census_ceiling = 1e9;
  unsigned census_threads = 0;
  census->add_option("--graph", census_graph, "Edge-list path")->required();
  census->add_option("--motif", motif_text, "Motif spec or name")->required();
  census->add_option("--mode", mode_text, "sub or ind")->required();
  census->add_option("--window", census_windows, "Degree window v:lo:hi for motif vertex v (repeatable)");
  census->add_option("--degrees", census_degrees, "Original degrees for windows (default <graph>.degrees)");
  census->add_option("--engine", census_engine, "auto, generic, clique or star");
  census->add_option("--ceiling", census_ceiling, "Refuse enumerations projected above this size");
  census->add_option("--threads", census_threads, "Worker threads (0: all cores)");

  auto* constant = app.add_subcommand("constant", "Monte Carlo estimate of the limiting constant A");
  std::uint64_t samples = 1'000'000, const_seed = 1;
  std::string eps_text;
  unsigned workers = 1;
  bool as_json = false, no_prefactor = false;
  constant->add_option("--motif", motif_text, "Motif spec or name")->required();
  constant->add_option("--tau", tau_text, "Degree exponent p/q")->required();
  constant->add_option("--mode", mode_text, "sub or ind")->required();
  constant->add_option("--samples", samples, "Sample budget")->required();
  constant->add_option("--eps", eps_text, "Truncate every coordinate to [eps, 1/eps]");
  constant->add_option("--seed", const_seed, "Seed");
  constant->add_option("--workers", workers, "Sample-stream workers");
  constant->add_flag("--json", as_json, "Print a JSON record instead of CSV");
  constant->add_flag("--no-prefactor", no_prefactor, "Report the bare integral");

  auto* experiment = app.add_subcommand("experiment", "Run a plan file");
  std::string plan_path;
  experiment->add_option("--plan", plan_path, "Plan file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*atlas) {
      const auto rows = emit_atlas_table(atlas_k, Tau::parse(tau_text), parse_mode(mode_text));
      write_atlas_csv(std::cout, rows);
    } else if (*opt) {
      const auto h = resolve_motif(motif_text);
      print_outcome(h, optimize(h, Tau::parse(tau_text), parse_mode(mode_text)));
    } else if (*gen) {
      const Tau tau = Tau::parse(tau_text);
      const auto gg = generate_graph(gen_n, tau, gen_rank1 ? GraphSource::rank1 : GraphSource::ecm, gen_seed);
      const auto& d = gg.degrees;
      const auto& g = gg.graph;
      std::ofstream out(gen_out);
      if (!out) throw PreconditionError("cannot write " + gen_out);
      auto header = header_for(g, d);
      header.seed = gen_seed;
      write_edge_list(out, g, header);
      std::ofstream deg(gen_out + ".degrees");
      write_degrees(deg, d);
      std::cerr << "n=" << g.n() << " edges=" << g.edge_count() << " erased_self_loops=" << g.erased_self_loops()
                << " erased_multi_edges=" << g.erased_multi_edges() << " J_n=" << (check_Jn(d) ? "true" : "false")
                << '\n';
    } else if (*census) {
      std::ifstream in(census_graph);
      if (!in) throw ParseError("cannot open graph file " + census_graph);
      const auto loaded = read_edge_list(in);
      const auto h = resolve_motif(motif_text);
      const Mode mode = parse_mode(mode_text);
      CensusOptions options;
      options.ceiling = census_ceiling;
      options.threads = census_threads;
      CensusReport report;
      if (census_windows.empty()) {
        report = count_motif(loaded.graph, h, mode, parse_engine(census_engine), options);
      } else {
        std::vector<DegreeWindow> windows(h.k());  // default: unbounded
        for (auto& w : windows) w.hi = std::numeric_limits<double>::infinity();
        for (const auto& text : census_windows) {
          const auto [v, w] = parse_window(text);
          if (v < 0 || v >= h.k()) throw ParseError("window vertex out of range in '" + text + "'");
          windows[v] = w;
        }
        const std::string path = census_degrees.empty() ? census_graph + ".degrees" : census_degrees;
        std::vector<std::int64_t> degrees;
        if (std::ifstream deg(path); deg) {
          degrees = read_degrees(deg);
        } else if (census_degrees.empty()) {
          std::cerr << "note: no " << path << "; windows apply to simple-graph degrees\n";
          for (std::int64_t v = 0; v < loaded.graph.n(); ++v) degrees.push_back(loaded.graph.degree(v));
        } else {
          throw ParseError("cannot open degree file " + path);
        }
        report = count_with_windows(loaded.graph, degrees, h, windows, mode, options);
      }
      write_census_csv(std::cout, std::span<const CensusReport>(&report, 1));
    } else if (*constant) {
      const auto h = resolve_motif(motif_text);
      EstimateOptions options;
      options.samples = samples;
      options.seed = const_seed;
      options.workers = workers;
      options.include_prefactor = !no_prefactor;
      if (!eps_text.empty()) options.eps = parse_rational(eps_text);
      const auto est = estimate_A(h, parse_mode(mode_text), Tau::parse(tau_text), options);
      if (as_json) {
        std::cout << constant_json(est) << '\n';
      } else {
        write_constant_csv(std::cout, std::span<const ConstantEstimate>(&est, 1));
      }
    } else if (*experiment) {
      run_plan(load_plan(plan_path), std::cout);
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitParse;
  }
  return 0;
}
