#include "sfmotif/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/version.hpp>
#include <json.hpp>

#include "sfmotif/atlas.hpp"
#include "sfmotif/error.hpp"
#include "sfmotif/rng.hpp"

namespace sfmotif {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double to_double(const BigCount& c) { return c.convert_to<double>(); }

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const char* flag(bool b) { return b ? "true" : "false"; }

/// Runs fn(i) for i in [0, count) on up to `threads` workers; the first
/// exception is rethrown after every worker has stopped.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned t = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(count, 1)));
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool is_star(const MotifGraph& h) {
  if (h.edge_count() != h.k() - 1) return false;
  for (int v = 0; v < h.k(); ++v) {
    if (h.degree(v) == h.k() - 1) return true;
  }
  return false;
}

std::vector<DegreeWindow> windows_for(std::int64_t n, const Tau& tau, std::span<const Rational> alpha,
                                      const Rational& eps) {
  std::vector<DegreeWindow> w;
  for (const auto& a : alpha) w.push_back(degree_window(n, tau, a, eps));
  return w;
}

double windowed_labeled(const GeneratedGraph& gg, const MotifGraph& h, std::span<const Rational> alpha,
                        const Tau& tau, const Rational& eps, Mode mode, const CensusOptions& options) {
  const auto w = windows_for(gg.degrees.n, tau, alpha, eps);
  return to_double(count_with_windows(gg.graph, gg.degrees.degrees, h, w, mode, options).labeled_embeddings);
}

CensusOptions cell_options(const ExperimentPlan& plan) {
  CensusOptions o;
  o.ceiling = plan.ceiling;
  o.threads = 1;  // parallelism lives at the cell level
  return o;
}

EnsembleStats ensemble_stats(std::vector<double> counts) {
  EnsembleStats s;
  s.counts = std::move(counts);
  const double r = static_cast<double>(s.counts.size());
  s.mean = std::accumulate(s.counts.begin(), s.counts.end(), 0.0) / r;
  double ss = 0.0;
  for (double c : s.counts) ss += (c - s.mean) * (c - s.mean);
  s.variance = ss / (r - 1.0);
  s.relative_variance = s.mean > 0 ? s.variance / (s.mean * s.mean) : std::nan("");
  return s;
}

std::string alpha_text(std::span<const Rational> alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + to_string(alpha[i]);
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::scaling: return "scaling";
    case ExperimentKind::ratio: return "ratio";
    case ExperimentKind::self_averaging: return "self_averaging";
  }
  return "?";
}

std::string_view to_string(EngineChoice choice) {
  switch (choice) {
    case EngineChoice::automatic: return "auto";
    case EngineChoice::generic: return "generic";
    case EngineChoice::clique: return "clique";
    case EngineChoice::star: return "star";
  }
  return "?";
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t n_index, std::size_t replication) {
  return derive_seed(base, n_index, replication);
}

GeneratedGraph generate_graph(std::int64_t n, const Tau& tau, GraphSource source, std::uint64_t seed) {
  auto d = sample_degrees(n, tau, derive_seed(seed, 0));
  auto g = source == GraphSource::rank1 ? generate_rank1(d, derive_seed(seed, 1))
                                        : pair_half_edges(d, derive_seed(seed, 1));
  return GeneratedGraph{std::move(d), std::move(g)};
}

CensusReport count_motif(const SimpleGraph& g, const MotifGraph& h, Mode mode, EngineChoice choice,
                         const CensusOptions& options) {
  Engine engine = Engine::generic;
  switch (choice) {
    case EngineChoice::automatic:
      if (h.complete() && h.k() <= 6) engine = Engine::clique;
      else if (is_star(h) && mode == Mode::sub) engine = Engine::star;
      break;
    case EngineChoice::generic: break;
    case EngineChoice::clique:
      if (!h.complete()) throw PreconditionError("clique engine requires a complete motif");
      engine = Engine::clique;
      break;
    case EngineChoice::star:
      if (!is_star(h) || mode != Mode::sub) throw PreconditionError("star engine requires a star motif in sub mode");
      engine = Engine::star;
      break;
  }
  if (engine == Engine::generic) return mode == Mode::sub ? count_subgraph(g, h, options) : count_induced(g, h, options);

  const auto start = Clock::now();
  CensusReport r;
  r.key = canonical_form(h);
  r.mode = mode;
  r.engine = engine;
  r.count = engine == Engine::clique ? count_cliques(g, h.k()) : count_star_subgraphs(g, h.k() - 1);
  r.labeled_embeddings = r.count * automorphism_count(h);
  r.elapsed = seconds_since(start);
  return r;
}

std::optional<Rational> window_exponent(const MotifGraph& h, std::span<const Rational> alpha, const Tau& tau,
                                        Mode mode) {
  if (static_cast<int>(alpha.size()) != h.k()) throw PreconditionError("window_exponent: one α per vertex");
  const auto v = continuous_objective(h, alpha, tau, mode);
  if (!v) return std::nullopt;
  return Rational(h.k()) + *v;
}

SlopeFit fit_log_slope(std::span<const std::pair<double, double>> points) {
  SlopeFit fit;
  std::vector<std::pair<double, double>> xy;
  for (auto [n, v] : points) {
    if (!(v > 0.0) || !(n > 0.0)) {
      fit.warnings.push_back("dropped nonpositive point at n=" + number(n));
      continue;
    }
    xy.emplace_back(std::log(n), std::log(v));
  }
  std::set<double> distinct;
  for (auto [x, y] : xy) distinct.insert(x);
  if (distinct.size() < 3) throw PreconditionError("fit_log_slope: fewer than 3 distinct n with positive values");

  const double m = static_cast<double>(xy.size());
  double mx = 0, my = 0;
  for (auto [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (auto [x, y] : xy) {
    const double e = y - fit.intercept - fit.slope * x;
    ssr += e * e;
  }
  fit.stderr_ = xy.size() > 2 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
  fit.points = xy.size();
  return fit;
}

ScalingResult run_scaling_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const std::size_t n_count = plan.n_grid.size();
  const auto reps = static_cast<std::size_t>(plan.replications);

  struct Target {
    const MotifGraph* h;
    Mode mode;
    OptimizationOutcome outcome;
    std::vector<std::optional<Rational>> window_exp;
  };
  std::vector<Target> targets;
  for (const auto& h : plan.motifs) {
    for (Mode mode : plan.modes) {
      Target t{&h, mode, optimize(h, plan.tau, mode), {}};
      for (const auto& w : plan.windows) t.window_exp.push_back(window_exponent(h, w, plan.tau, mode));
      targets.push_back(std::move(t));
    }
  }

  // rows[target][n_index * reps + replication]
  std::vector<std::vector<ScalingRow>> rows(targets.size(), std::vector<ScalingRow>(n_count * reps));
  const auto options = cell_options(plan);
  parallel_for(n_count * reps, plan.threads, [&](std::size_t cell) {
    const std::size_t i = cell / reps;
    const std::size_t r = cell % reps;
    const std::int64_t n = plan.n_grid[i];
    const std::uint64_t seed = cell_seed(plan.seed, i, r);
    const auto start = Clock::now();
    const auto gg = generate_graph(n, plan.tau, plan.generator, seed);
    const bool jn = check_Jn(gg.degrees);
    const double gen_time = seconds_since(start);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto& target = targets[t];
      auto& row = rows[t][cell];
      const auto t0 = Clock::now();
      row.motif = canonical_form(*target.h).hex();
      row.mode = target.mode;
      row.n = n;
      row.replication = static_cast<int>(r);
      row.seed = seed;
      row.predicted_exponent = to_double(target.outcome.exponent.at(plan.tau));
      row.log_correction = target.outcome.log_correction_possible;
      row.jn = jn;
      row.erased_self_loops = gg.graph.erased_self_loops();
      row.erased_multi_edges = gg.graph.erased_multi_edges();
      try {
        const auto report = count_motif(gg.graph, *target.h, target.mode, plan.engine, options);
        row.engine = report.engine;
        row.count = report.count;
        row.rescaled = to_double(report.count) / std::pow(static_cast<double>(n), row.predicted_exponent);
        for (std::size_t w = 0; w < plan.windows.size(); ++w) {
          const double labeled = windowed_labeled(gg, *target.h, plan.windows[w], plan.tau, plan.eps, target.mode, options);
          row.windowed_labeled.push_back(labeled);
          row.windowed_rescaled.push_back(
              target.window_exp[w]
                  ? labeled / std::pow(static_cast<double>(n), to_double(*target.window_exp[w]))
                  : std::nan(""));
        }
      } catch (const ResourceLimitError&) {
        row.ok = false;
        row.count = 0;
        row.rescaled = std::nan("");
        row.windowed_labeled.assign(plan.windows.size(), std::nan(""));
        row.windowed_rescaled.assign(plan.windows.size(), std::nan(""));
      }
      row.elapsed = seconds_since(t0) + (t == 0 ? gen_time : 0.0);
    }
  });

  ScalingResult result;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& target = targets[t];
    ScalingSummary s;
    s.motif = canonical_form(*target.h).hex();
    s.mode = target.mode;
    s.exponent = target.outcome.exponent;
    s.predicted_exponent = to_double(target.outcome.exponent.at(plan.tau));
    s.log_correction = target.outcome.log_correction_possible;
    s.mean_windowed_rescaled.assign(plan.windows.size(), {});
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < n_count; ++i) {
      double sum = 0;
      std::vector<double> wsum(plan.windows.size(), 0.0);
      int ok = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto& row = rows[t][i * reps + r];
        if (!row.ok) continue;
        ++ok;
        sum += to_double(row.count);
        for (std::size_t w = 0; w < wsum.size(); ++w) wsum[w] += row.windowed_rescaled[w];
      }
      s.n.push_back(plan.n_grid[i]);
      if (ok == 0) {
        s.warnings.push_back("every cell at n=" + std::to_string(plan.n_grid[i]) + " hit the resource ceiling");
        s.mean_count.push_back(std::nan(""));
        for (auto& m : s.mean_windowed_rescaled) m.push_back(std::nan(""));
        continue;
      }
      s.mean_count.push_back(sum / ok);
      for (std::size_t w = 0; w < wsum.size(); ++w) s.mean_windowed_rescaled[w].push_back(wsum[w] / ok);
      points.emplace_back(static_cast<double>(plan.n_grid[i]), sum / ok);
    }
    try {
      s.fit = fit_log_slope(points);
      for (const auto& w : s.fit->warnings) s.warnings.push_back(w);
    } catch (const PreconditionError& e) {
      s.warnings.push_back(e.what());
    }
    result.summaries.push_back(std::move(s));
    for (auto& row : rows[t]) result.rows.push_back(std::move(row));
  }
  return result;
}

RatioResult run_ratio_experiment(const ExperimentPlan& plan, const MotifGraph& h,
                                 std::span<const Rational> alpha_star, std::span<const Rational> alpha_alt) {
  plan.validate();
  const Mode mode = plan.modes.front();
  if (static_cast<int>(alpha_star.size()) != h.k() || static_cast<int>(alpha_alt.size()) != h.k()) {
    throw PreconditionError("ratio experiment: α vectors need one entry per motif vertex");
  }
  const auto outcome = optimize(h, plan.tau, mode);
  bool is_optimizer = false;
  for (const auto& p : outcome.optimizers) {
    bool same = true;
    for (int v = 0; v < h.k(); ++v) same = same && alpha_value(alpha_level(p[v]), plan.tau) == alpha_star[v];
    is_optimizer = is_optimizer || same;
  }
  if (!is_optimizer) throw PreconditionError("ratio experiment: alpha_star is not an optimizer of H");
  if (std::equal(alpha_star.begin(), alpha_star.end(), alpha_alt.begin())) {
    throw PreconditionError("ratio experiment: alpha_alt equals alpha_star");
  }
  window_exponent(h, alpha_alt, plan.tau, mode);  // range check

  const std::size_t n_count = plan.n_grid.size();
  const auto reps = static_cast<std::size_t>(plan.replications);
  const auto families = static_cast<std::size_t>(plan.families);
  std::vector<double> num(families * n_count * reps), den(families * n_count * reps);
  const auto options = cell_options(plan);
  parallel_for(num.size(), plan.threads, [&](std::size_t cell) {
    const std::size_t f = cell / (n_count * reps);
    const std::size_t i = cell / reps % n_count;
    const std::size_t r = cell % reps;
    const auto gg = generate_graph(plan.n_grid[i], plan.tau, plan.generator,
                                   cell_seed(derive_seed(plan.seed, f), i, r));
    num[cell] = windowed_labeled(gg, h, alpha_alt, plan.tau, plan.eps, mode, options);
    den[cell] = windowed_labeled(gg, h, alpha_star, plan.tau, plan.eps, mode, options);
  });

  RatioResult result;
  result.motif = canonical_form(h).hex();
  result.alpha_star.assign(alpha_star.begin(), alpha_star.end());
  result.alpha_alt.assign(alpha_alt.begin(), alpha_alt.end());
  for (std::size_t f = 0; f < families; ++f) {
    RatioFamily fam;
    fam.seed = derive_seed(plan.seed, f);
    for (std::size_t i = 0; i < n_count; ++i) {
      RatioPoint p;
      p.n = plan.n_grid[i];
      for (std::size_t r = 0; r < reps; ++r) {
        p.numerator += num[(f * n_count + i) * reps + r];
        p.denominator += den[(f * n_count + i) * reps + r];
      }
      p.zero_denominator = p.denominator == 0.0;
      p.ratio = p.zero_denominator ? std::nan("") : p.numerator / p.denominator;
      fam.points.push_back(p);
    }
    fam.strictly_decreasing = true;
    for (std::size_t i = 0; i < n_count; ++i) {
      if (fam.points[i].zero_denominator) fam.strictly_decreasing = false;
      if (i > 0 && !(fam.points[i].ratio < fam.points[i - 1].ratio)) fam.strictly_decreasing = false;
    }
    int concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n_count; ++i) {
      for (std::size_t j = i + 1; j < n_count; ++j) {
        if (fam.points[i].zero_denominator || fam.points[j].zero_denominator) continue;
        if (fam.points[j].ratio > fam.points[i].ratio) ++concordant;
        if (fam.points[j].ratio < fam.points[i].ratio) ++discordant;
      }
    }
    const int pairs = static_cast<int>(n_count * (n_count - 1) / 2);
    fam.kendall_tau = pairs > 0 ? static_cast<double>(concordant - discordant) / pairs : 0.0;
    if (fam.strictly_decreasing) ++result.decreasing_families;
    result.families.push_back(std::move(fam));
  }
  return result;
}

std::vector<AtlasRow> emit_atlas_table(int k, const Tau& tau, Mode mode) {
  if (k < 3 || k > 5) throw PreconditionError("atlas table: k must lie in [3,5]");
  std::vector<AtlasRow> rows;
  for (const auto& entry : enumerate_connected_graphs(k)) {
    auto o = optimize(entry.graph, tau, mode);
    std::string assignment;
    for (std::size_t i = 0; i < o.optimizers.size(); ++i) assignment += (i ? " | " : "") + o.optimizers[i].text();
    rows.push_back(AtlasRow{entry.graph, entry.key, mode, tau, o.B_form, o.B, o.exponent, o.unique,
                            std::move(assignment), o.log_correction_possible});
  }
  return rows;
}

std::vector<SelfAveragingReport> self_averaging_probe(const ExperimentPlan& plan, const MotifGraph& h) {
  plan.validate();
  if (plan.replications < 2) throw PreconditionError("self-averaging probe needs at least 2 replications");
  const Mode mode = plan.modes.front();
  if (!optimize(h, plan.tau, mode).sqrt_class()) {
    throw PreconditionError("self-averaging probe: motif is outside the √n class");
  }
  const auto reps = static_cast<std::size_t>(plan.replications);
  const auto options = cell_options(plan);
  std::vector<SelfAveragingReport> out;
  for (std::size_t i = 0; i < plan.n_grid.size(); ++i) {
    const std::int64_t n = plan.n_grid[i];
    // Ensemble B keeps the degrees of ensemble A's first replication.
    const auto fixed = sample_degrees(n, plan.tau, derive_seed(cell_seed(plan.seed, i, 0), 0));
    std::vector<double> iid(reps), same(reps);
    parallel_for(2 * reps, plan.threads, [&](std::size_t cell) {
      const std::size_t r = cell % reps;
      const std::uint64_t seed = cell_seed(plan.seed, i, r);
      if (cell < reps) {
        const auto gg = generate_graph(n, plan.tau, plan.generator, seed);
        iid[r] = to_double(count_motif(gg.graph, h, mode, plan.engine, options).count);
      } else {
        const auto g = plan.generator == GraphSource::rank1 ? generate_rank1(fixed, derive_seed(seed, 2))
                                                            : pair_half_edges(fixed, derive_seed(seed, 2));
        same[r] = to_double(count_motif(g, h, mode, plan.engine, options).count);
      }
    });
    SelfAveragingReport rep;
    rep.motif = canonical_form(h).hex();
    rep.n = n;
    rep.tau = plan.tau;
    rep.replications = plan.replications;
    rep.iid = ensemble_stats(std::move(iid));
    rep.fixed = ensemble_stats(std::move(same));
    out.push_back(std::move(rep));
  }
  return out;
}

void write_atlas_csv(std::ostream& out, std::span<const AtlasRow> rows) {
  out << "canonical_key,k,m,mode,tau,B_a,B_b,exponent_c0,exponent_ctau,exponent_cinv,exponent_at_tau,unique,"
         "optimizer_assignment,log_correction_possible,spec\n";
  for (const auto& r : rows) {
    out << r.key.hex() << ',' << r.graph.k() << ',' << r.graph.edge_count() << ',' << to_string(r.mode) << ','
        << to_string(r.tau) << ',' << to_string(r.B_form.a) << ',' << to_string(r.B_form.b) << ','
        << to_string(r.exponent.c0) << ',' << to_string(r.exponent.c_tau) << ',' << to_string(r.exponent.c_inv)
        << ',' << to_string(r.exponent.at(r.tau)) << ',' << flag(r.unique) << ',' << csv_field(r.optimizer) << ','
        << flag(r.log_correction) << ',' << csv_field(r.graph.to_spec()) << '\n';
  }
}

// Wall-clock timings stay out of the CSV so reruns are byte-identical; they
// go to the manifest instead.
void write_scaling_csv(std::ostream& out, const ScalingResult& result) {
  std::size_t windows = result.rows.empty() ? 0 : result.rows.front().windowed_labeled.size();
  out << "canonical_key,mode,n,replication,seed,engine,status,count,predicted_exponent,log_correction,rescaled";
  for (std::size_t w = 0; w < windows; ++w) out << ",windowed_labeled_" << w << ",windowed_rescaled_" << w;
  out << ",jn,erased_self_loops,erased_multi_edges\n";
  for (const auto& r : result.rows) {
    out << r.motif << ',' << to_string(r.mode) << ',' << r.n << ',' << r.replication << ',' << r.seed << ','
        << to_string(r.engine) << ',' << (r.ok ? "ok" : "resource_limit") << ',' << r.count << ','
        << number(r.predicted_exponent) << ',' << flag(r.log_correction) << ',' << number(r.rescaled);
    for (std::size_t w = 0; w < windows; ++w) {
      out << ',' << number(r.windowed_labeled[w]) << ',' << number(r.windowed_rescaled[w]);
    }
    out << ',' << flag(r.jn) << ',' << r.erased_self_loops << ',' << r.erased_multi_edges << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const RatioResult& result) {
  out << "canonical_key,alpha_star,alpha_alt,family,family_seed,n,numerator,denominator,ratio,zero_denominator,"
         "strictly_decreasing,kendall_tau\n";
  for (std::size_t f = 0; f < result.families.size(); ++f) {
    const auto& fam = result.families[f];
    for (const auto& p : fam.points) {
      out << result.motif << ',' << csv_field(alpha_text(result.alpha_star)) << ','
          << csv_field(alpha_text(result.alpha_alt)) << ',' << f << ',' << fam.seed << ',' << p.n << ','
          << number(p.numerator) << ',' << number(p.denominator) << ',' << number(p.ratio) << ','
          << flag(p.zero_denominator) << ',' << flag(fam.strictly_decreasing) << ',' << number(fam.kendall_tau)
          << '\n';
    }
  }
}

void write_self_averaging_csv(std::ostream& out, std::span<const SelfAveragingReport> reports) {
  out << "canonical_key,n,tau,replications,iid_mean,iid_variance,iid_relative_variance,fixed_mean,"
         "fixed_variance,fixed_relative_variance\n";
  for (const auto& r : reports) {
    out << r.motif << ',' << r.n << ',' << to_string(r.tau) << ',' << r.replications << ',' << number(r.iid.mean)
        << ',' << number(r.iid.variance) << ',' << number(r.iid.relative_variance) << ',' << number(r.fixed.mean)
        << ',' << number(r.fixed.variance) << ',' << number(r.fixed.relative_variance) << '\n';
  }
}

void write_census_csv(std::ostream& out, std::span<const CensusReport> reports) {
  out << "canonical_key,mode,engine,count,labeled_embeddings,windows,aut_normalized,elapsed\n";
  for (const auto& r : reports) {
    std::string windows;
    if (r.windows) {
      for (std::size_t i = 0; i < r.windows->size(); ++i) {
        windows += (i ? ";" : "") + number((*r.windows)[i].lo) + ":" + number((*r.windows)[i].hi);
      }
    }
    out << r.key.hex() << ',' << to_string(r.mode) << ',' << to_string(r.engine) << ',' << r.count << ','
        << r.labeled_embeddings << ',' << windows << ',' << flag(r.aut_normalized) << ',' << number(r.elapsed)
        << '\n';
  }
}

void write_constant_csv(std::ostream& out, std::span<const ConstantEstimate> estimates) {
  out << "canonical_key,mode,tau,eps,value,stderr,samples,includes_prefactor,workers\n";
  for (const auto& e : estimates) {
    out << e.key.hex() << ',' << to_string(e.mode) << ',' << to_string(e.tau) << ','
        << (e.eps ? to_string(*e.eps) : "") << ',' << number(e.value) << ',' << number(e.stderr_) << ','
        << e.samples << ',' << flag(e.includes_prefactor) << ',' << e.workers << '\n';
  }
}

std::string constant_json(const ConstantEstimate& e) {
  json j;
  j["canonical_key"] = e.key.hex();
  j["mode"] = to_string(e.mode);
  j["tau"] = to_string(e.tau);
  j["eps"] = e.eps ? json(to_string(*e.eps)) : json(nullptr);
  j["value"] = e.value;
  j["stderr"] = e.stderr_;
  j["samples"] = e.samples;
  j["includes_prefactor"] = e.includes_prefactor;
  j["workers"] = e.workers;
  return j.dump();
}

void run_plan(const ExperimentPlan& plan, std::ostream& log) {
  plan.validate();
  const auto start = Clock::now();
  const std::string started = utc_now();
  json manifest;
  manifest["tool"] = "sfmotif";
  manifest["version"] = kVersion;
  manifest["boost"] = BOOST_LIB_VERSION;
  manifest["compiler"] = __VERSION__;
  manifest["plan_text"] = plan_text(plan);
  manifest["experiment"] = to_string(plan.kind);
  manifest["base_seed"] = plan.seed;
  manifest["started_utc"] = started;

  std::ostringstream csv;
  switch (plan.kind) {
    case ExperimentKind::scaling: {
      const auto result = run_scaling_experiment(plan);
      write_scaling_csv(csv, result);
      json cells = json::array();
      for (const auto& r : result.rows) {
        cells.push_back({{"canonical_key", r.motif}, {"mode", to_string(r.mode)}, {"n", r.n},
                         {"replication", r.replication}, {"seed", r.seed}, {"elapsed_s", r.elapsed}});
      }
      manifest["cells"] = std::move(cells);
      for (const auto& s : result.summaries) {
        log << s.motif << ' ' << to_string(s.mode) << ": predicted exponent " << s.exponent.text() << " = "
            << number(s.predicted_exponent) << (s.log_correction ? " (non-unique optimizer, polynomial part)" : "");
        if (s.fit) log << ", fitted slope " << number(s.fit->slope) << " ± " << number(s.fit->stderr_);
        log << '\n';
        for (const auto& w : s.warnings) log << "  warning: " << w << '\n';
      }
      break;
    }
    case ExperimentKind::ratio: {
      if (!plan.alpha_star || !plan.alpha_alt) throw PreconditionError("ratio plan needs alpha_star and alpha_alt");
      const auto result = run_ratio_experiment(plan, plan.motifs.front(), *plan.alpha_star, *plan.alpha_alt);
      write_ratio_csv(csv, result);
      json seeds = json::array();
      for (const auto& f : result.families) seeds.push_back(f.seed);
      manifest["family_seeds"] = std::move(seeds);
      log << result.motif << ": ratio strictly decreasing in " << result.decreasing_families << " of "
          << result.families.size() << " families\n";
      break;
    }
    case ExperimentKind::self_averaging: {
      const auto reports = self_averaging_probe(plan, plan.motifs.front());
      write_self_averaging_csv(csv, reports);
      for (const auto& r : reports) {
        log << r.motif << " n=" << r.n << ": Var/Mean² iid " << number(r.iid.relative_variance) << ", fixed degrees "
            << number(r.fixed.relative_variance) << '\n';
      }
      break;
    }
  }
  manifest["wall_clock_s"] = seconds_since(start);

  if (plan.output_dir.empty()) {
    log << csv.str();
    return;
  }
  const std::filesystem::path dir(plan.output_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (std::string(to_string(plan.kind)) + ".csv");
  std::ofstream(csv_path) << csv.str();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  log << "wrote " << csv_path.string() << " and " << (dir / "manifest.json").string() << '\n';
}

}  // namespace sfmotif
