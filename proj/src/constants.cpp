#include "sfmotif/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

#include "sfmotif/error.hpp"
#include "sfmotif/rng.hpp"

namespace sfmotif {

namespace {

// Per-coordinate proposal: density ∝ x^{−1+δ} on (lo, 1] and x^{−1−δ} on
// (1, hi], δ = (3−τ)/2, i.e. nearly log-uniform. Proposals that follow the
// integrand's one-coordinate boundary behaviour (x^{2−τ} near 0) have
// infinite weight variance: two adjacent small coordinates s with a third
// coordinate beyond 1/s contribute ~ s^{1−β} per dyadic shell for any tail
// exponent β > 1.
class Proposal {
 public:
  Proposal(double tau, double lo, double hi) : a_(-1.0 + (3.0 - tau) / 2.0), beta_(1.0 + (3.0 - tau) / 2.0), lo_(lo), hi_(hi) {
    mass_low_ = (1.0 - std::pow(lo_, a_ + 1.0)) / (a_ + 1.0);
    mass_high_ = std::isinf(hi_) ? 1.0 / (beta_ - 1.0) : (1.0 - std::pow(hi_, 1.0 - beta_)) / (beta_ - 1.0);
    norm_ = mass_low_ + mass_high_;
  }

  // Returns (log x, log density(x)). Works in logs because x^{1/(a+1)}
  // underflows for τ near 3.
  std::pair<double, double> draw(Rng& rng) const {
    const double u = uniform_open(rng) * norm_;
    double y;
    if (u < mass_low_) {
      // ∫_lo^x t^a dt = u
      y = std::log(std::pow(lo_, a_ + 1.0) + (a_ + 1.0) * u) / (a_ + 1.0);
    } else {
      // ∫_1^x t^{−β} dt = u − mass_low
      y = std::log1p(-(beta_ - 1.0) * (u - mass_low_)) / (1.0 - beta_);
    }
    return {y, (y <= 0.0 ? a_ * y : -beta_ * y) - std::log(norm_)};
  }

 private:
  double a_;
  double beta_;
  double lo_;
  double hi_;
  double mass_low_ = 0.0;
  double mass_high_ = 0.0;
  double norm_ = 0.0;
};

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;

  void add(double w) {
    sum += w;
    sum_sq += w * w;
    ++count;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double stderr_of_mean() const {
    const double n = static_cast<double>(count);
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

// log(1 − e^{−e^z}), accurate when e^z underflows.
double log_edge_factor(double z) {
  if (z < -30.0) return z;
  return std::log(-std::expm1(-std::exp(z)));
}

// Returns (log sub integrand, log ind integrand) at x = exp(y).
std::pair<double, double> log_integrands(const MotifGraph& h, double tau, const double* y) {
  double sub = 0.0;
  for (int i = 0; i < h.k(); ++i) sub -= tau * y[i];
  double non_edge = 0.0;
  for (int u = 0; u < h.k(); ++u) {
    for (int v = u + 1; v < h.k(); ++v) {
      if (h.adjacent(u, v)) {
        sub += log_edge_factor(y[u] + y[v]);
      } else {
        non_edge += std::exp(y[u] + y[v]);
      }
    }
  }
  return {sub, sub - non_edge};
}

std::pair<ConstantEstimate, ConstantEstimate> run_estimator(const MotifGraph& h, const Tau& tau,
                                                            const EstimateOptions& options) {
  if (options.samples < 2) throw PreconditionError("estimate_A: sample budget must be at least 2");
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  if (options.eps) {
    if (!(*options.eps > 0 && *options.eps < 1)) throw PreconditionError("estimate_A: eps must lie in (0,1)");
    lo = to_double(*options.eps);
    hi = 1.0 / lo;
  }
  const double t = tau.as_double();
  const Proposal proposal(t, lo, hi);
  const int k = h.k();
  const unsigned workers = std::max(1U, options.workers);

  std::vector<Moments> sub(workers);
  std::vector<Moments> ind(workers);
  auto work = [&](unsigned w) {
    Rng rng(derive_seed(options.seed, w));
    const std::uint64_t begin = options.samples * w / workers;
    const std::uint64_t end = options.samples * (w + 1) / workers;
    std::array<double, kMaxMotifVertices> y{};
    for (std::uint64_t s = begin; s < end; ++s) {
      double log_q = 0.0;
      for (int i = 0; i < k; ++i) {
        const auto [yi, log_qi] = proposal.draw(rng);
        y[i] = yi;
        log_q += log_qi;
      }
      const auto [fs, fi] = log_integrands(h, t, y.data());
      sub[w].add(std::exp(fs - log_q));
      ind[w].add(std::exp(fi - log_q));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (unsigned w = 1; w < workers; ++w) {
    sub[0].merge(sub[w]);
    ind[0].merge(ind[w]);
  }

  const double scale = options.include_prefactor ? a_prefactor(k, tau) : 1.0;
  auto make = [&](Mode mode, const Moments& m) {
    ConstantEstimate e;
    e.key = canonical_form(h);
    e.mode = mode;
    e.tau = tau;
    e.eps = options.eps;
    e.value = scale * m.mean();
    e.stderr_ = scale * m.stderr_of_mean();
    e.samples = m.count;
    e.includes_prefactor = options.include_prefactor;
    e.workers = workers;
    return e;
  };
  return {make(Mode::sub, sub[0]), make(Mode::ind, ind[0])};
}

}  // namespace

double a_prefactor(int k, const Tau& tau) {
  const double c = to_double(tau.minus_one());
  const double mu = degree_mean(tau);
  return std::pow(c, k) * std::pow(mu, -k * c / 2.0);
}

double a_integrand(const MotifGraph& h, Mode mode, const Tau& tau, std::span<const double> x) {
  if (static_cast<int>(x.size()) != h.k()) throw PreconditionError("a_integrand: wrong dimension");
  std::array<double, kMaxMotifVertices> y{};
  for (int i = 0; i < h.k(); ++i) y[i] = std::log(x[i]);
  const auto [sub, ind] = log_integrands(h, tau.as_double(), y.data());
  return std::exp(mode == Mode::sub ? sub : ind);
}

void require_sqrt_class(const MotifGraph& h, const Tau& tau, Mode mode) {
  if (h.min_degree() < 2) throw PreconditionError("constant estimator: motif needs minimum degree 2");
  const auto outcome = optimize(h, tau, mode);
  if (!outcome.sqrt_class()) {
    throw PreconditionError("constant estimator: optimizer is not uniquely all-S3 (" + outcome.optimizer().text() +
                            "), so the rescaled count has no finite limit constant");
  }
}

ConstantEstimate estimate_A(const MotifGraph& h, Mode mode, const Tau& tau, const EstimateOptions& options) {
  // The truncated integral is finite for every H; only the full one needs
  // the class check.
  if (!options.eps) require_sqrt_class(h, tau, mode);
  auto both = run_estimator(h, tau, options);
  return mode == Mode::sub ? both.first : both.second;
}

std::pair<ConstantEstimate, ConstantEstimate> estimate_A_both(const MotifGraph& h, const Tau& tau,
                                                              const EstimateOptions& options) {
  if (!options.eps) {
    require_sqrt_class(h, tau, Mode::sub);
    require_sqrt_class(h, tau, Mode::ind);
  }
  return run_estimator(h, tau, options);
}

double tensor_quadrature_A(const MotifGraph& h, Mode mode, const Tau& tau, const Rational& eps,
                           int nodes_per_axis, bool include_prefactor) {
  const int k = h.k();
  if (k > 4) throw ResourceLimitError("tensor quadrature: k must be at most 4");
  if (nodes_per_axis < 2 || nodes_per_axis > 64) throw PreconditionError("tensor quadrature: nodes must lie in [2,64]");
  if (!(eps > 0 && eps < 1)) throw PreconditionError("tensor quadrature: eps must lie in (0,1)");

  // Nodes on [-1,1] from the zeros of P_m, weights 2/((1−z²) P_m'(z)²).
  const int m = nodes_per_axis;
  std::vector<double> z;
  for (double r : boost::math::legendre_p_zeros<double>(m)) {
    z.push_back(r);
    if (r != 0.0) z.push_back(-r);
  }
  std::sort(z.begin(), z.end());
  const double half = -std::log(to_double(eps));  // t = log x ∈ [−half, half]
  const double t_exp = tau.as_double();
  std::vector<double> log_x(m);
  std::vector<double> x(m);
  std::vector<double> log_w(m);
  for (int i = 0; i < m; ++i) {
    const double dp = boost::math::legendre_p_prime(m, z[i]);
    const double w = 2.0 / ((1.0 - z[i] * z[i]) * dp * dp) * half;
    log_x[i] = half * z[i];
    x[i] = std::exp(log_x[i]);
    // dx = x dt and the x^{−τ} factor fold into the log weight
    log_w[i] = std::log(w) + (1.0 - t_exp) * log_x[i];
  }

  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> non_edges;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) (h.adjacent(u, v) ? edges : non_edges).emplace_back(u, v);
  }

  std::vector<int> idx(k, 0);
  double total = 0.0;
  for (;;) {
    double log_term = 0.0;
    for (int i = 0; i < k; ++i) log_term += log_w[idx[i]];
    for (auto [u, v] : edges) log_term += std::log1p(-std::exp(-x[idx[u]] * x[idx[v]]));
    if (mode == Mode::ind) {
      for (auto [u, v] : non_edges) log_term -= x[idx[u]] * x[idx[v]];
    }
    total += std::exp(log_term);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return include_prefactor ? a_prefactor(k, tau) * total : total;
}

PredictedCount conditional_expected_count(const DegreeSequence& d, const MotifGraph& h, Mode mode,
                                          const Rational& eps, std::uint64_t tuple_samples, std::uint64_t seed) {
  const auto members = degree_window_members(d, Rational(1, 2), eps);
  const int k = h.k();
  const auto m = static_cast<std::int64_t>(members.size());
  if (m < k) throw PreconditionError("conditional_expected_count: fewer than k window members");
  if (tuple_samples == 0) throw PreconditionError("conditional_expected_count: tuple budget must be positive");

  const double L = static_cast<double>(d.total);
  double ordered = 1.0;
  for (int i = 0; i < k; ++i) ordered *= static_cast<double>(m - i);

  std::array<double, kMaxMotifVertices> deg{};
  auto term = [&]() {
    double p = 1.0;
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v) {
        const double x = deg[u] * deg[v] / L;
        if (h.adjacent(u, v)) {
          p *= -std::expm1(-x);
        } else if (mode == Mode::ind) {
          p *= std::exp(-x);
        }
      }
    }
    return p;
  };

  PredictedCount out;
  const double aut = static_cast<double>(automorphism_count(h));
  if (ordered <= static_cast<double>(tuple_samples)) {
    // All ordered tuples of distinct members.
    std::array<std::int64_t, kMaxMotifVertices> pick{};
    double sum = 0.0;
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == k) {
        sum += term();
        ++out.tuples_used;
        return;
      }
      for (std::int64_t j = 0; j < m; ++j) {
        bool used = false;
        for (int t = 0; t < depth; ++t) used |= pick[t] == j;
        if (used) continue;
        pick[depth] = j;
        deg[depth] = static_cast<double>(d.degrees[members[j]]);
        self(self, depth + 1);
      }
    };
    rec(rec, 0);
    out.labeled = sum;
    out.exact = true;
  } else {
    Rng rng(seed);
    Moments mom;
    std::array<std::int64_t, kMaxMotifVertices> pick{};
    for (std::uint64_t s = 0; s < tuple_samples; ++s) {
      for (int i = 0; i < k; ++i) {
        for (;;) {
          pick[i] = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(m)));
          bool used = false;
          for (int t = 0; t < i; ++t) used |= pick[t] == pick[i];
          if (!used) break;
        }
        deg[i] = static_cast<double>(d.degrees[members[pick[i]]]);
      }
      mom.add(term());
    }
    out.tuples_used = tuple_samples;
    out.labeled = ordered * mom.mean();
    out.labeled_stderr = ordered * mom.stderr_of_mean();
  }
  out.count = out.labeled / aut;
  out.stderr_ = out.labeled_stderr / aut;
  return out;
}

}  // namespace sfmotif
