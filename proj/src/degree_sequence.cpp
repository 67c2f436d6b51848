#include <cmath>

#include "sfmotif/error.hpp"
#include "sfmotif/rng.hpp"
#include "sfmotif/synthesis.hpp"
#include "sfmotif/zeta.hpp"

namespace sfmotif {

namespace {

void fix_parity(DegreeSequence& d) {
  d.total = 0;
  for (auto x : d.degrees) d.total += x;
  d.parity_fixed = (d.total % 2) != 0;
  if (d.parity_fixed) {
    ++d.degrees.back();
    ++d.total;
  }
}

}  // namespace

DegreeSequence sample_degrees(std::int64_t n, const Tau& tau, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("sample_degrees: n must be at least 2");
  DegreeSequence d{n, {}, 0, tau, seed, false};
  d.degrees.resize(n);
  Rng rng(seed);
  const double expo = -1.0 / to_double(tau.minus_one());
  // Cap far beyond any reachable L_n budget so the cast stays defined.
  constexpr double kCap = 9.0e15;
  for (auto& x : d.degrees) {
    const double v = std::floor(std::pow(uniform_open(rng), expo));
    x = static_cast<std::int64_t>(std::min(v, kCap));
  }
  fix_parity(d);
  return d;
}

DegreeSequence degree_sequence_from(std::vector<std::int64_t> degrees, const Tau& tau, std::uint64_t seed) {
  if (degrees.size() < 2) throw PreconditionError("degree sequence needs at least 2 entries");
  for (auto x : degrees) {
    if (x < 1) throw PreconditionError("degree sequence entries must be >= 1");
  }
  DegreeSequence d{static_cast<std::int64_t>(degrees.size()), std::move(degrees), 0, tau, seed, false};
  fix_parity(d);
  return d;
}

double degree_mean(const Tau& tau) { return riemann_zeta(to_double(tau.minus_one())); }

bool check_Jn(const DegreeSequence& d) {
  const double n = static_cast<double>(d.n);
  const double mu = degree_mean(d.tau);
  return std::abs(static_cast<double>(d.total) - mu * n) <= std::pow(n, 1.0 / to_double(d.tau.minus_one()));
}

DegreeWindow degree_window(std::int64_t n, const Tau& tau, const Rational& alpha, const Rational& eps) {
  if (!(eps > 0 && eps < 1)) throw PreconditionError("degree window: eps must lie in (0,1)");
  if (alpha < 0 || alpha > tau.high_level()) throw PreconditionError("degree window: alpha outside [0, 1/(tau-1)]");
  const double scale = std::pow(degree_mean(tau) * static_cast<double>(n), to_double(alpha));
  return {to_double(eps) * scale, scale / to_double(eps)};
}

std::vector<std::int64_t> degree_window_members(const DegreeSequence& d, const Rational& alpha,
                                                const Rational& eps) {
  const auto w = degree_window(d.n, d.tau, alpha, eps);
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; v < d.n; ++v) {
    if (w.contains(d.degrees[v])) out.push_back(v);
  }
  return out;
}

}  // namespace sfmotif
