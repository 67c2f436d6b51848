#include <gtest/gtest.h>

#include <cmath>

#include "sfmotif/constants.hpp"
#include "sfmotif/error.hpp"
#include "sfmotif/zeta.hpp"

using namespace sfmotif;

namespace {

const Tau kHalf = Tau::parse("5/2");
MotifGraph spec(const char* s) { return parse_motif(s); }
const MotifGraph kTriangle = spec("k=3; edges=0-1,1-2,0-2");
const MotifGraph kDiamond = spec("k=4; edges=0-1,1-2,2-3,3-0,0-2");
const MotifGraph kClaw = spec("k=4; edges=0-1,0-2,0-3");

EstimateOptions opts(std::uint64_t samples, std::uint64_t seed, std::optional<Rational> eps = std::nullopt) {
  EstimateOptions o;
  o.samples = samples;
  o.seed = seed;
  o.eps = eps;
  return o;
}

}  // namespace

TEST(Integrand, AtOnes) {
  const std::vector<double> x{1.0, 1.0, 1.0};
  EXPECT_NEAR(a_integrand(kTriangle, Mode::sub, kHalf, x), std::pow(1 - std::exp(-1.0), 3), 1e-12);
  EXPECT_NEAR(a_integrand(kTriangle, Mode::sub, kHalf, x), 0.2524, 3e-4);
  // The path misses one edge: an extra e^{-1} for graphlets.
  const auto p3 = spec("k=3; edges=0-1,1-2");
  EXPECT_NEAR(a_integrand(p3, Mode::ind, kHalf, x), std::pow(1 - std::exp(-1.0), 2) * std::exp(-1.0), 1e-12);
}

TEST(Prefactor, ClosedForm) {
  const double mu = riemann_zeta(1.5);
  EXPECT_NEAR(a_prefactor(3, kHalf), std::pow(1.5, 3) * std::pow(mu, -3 * 1.5 / 2), 1e-12);
}

TEST(Quadrature, SelfConvergence) {
  const double a48 = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 48);
  const double a64 = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 64);
  EXPECT_LT(std::abs(a48 - a64) / a64, 0.01);
}

TEST(Quadrature, CompleteGraphModesAgree) {
  EXPECT_DOUBLE_EQ(tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 32),
                   tensor_quadrature_A(kTriangle, Mode::ind, kHalf, Rational(1, 10), 32));
  EXPECT_LT(tensor_quadrature_A(kDiamond, Mode::ind, kHalf, Rational(1, 10), 32),
            tensor_quadrature_A(kDiamond, Mode::sub, kHalf, Rational(1, 10), 32));
}

TEST(Quadrature, NondecreasingAsEpsShrinks) {
  double prev = 0;
  for (int inv : {2, 5, 10, 20}) {
    const double a = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, inv), 64);
    EXPECT_GE(a, prev);
    prev = a;
  }
}

TEST(Quadrature, Limits) {
  EXPECT_THROW(tensor_quadrature_A(spec("k=5; edges=0-1,1-2,2-3,3-4,4-0"), Mode::sub, kHalf, Rational(1, 10), 8),
               ResourceLimitError);
  EXPECT_THROW(tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 65), PreconditionError);
}

TEST(Estimate, TruncatedTriangleMatchesQuadrature) {
  const auto e = estimate_A(kTriangle, Mode::sub, kHalf, opts(400'000, 3, Rational(1, 10)));
  const double q = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 64);
  EXPECT_LE(std::abs(e.value - q), 3 * e.stderr_);
  EXPECT_GT(e.stderr_, 0);
  EXPECT_TRUE(e.includes_prefactor);
}

TEST(Estimate, PrefactorToggle) {
  auto o = opts(100'000, 4, Rational(1, 10));
  const auto with = estimate_A(kTriangle, Mode::sub, kHalf, o);
  o.include_prefactor = false;
  const auto bare = estimate_A(kTriangle, Mode::sub, kHalf, o);
  EXPECT_NEAR(with.value, bare.value * a_prefactor(3, kHalf), 1e-9 * with.value);
}

TEST(Estimate, Deterministic) {
  const auto a = estimate_A(kTriangle, Mode::sub, kHalf, opts(50'000, 9));
  const auto b = estimate_A(kTriangle, Mode::sub, kHalf, opts(50'000, 9));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(Estimate, WorkersSplitStreams) {
  auto o = opts(200'000, 9, Rational(1, 10));
  o.workers = 4;
  const auto a = estimate_A(kTriangle, Mode::sub, kHalf, o);
  const auto b = estimate_A(kTriangle, Mode::sub, kHalf, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.workers, 4U);
  const double q = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 64);
  EXPECT_LE(std::abs(a.value - q), 3 * a.stderr_);
}

TEST(Estimate, IndBelowSubOnSharedStream) {
  const auto [sub, ind] = estimate_A_both(kDiamond, kHalf, opts(100'000, 5, Rational(1, 10)));
  EXPECT_LE(ind.value, sub.value);
  EXPECT_EQ(sub.mode, Mode::sub);
  EXPECT_EQ(ind.mode, Mode::ind);
  const auto [tsub, tind] = estimate_A_both(kTriangle, kHalf, opts(100'000, 5));
  EXPECT_DOUBLE_EQ(tind.value, tsub.value);
  // Untruncated diamond is outside the √n class for motifs.
  EXPECT_THROW(estimate_A_both(kDiamond, kHalf, opts(1000, 5)), PreconditionError);
}

TEST(Estimate, TruncatedBelowFull) {
  const auto full = estimate_A(kTriangle, Mode::sub, kHalf, opts(400'000, 6));
  const double trunc = tensor_quadrature_A(kTriangle, Mode::sub, kHalf, Rational(1, 10), 64);
  EXPECT_LE(trunc, full.value + 3 * full.stderr_);
}

TEST(Estimate, Preconditions) {
  EXPECT_THROW(require_sqrt_class(kClaw, kHalf, Mode::sub), PreconditionError);
  EXPECT_THROW(estimate_A(kClaw, Mode::sub, kHalf, opts(1000, 1)), PreconditionError);
  EXPECT_NO_THROW(estimate_A(kClaw, Mode::sub, kHalf, opts(1000, 1, Rational(1, 10))));
  EXPECT_THROW(estimate_A(kTriangle, Mode::sub, kHalf, opts(0, 1)), PreconditionError);
  EXPECT_THROW(estimate_A(kTriangle, Mode::sub, kHalf, opts(1000, 1, Rational(3, 2))), PreconditionError);
  // C4 in sub mode is not uniquely all-S3.
  EXPECT_THROW(require_sqrt_class(spec("k=4; edges=0-1,1-2,2-3,3-0"), kHalf, Mode::sub), PreconditionError);
  EXPECT_NO_THROW(require_sqrt_class(spec("k=4; edges=0-1,1-2,2-3,3-0"), kHalf, Mode::ind));
}

TEST(ConditionalExpectation, SingleTupleIsExact) {
  // n = 100: √(μn) ≈ 16.2, so the ε = 1/2 window is about [8.1, 32.3].
  std::vector<std::int64_t> deg(100, 1);
  deg[0] = 10;
  deg[1] = 12;
  deg[2] = 20;
  const auto d = degree_sequence_from(deg, kHalf);
  const double L = static_cast<double>(d.total);
  const double expected =
      (1 - std::exp(-120 / L)) * (1 - std::exp(-240 / L)) * (1 - std::exp(-200 / L));
  const auto r = conditional_expected_count(d, kTriangle, Mode::sub, Rational(1, 2), 1000, 1);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.count, expected, 1e-12);
  EXPECT_NEAR(r.labeled, 6 * expected, 1e-12);
  EXPECT_EQ(r.stderr_, 0.0);
}

TEST(ConditionalExpectation, TooFewMembers) {
  std::vector<std::int64_t> deg(100, 1);
  deg[0] = 10;
  deg[1] = 12;
  EXPECT_THROW(conditional_expected_count(degree_sequence_from(deg, kHalf), kTriangle, Mode::sub, Rational(1, 2), 10, 1),
               PreconditionError);
}
