#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "sfmotif/exact.hpp"
#include "sfmotif/motif_graph.hpp"
#include "sfmotif/optimizer.hpp"
#include "sfmotif/synthesis.hpp"

namespace sfmotif {

/// Estimate of
///   A(H) = c^k μ^{−k(τ−1)/2} ∫ (x_1⋯x_k)^{−τ} ∏_{uv∈E}(1−e^{−x_u x_v}) [∏_{uv∉E} e^{−x_u x_v}] dx
/// over (0,∞)^k, or over [ε,1/ε]^k when eps is set. The integral counts
/// ordered vertex tuples, so it is the limit of labeled embedding counts
/// divided by n^{k(3−τ)/2}.
struct ConstantEstimate {
  CanonicalKey key;
  Mode mode = Mode::sub;
  Tau tau{Rational(5, 2)};
  std::optional<Rational> eps;
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  bool includes_prefactor = true;
  unsigned workers = 1;
};

struct EstimateOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<Rational> eps;
  bool include_prefactor = true;
  unsigned workers = 1;
};

/// c^k μ^{−k(τ−1)/2} with c = τ−1 and μ = ζ(τ−1).
double a_prefactor(int k, const Tau& tau);

/// The bare integrand at x (no prefactor).
double a_integrand(const MotifGraph& h, Mode mode, const Tau& tau, std::span<const double> x);

/// Throws PreconditionError unless h has minimum degree 2 and a unique
/// all-S3 optimizer in the given mode.
void require_sqrt_class(const MotifGraph& h, const Tau& tau, Mode mode);

/// Importance-sampled Monte Carlo estimate. Without eps the motif must pass
/// require_sqrt_class; the truncated integral is accepted for any H.
ConstantEstimate estimate_A(const MotifGraph& h, Mode mode, const Tau& tau, const EstimateOptions& options);

/// Sub and ind estimates from one shared sample stream (common random
/// numbers). Without eps both modes must be in the √n class.
std::pair<ConstantEstimate, ConstantEstimate> estimate_A_both(const MotifGraph& h, const Tau& tau,
                                                              const EstimateOptions& options);

/// Gauss–Legendre product rule in log x over [ε,1/ε]^k; k <= 4, nodes <= 64.
double tensor_quadrature_A(const MotifGraph& h, Mode mode, const Tau& tau, const Rational& eps,
                           int nodes_per_axis, bool include_prefactor = true);

/// E_n[N(H, W_n^k(ε))] given the degrees, from the product formula over
/// ordered k-tuples of window members. Enumerates all tuples when there are
/// at most tuple_samples of them, otherwise samples tuples uniformly.
struct PredictedCount {
  double labeled = 0.0;  // expected labeled embeddings
  double labeled_stderr = 0.0;
  double count = 0.0;  // labeled / |Aut(H)|
  double stderr_ = 0.0;
  std::uint64_t tuples_used = 0;
  bool exact = false;
};

PredictedCount conditional_expected_count(const DegreeSequence& d, const MotifGraph& h, Mode mode,
                                          const Rational& eps, std::uint64_t tuple_samples, std::uint64_t seed);

}  // namespace sfmotif
