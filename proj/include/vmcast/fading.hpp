#pragma once

#include <cstdint>
#include <vector>

namespace vmcast {

/// First-order Marcum Q function Q1(a, b), computed as the survival function
/// of a noncentral chi-square with 2 degrees of freedom and noncentrality a^2
/// evaluated at b^2 (Poisson mixture of Erlang tails). Accurate to ~1e-14 for
/// the argument ranges used here. Throws std::domain_error on negative input.
double marcum_q1(double a, double b);

/// Statistics of one BS->vehicle link as seen by the fading layer.
struct LinkStats {
  double mean_sinr_db = 0.0;
  double rician_k = 1.0;  // 0 = Rayleigh
  /// Mean interference-to-noise ratios of co-channel interferers (linear),
  /// empty for the default reserved-RB multicast setting.
  std::vector<double> interferer_mean_inr;
  double interferer_rician_k = 0.0;
};

/// Per-RB success probability model: P[instantaneous SINR >= protection
/// ratio] under small-scale fading around the link's mean SINR.
class FadingModel {
 public:
  virtual ~FadingModel() = default;
  virtual double rb_success_prob(double threshold_db, const LinkStats& link) const = 0;
};

/// Interference-free Rician fading. Success probability in linear units is
/// Q1(sqrt(2K), sqrt(2(1+K) R / g)) with R the protection ratio and g the
/// mean SNR; K = 0 reduces to the Rayleigh form exp(-R/g).
class RicianFading final : public FadingModel {
 public:
  double rb_success_prob(double threshold_db, const LinkStats& link) const override;
};

/// Monte Carlo evaluator for a Rician desired signal among Rician/Rayleigh
/// interferers (any L >= 0). Deterministic for a fixed seed.
class MonteCarloFading final : public FadingModel {
 public:
  explicit MonteCarloFading(int draws = 100000, std::uint64_t seed = 1)
      : draws_(draws), seed_(seed) {}
  double rb_success_prob(double threshold_db, const LinkStats& link) const override;

 private:
  int draws_;
  std::uint64_t seed_;
};

/// Convenience wrapper over RicianFading for the common L = 0 case.
/// Throws std::domain_error for negative K or non-positive linear mean SNR.
double rb_success_prob(double threshold_db, double mean_sinr_db, double rician_k);

}  // namespace vmcast
