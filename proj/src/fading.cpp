#include "vmcast/fading.hpp"

#include <cmath>
#include <stdexcept>

#include "vmcast/rng.hpp"
#include "vmcast/util.hpp"

namespace vmcast {

double marcum_q1(double a, double b) {
  if (a < 0.0 || b < 0.0) throw std::domain_error("marcum_q1: arguments must be >= 0");
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);

  const double x = 0.5 * a * a;  // Poisson mean
  const double y = 0.5 * b * b;  // Erlang evaluation point

  // Q1 = sum_k Pois(k; x) * P[Erlang(k+1, 1) > y]
  // with P[Erlang(k+1) > y] = e^{-y} sum_{j<=k} y^j / j! built incrementally.
  double pois = std::exp(-x);        // k = 0
  double pois_cum = pois;
  double erl_term = std::exp(-y);    // j = 0
  double erl_cum = erl_term;
  double q = pois * erl_cum;
  for (int k = 1; k < 10000; ++k) {
    pois *= x / k;
    pois_cum += pois;
    erl_term *= y / k;
    erl_cum += erl_term;
    q += pois * erl_cum;
    if (1.0 - pois_cum < 1e-16 && k > x) break;
  }
  if (q < 0.0) return 0.0;
  return q > 1.0 ? 1.0 : q;
}

namespace {

double rician_success_linear(double threshold_lin, double mean_snr_lin, double k_factor) {
  if (k_factor < 0.0) throw std::domain_error("rician K factor must be >= 0");
  if (threshold_lin < 0.0) throw std::domain_error("protection ratio must be >= 0");
  if (!(mean_snr_lin > 0.0)) throw std::domain_error("mean SNR must be > 0");
  if (threshold_lin == 0.0) return 1.0;
  double a = std::sqrt(2.0 * k_factor);
  double b = std::sqrt(2.0 * (1.0 + k_factor) * threshold_lin / mean_snr_lin);
  return marcum_q1(a, b);
}

/// Rician power sample with unit mean: |los + scatter|^2.
double rician_power_sample(Rng& rng, double k_factor) {
  double sigma = std::sqrt(1.0 / (2.0 * (1.0 + k_factor)));
  double los = std::sqrt(k_factor / (1.0 + k_factor));
  double i = los + sigma * rng.normal();
  double q = sigma * rng.normal();
  return i * i + q * q;
}

}  // namespace

double RicianFading::rb_success_prob(double threshold_db, const LinkStats& link) const {
  return rician_success_linear(db_to_linear(threshold_db), db_to_linear(link.mean_sinr_db),
                               link.rician_k);
}

double MonteCarloFading::rb_success_prob(double threshold_db, const LinkStats& link) const {
  const double r = db_to_linear(threshold_db);
  if (link.rician_k < 0.0) throw std::domain_error("rician K factor must be >= 0");
  // With no interferers mean_sinr is the mean SNR; with interferers it is
  // interpreted as mean SNR of the desired signal and each interferer adds
  // its own mean INR on top of unit noise.
  const double g = db_to_linear(link.mean_sinr_db);
  Rng rng(seed_);
  long hits = 0;
  for (int t = 0; t < draws_; ++t) {
    double s = g * rician_power_sample(rng, link.rician_k);
    double denom = 1.0;
    for (double inr : link.interferer_mean_inr) {
      denom += inr * rician_power_sample(rng, link.interferer_rician_k);
    }
    if (s / denom >= r) ++hits;
  }
  return static_cast<double>(hits) / draws_;
}

double rb_success_prob(double threshold_db, double mean_sinr_db, double rician_k) {
  return rician_success_linear(db_to_linear(threshold_db), db_to_linear(mean_sinr_db), rician_k);
}

}  // namespace vmcast
