#include <algorithm>
#include <cmath>

#include "vmcast/association.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/sim.hpp"

namespace vmcast {

GeneratedScenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);

  GeneratedScenario out;
  Scenario& sc = out.scenario;
  sc.channel = config.channel;
  sc.slots_per_second = config.slots_per_second;
  sc.highway_length_m = config.n_bs * config.spacing_m;
  sc.messages = config.messages.empty() ? table4_messages() : config.messages;
  sc.cqi_candidates = config.cqi_candidates;

  sc.base_stations.resize(config.n_bs);
  if (config.deployment == Deployment::kFixedSpacing) {
    for (int n = 0; n < config.n_bs; ++n) {
      sc.base_stations[n] = {n * config.spacing_m, 0.0, config.rb_budget};
    }
  } else {
    // fixed BS count dropped uniformly over the segment
    std::vector<double> xs(config.n_bs);
    for (auto& x : xs) x = rng.uniform(0.0, sc.highway_length_m);
    std::sort(xs.begin(), xs.end());
    for (int n = 0; n < config.n_bs; ++n) {
      sc.base_stations[n] = {xs[n], 0.0, config.rb_budget};
    }
  }

  sc.vehicles.resize(config.n_vehicles);
  const std::size_t K = sc.messages.size();
  for (auto& veh : sc.vehicles) {
    veh.x_m = rng.uniform(0.0, sc.highway_length_m);
    veh.y_m = config.lateral_offset_m;
    veh.speed_kmh = rng.uniform(config.speed_low_kmh, config.speed_high_kmh);
    veh.interest.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      veh.interest[k] = config.interest_prob >= 1.0 ? 1 : (rng.bernoulli(config.interest_prob) ? 1 : 0);
    }
  }

  const std::size_t N = sc.num_bs();
  const std::size_t V = sc.num_vehicles();
  Matrix<double> shadowing(N, V, 0.0);
  Matrix<std::uint8_t> los(N, V, 0);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t v = 0; v < V; ++v) {
      shadowing(n, v) =
          sc.channel.shadowing_enabled ? rng.normal(0.0, sc.channel.shadowing_sigma_db) : 0.0;
      los(n, v) = rng.bernoulli(0.5) ? 1 : 0;  // NLOS:LOS 1:1
    }
  }
  out.channel = realize_sinr(sc, std::move(shadowing), std::move(los));
  return out;
}

int step_mobility(Scenario& scenario, ChannelRealization& channel, Matrix<std::uint8_t>& y,
                  int dt_slots) {
  const double dt_s = static_cast<double>(dt_slots) / scenario.slots_per_second;
  for (auto& veh : scenario.vehicles) {
    double dx = veh.speed_kmh / 3.6 * dt_s;
    veh.x_m += dx;
    if (scenario.highway_length_m > 0.0) {
      veh.x_m = std::fmod(veh.x_m, scenario.highway_length_m);
      if (veh.x_m < 0.0) veh.x_m += scenario.highway_length_m;
    }
  }
  channel = realize_sinr(scenario, channel.shadowing_db, channel.los);

  int handoffs = 0;
  const std::size_t N = scenario.num_bs();
  const std::size_t V = scenario.num_vehicles();
  for (std::size_t v = 0; v < V; ++v) {
    std::size_t best = 0, cur = 0;
    for (std::size_t n = 0; n < N; ++n) {
      if (y(n, v)) cur = n;
      if (channel.sinr_db(n, v) > channel.sinr_db(best, v)) best = n;
    }
    if (best != cur) {
      y(cur, v) = 0;
      y(best, v) = 1;
      ++handoffs;
    }
  }
  return handoffs;
}

}  // namespace vmcast
