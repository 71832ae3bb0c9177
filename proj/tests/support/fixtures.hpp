#pragma once

#include <vector>

#include "vmcast/model.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/sim.hpp"

namespace vmcast::testsupport {

/// Scenario with explicit SINR/LOS matrices, bypassing the generator.
inline std::pair<Scenario, ChannelRealization> fixed_scenario(
    const std::vector<std::vector<double>>& sinr_db,
    const std::vector<std::vector<int>>& los, const std::vector<std::vector<int>>& interest,
    const std::vector<MessageType>& messages, const std::vector<int>& budgets) {
  const std::size_t N = sinr_db.size();
  const std::size_t V = sinr_db[0].size();
  Scenario sc;
  sc.messages = messages;
  sc.base_stations.resize(N);
  for (std::size_t n = 0; n < N; ++n) sc.base_stations[n] = {1000.0 * n, 0.0, budgets[n]};
  sc.vehicles.resize(V);
  for (std::size_t v = 0; v < V; ++v) {
    sc.vehicles[v].x_m = 100.0 * v;
    sc.vehicles[v].y_m = 10.0;
    sc.vehicles[v].interest.assign(messages.size(), 1);
    for (std::size_t k = 0; k < messages.size() && k < interest[v].size(); ++k)
      sc.vehicles[v].interest[k] = static_cast<std::uint8_t>(interest[v][k]);
  }
  ChannelRealization ch;
  ch.sinr_db = Matrix<double>(N, V);
  ch.shadowing_db = Matrix<double>(N, V, 0.0);
  ch.los = Matrix<std::uint8_t>(N, V, 0);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t v = 0; v < V; ++v) {
      ch.sinr_db(n, v) = sinr_db[n][v];
      ch.los(n, v) = static_cast<std::uint8_t>(los[n][v]);
    }
  }
  return {std::move(sc), std::move(ch)};
}

/// Random small instance of the kind the oracle can enumerate:
/// N <= 2, V <= 8, K <= 2, budgets in 3..6, CQI candidates {1, 5, 10, 15}.
inline GeneratedScenario make_desk_instance(std::uint64_t seed) {
  Rng rng(seed);
  ScenarioConfig cfg;
  cfg.n_bs = 2;
  cfg.n_vehicles = static_cast<int>(rng.uniform_int(4, 8));
  cfg.rb_budget = static_cast<int>(rng.uniform_int(3, 6));
  cfg.slots = 1;
  cfg.replications = 1;
  cfg.cqi_candidates = {1, 5, 10, 15};
  const int K = static_cast<int>(rng.uniform_int(1, 2));
  cfg.messages.clear();
  for (int k = 0; k < K; ++k) {
    double d = std::exp(rng.uniform(std::log(20e3), std::log(250e3)));
    double rel = std::vector<double>{0.9, 0.99, 0.9999}[rng.uniform_int(0, 2)];
    double w = std::vector<double>{1.0, 1.5, 2.0}[rng.uniform_int(0, 2)];
    cfg.messages.push_back({d, rel, w});
  }
  cfg.interest_prob = 0.85;
  cfg.seed = seed;
  auto gen = generate_scenario(cfg, mix64(seed));
  // keep at least one interested vehicle per type so instances are nontrivial
  for (std::size_t k = 0; k < gen.scenario.messages.size(); ++k) {
    bool any = false;
    for (const auto& veh : gen.scenario.vehicles) any |= (veh.interest[k] != 0);
    if (!any) gen.scenario.vehicles[0].interest[k] = 1;
  }
  return gen;
}

}  // namespace vmcast::testsupport
