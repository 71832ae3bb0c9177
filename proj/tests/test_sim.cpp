#include <cmath>

#include "doctest.h"
#include "vmcast/association.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/sim.hpp"

using namespace vmcast;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_bs = 3;
  cfg.n_vehicles = 12;
  cfg.rb_budget = 10;
  cfg.slots = 50;
  cfg.replications = 4;
  cfg.messages = {{200e3, 0.9, 1.0}, {500e3, 0.9, 1.0}};
  return cfg;
}

}  // namespace

TEST_CASE("fixed spacing drops BSs on the kilometer grid") {
  ScenarioConfig cfg;
  cfg.n_bs = 5;
  cfg.n_vehicles = 1;
  auto gen = generate_scenario(cfg, 1);
  for (int n = 0; n < 5; ++n) {
    CHECK(gen.scenario.base_stations[n].x_m == doctest::Approx(1000.0 * n));
    CHECK(gen.scenario.base_stations[n].rb_budget == cfg.rb_budget);
  }
  CHECK(gen.scenario.highway_length_m == doctest::Approx(5000.0));
}

TEST_CASE("same seed, same scenario, bit for bit") {
  auto cfg = small_config();
  auto a = generate_scenario(cfg, 99);
  auto b = generate_scenario(cfg, 99);
  CHECK(a.scenario == b.scenario);
  CHECK(a.channel == b.channel);
  auto c = generate_scenario(cfg, 100);
  CHECK(a.channel.sinr_db != c.channel.sinr_db);
}

TEST_CASE("binomial deployment is uniform over the segment") {
  ScenarioConfig cfg = small_config();
  cfg.deployment = Deployment::kBinomialPointProcess;
  cfg.n_bs = 5;
  const int kBins = 10;
  const double len = cfg.n_bs * cfg.spacing_m;
  int counts[kBins] = {0};
  int total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gen = generate_scenario(cfg, rep_seed(7, seed));
    for (const auto& bs : gen.scenario.base_stations) {
      int bin = std::min(kBins - 1, static_cast<int>(bs.x_m / len * kBins));
      ++counts[bin];
      ++total;
    }
  }
  double expected = static_cast<double>(total) / kBins;
  double chi2 = 0.0;
  for (int b = 0; b < kBins; ++b) {
    chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  CHECK(chi2 < 21.666);  // chi-square 99th percentile, 9 degrees of freedom
}

TEST_CASE("zero speed leaves positions untouched") {
  auto cfg = small_config();
  cfg.speed_low_kmh = cfg.speed_high_kmh = 0.0;
  auto gen = generate_scenario(cfg, 3);
  auto before = gen.scenario.vehicles;
  auto y = initial_association(gen.channel);
  int handoffs = step_mobility(gen.scenario, gen.channel, y, 10);
  CHECK(handoffs == 0);
  for (std::size_t v = 0; v < before.size(); ++v) {
    CHECK(gen.scenario.vehicles[v].x_m == before[v].x_m);
  }
}

TEST_CASE("displacement follows speed times slot time") {
  auto cfg = small_config();
  cfg.speed_low_kmh = cfg.speed_high_kmh = 100.0;
  auto gen = generate_scenario(cfg, 3);
  double x0 = gen.scenario.vehicles[0].x_m;
  auto y = initial_association(gen.channel);
  step_mobility(gen.scenario, gen.channel, y, 1000);  // one second
  double moved = gen.scenario.vehicles[0].x_m - x0;
  if (moved < 0) moved += gen.scenario.highway_length_m;
  CHECK(moved == doctest::Approx(27.77777777778).epsilon(1e-9));
}

TEST_CASE("crossing the midpoint hands the vehicle off") {
  ScenarioConfig cfg;
  cfg.n_bs = 2;
  cfg.n_vehicles = 1;
  cfg.channel.shadowing_enabled = false;
  cfg.speed_low_kmh = cfg.speed_high_kmh = 100.0;
  auto gen = generate_scenario(cfg, 11);
  // park the vehicle just before the midpoint between BS 0 and BS 1
  gen.scenario.vehicles[0].x_m = 499.0;
  gen.channel = realize_sinr(gen.scenario, gen.channel.shadowing_db, gen.channel.los);
  // LOS state must match on both links for the distance argument to decide
  gen.channel.los(0, 0) = gen.channel.los(1, 0) = 1;
  auto y = initial_association(gen.channel);
  CHECK(y(0, 0) == 1);
  int handoffs = 0;
  for (int slot = 0; slot < 100 && handoffs == 0; ++slot) {
    handoffs += step_mobility(gen.scenario, gen.channel, y, 1);
  }
  CHECK(handoffs == 1);
  CHECK(y(1, 0) == 1);
  CHECK(gen.scenario.vehicles[0].x_m > 500.0);
  CHECK(gen.scenario.vehicles[0].x_m < 503.0);
}

TEST_CASE("one static replication equals one solve") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 1;
  cfg.scenario.replications = 1;
  cfg.scenario.speed_low_kmh = cfg.scenario.speed_high_kmh = 0.0;
  cfg.solver.solvers = {"heuristic"};
  auto result = run_campaign(cfg);
  REQUIRE(result.points.size() == 1);

  auto gen = generate_scenario(cfg.scenario, rep_seed(cfg.scenario.seed, 0));
  auto solo = heuristic_solve(gen.scenario, gen.channel);
  CHECK(result.points[0].mean_utility == doctest::Approx(solo.utility).epsilon(1e-12));
}

TEST_CASE("campaigns are deterministic") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 40;
  cfg.solver.solvers = {"baseline", "heuristic"};
  auto r1 = run_campaign(cfg);
  auto r2 = run_campaign(cfg);
  CHECK(campaign_csv(r1, 2) == campaign_csv(r2, 2));
  cfg.jobs = 3;  // concurrency must not change the bytes
  auto r3 = run_campaign(cfg);
  CHECK(campaign_csv(r1, 2) == campaign_csv(r3, 2));
}

TEST_CASE("utility equals the weighted throughput sum") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 30;
  cfg.scenario.replications = 2;
  cfg.solver.solvers = {"heuristic"};
  auto result = run_campaign(cfg);
  const auto& pt = result.points[0];
  const auto msgs = cfg.scenario.messages;
  double recon = 0.0;
  for (std::size_t k = 0; k < msgs.size(); ++k) {
    recon += msgs[k].weight * msgs[k].data_rate_bps * pt.throughput[k];
  }
  CHECK(pt.mean_utility == doctest::Approx(recon).epsilon(1e-9));
  for (std::size_t k = 0; k < msgs.size(); ++k) {
    CHECK(pt.throughput[k] <= cfg.scenario.n_vehicles);
  }
}

TEST_CASE("confidence interval shrinks with replications") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 1;
  cfg.scenario.n_vehicles = 20;
  cfg.solver.solvers = {"baseline"};

  cfg.scenario.replications = 12;
  auto r_small = run_campaign(cfg);
  cfg.scenario.replications = 48;
  auto r_big = run_campaign(cfg);
  double ci_small = r_small.points[0].ci95;
  double ci_big = r_big.points[0].ci95;
  REQUIRE(ci_small > 0.0);
  // quadrupling replications should roughly halve the half-width
  CHECK(ci_big < ci_small * 0.85);
  CHECK(ci_big > ci_small * 0.2);
}

TEST_CASE("failed replications are recorded, not silently dropped") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 1;
  cfg.scenario.replications = 2;
  cfg.solver.solvers = {"exhaustive"};
  cfg.solver.exhaustive.state_cap = 1.0;  // force the refusal path
  auto result = run_campaign(cfg);
  REQUIRE(result.points.size() == 1);
  CHECK(result.points[0].failed_reps.size() == 2);
  CHECK(result.errors.size() == 2);
  CHECK(result.errors[0].find("state cap") != std::string::npos);
}

TEST_CASE("sweep values spread into per-point configs") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.slots = 1;
  cfg.scenario.replications = 2;
  cfg.solver.solvers = {"baseline"};
  cfg.sweep.parameter = "rb_budget";
  cfg.sweep.values = {4, 8, 12};
  auto result = run_campaign(cfg);
  REQUIRE(result.points.size() == 3);
  CHECK(result.points[0].sweep_value == 4);
  CHECK(result.points[2].sweep_value == 12);
  // more budget never hurts the mean on paired seeds
  CHECK(result.points[2].mean_utility >= result.points[0].mean_utility - 1e-9);
}

TEST_CASE("radius sweep rescales spacing") {
  CampaignConfig base;
  auto swept = apply_sweep_value(base, "cell_radius_m", 800.0);
  CHECK(swept.scenario.cell_radius_m == 800.0);
  CHECK(swept.scenario.spacing_m == 1600.0);
  auto lvl = apply_sweep_value(base, "datarate_level", 3);
  CHECK(lvl.scenario.messages.size() == 5);
  CHECK(lvl.scenario.messages[0].data_rate_bps == doctest::Approx(630e3));
  CHECK(lvl.scenario.messages[3].data_rate_bps == doctest::Approx(1600e3));
}

TEST_CASE("config json round trip preserves every field") {
  CampaignConfig cfg;
  cfg.scenario = small_config();
  cfg.scenario.cqi_candidates = {1, 5, 10, 15};
  cfg.solver.solvers = {"hsca"};
  cfg.solver.hsca.c_constant = 75.0;
  cfg.sweep.parameter = "rb_budget";
  cfg.sweep.values = {10, 20};
  cfg.out_dir = "elsewhere";
  cfg.jobs = 2;
  auto back = CampaignConfig::from_json_text(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("config validation names the offending field") {
  CampaignConfig cfg;
  cfg.scenario.n_vehicles = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(),
                       doctest::Contains("scenario.n_vehicles"), ConfigError);
  CampaignConfig cfg2;
  cfg2.solver.solvers = {"simulated_annealing"};
  CHECK_THROWS_WITH_AS(cfg2.validate(), doctest::Contains("unknown solver"), ConfigError);
}

TEST_CASE("message catalogs load from the data file") {
  auto table4 = load_catalog(std::string(VMCAST_DATA_DIR) + "/message_types.json", "table4");
  REQUIRE(table4.size() == 5);
  CHECK(table4[0].data_rate_bps == doctest::Approx(100e3));
  CHECK(table4[0].reliability == doctest::Approx(0.9999));
  CHECK(table4[3].weight == doctest::Approx(1.5));
  CHECK(table4 == table4_messages());

  auto lvl5 = load_catalog(std::string(VMCAST_DATA_DIR) + "/message_types.json", "level5");
  CHECK(lvl5[0].data_rate_bps == doctest::Approx(1200e3));
  CHECK(lvl5 == table6_messages(5));
}
