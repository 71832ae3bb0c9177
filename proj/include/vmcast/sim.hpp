#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmcast/model.hpp"
#include "vmcast/solvers.hpp"

namespace vmcast {

enum class Deployment { kFixedSpacing, kBinomialPointProcess };

struct ScenarioConfig {
  int n_bs = 5;
  Deployment deployment = Deployment::kFixedSpacing;
  double spacing_m = 1000.0;
  double cell_radius_m = 500.0;
  double lateral_offset_m = 10.0;
  int n_vehicles = 250;
  double speed_low_kmh = 90.0;
  double speed_high_kmh = 110.0;
  /// probability a vehicle subscribes to each message type (1 = everyone
  /// receives every type)
  double interest_prob = 1.0;
  std::vector<MessageType> messages;  // empty = Table IV defaults
  int rb_budget = 30;
  int slots = 1000;
  int slots_per_second = 1000;
  int replications = 20;
  std::uint64_t seed = 1;
  std::vector<int> cqi_candidates;  // empty = 1..15
  ChannelParams channel;

  void validate() const;  // throws ConfigError with field-level messages
};

struct SolverConfig {
  std::vector<std::string> solvers = {"baseline", "heuristic", "hsca"};
  HscaParams hsca;
  ExhaustiveParams exhaustive;
  int resolve_period_slots = 100;
};

struct SweepConfig {
  /// one of: rb_budget, n_vehicles, cell_radius_m, speed_avg_kmh,
  /// datarate_level, deployment, none
  std::string parameter = "none";
  std::vector<double> values;
};

struct CampaignConfig {
  ScenarioConfig scenario;
  SolverConfig solver;
  SweepConfig sweep;
  std::string out_dir = "out";
  int jobs = 1;

  static CampaignConfig from_json_file(const std::string& path);
  static CampaignConfig from_json_text(const std::string& text);
  std::string to_json() const;  // fully resolved config echo
  void validate() const;
};

/// Apply one sweep value to a copy of the scenario/solver config.
CampaignConfig apply_sweep_value(const CampaignConfig& base, const std::string& parameter,
                                 double value);

struct GeneratedScenario {
  Scenario scenario;
  ChannelRealization channel;
};

/// Deterministic scenario + channel realization from (config, seed).
GeneratedScenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

/// Advance vehicle positions by dt_slots slots (slot = 1/slots_per_second s),
/// wrap around the highway, recompute the SINR matrix against the frozen
/// shadowing/LOS state, and re-attach any vehicle whose serving BS is no
/// longer its SINR argmax. Returns the number of handoffs.
int step_mobility(Scenario& scenario, ChannelRealization& channel, Matrix<std::uint8_t>& y,
                  int dt_slots);

struct ReplicationResult {
  double mean_utility = 0.0;
  std::vector<double> throughput;  // mean satisfied vehicles per type
  double solver_time_ms = 0.0;
  int solves = 0;
  bool failed = false;
  std::string error;
};

struct SweepPointResult {
  double sweep_value = 0.0;
  std::string solver;
  double mean_utility = 0.0;
  double ci95 = 0.0;
  std::vector<double> throughput;
  double mean_runtime_ms = 0.0;
  std::vector<double> per_rep_utility;  // paired-analysis input
  std::vector<int> failed_reps;
};

struct CampaignResult {
  std::vector<SweepPointResult> points;
  std::vector<std::string> errors;
};

using SolveFn =
    std::function<SolverResult(const Scenario&, const ChannelRealization&, const SolverConfig&)>;

SolverResult run_solver(const std::string& name, const Scenario& scenario,
                        const ChannelRealization& channel, const SolverConfig& cfg);

/// Run the full campaign: per sweep value x solver x replication, slot-level
/// accounting with periodic re-solving. Replications derive their seeds from
/// the root seed and are paired across solvers and sweep values.
CampaignResult run_campaign(const CampaignConfig& config);

/// CSV with one row per (sweep value, solver); schema documented in README.
std::string campaign_csv(const CampaignResult& result, std::size_t n_msg);
std::string paired_diff_csv(const CampaignResult& result);

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result,
                            bool paired_table);

}  // namespace vmcast
