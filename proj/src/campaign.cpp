#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vmcast/association.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/sim.hpp"

namespace vmcast {

SolverResult run_solver(const std::string& name, const Scenario& scenario,
                        const ChannelRealization& channel, const SolverConfig& cfg) {
  if (name == "baseline") return baseline_solve(scenario, channel);
  if (name == "heuristic") return heuristic_solve(scenario, channel);
  if (name == "hsca") return hsca_solve(scenario, channel, cfg.hsca);
  if (name == "exhaustive") return exhaustive_solve(scenario, channel, cfg.exhaustive);
  throw ConfigError("unknown solver: " + name);
}

namespace {

ReplicationResult run_replication(const CampaignConfig& cfg, const std::string& solver,
                                  std::uint64_t seed) {
  ReplicationResult rep;
  try {
    auto gen = generate_scenario(cfg.scenario, seed);
    Scenario& sc = gen.scenario;
    ChannelRealization& ch = gen.channel;
    const std::size_t N = sc.num_bs();
    const std::size_t V = sc.num_vehicles();
    const std::size_t K = sc.num_messages();

    Allocation alloc = Allocation::empty(N, V, K);
    Matrix<std::uint8_t> y(N, V, 0);
    rep.throughput.assign(K, 0.0);

    double utility_sum = 0.0;
    for (int slot = 0; slot < cfg.scenario.slots; ++slot) {
      if (slot % cfg.solver.resolve_period_slots == 0) {
        SolverResult sr = run_solver(solver, sc, ch, cfg.solver);
        alloc = std::move(sr.alloc);
        y = alloc.y;
        rep.solver_time_ms += sr.wall_time.count() * 1e3;
        rep.solves += 1;
      }
      // slot accounting: decode probability against the current channel and
      // association state, independent of any solver bookkeeping
      double slot_utility = 0.0;
      for (std::size_t v = 0; v < V; ++v) {
        int n = -1;
        for (std::size_t nn = 0; nn < N; ++nn) {
          if (y(nn, v)) n = static_cast<int>(nn);
        }
        if (n < 0) continue;
        for (std::size_t k = 0; k < K; ++k) {
          if (!sc.vehicles[v].interest[k] || alloc.rb(n, k) <= 0) continue;
          double ps = allocation_ps(alloc, sc, ch, n, v, k);
          if (ps >= sc.messages[k].reliability) {
            slot_utility += sc.messages[k].weight * sc.messages[k].data_rate_bps;
            rep.throughput[k] += 1.0;
          }
        }
      }
      utility_sum += slot_utility;
      if (slot + 1 < cfg.scenario.slots) step_mobility(sc, ch, y, 1);
    }
    rep.mean_utility = utility_sum / cfg.scenario.slots;
    for (auto& t : rep.throughput) t /= cfg.scenario.slots;
  } catch (const std::exception& e) {
    rep.failed = true;
    rep.error = e.what();
  }
  return rep;
}

void aggregate_point(SweepPointResult& pt, const std::vector<ReplicationResult>& reps,
                     std::size_t n_msg) {
  pt.throughput.assign(n_msg, 0.0);
  std::vector<double> utils;
  double runtime = 0.0;
  int solves = 0;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (reps[r].failed) {
      pt.failed_reps.push_back(static_cast<int>(r));
      pt.per_rep_utility.push_back(std::nan(""));
      continue;
    }
    utils.push_back(reps[r].mean_utility);
    pt.per_rep_utility.push_back(reps[r].mean_utility);
    for (std::size_t k = 0; k < n_msg; ++k) pt.throughput[k] += reps[r].throughput[k];
    runtime += reps[r].solver_time_ms;
    solves += reps[r].solves;
  }
  const std::size_t n = utils.size();
  if (n == 0) return;
  double mean = 0.0;
  for (double u : utils) mean += u;
  mean /= n;
  double var = 0.0;
  for (double u : utils) var += (u - mean) * (u - mean);
  pt.mean_utility = mean;
  pt.ci95 = n > 1 ? 1.96 * std::sqrt(var / (n - 1)) / std::sqrt(double(n)) : 0.0;
  for (auto& t : pt.throughput) t /= n;
  pt.mean_runtime_ms = solves > 0 ? runtime / solves : 0.0;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  CampaignResult out;

  std::vector<double> sweep_values = config.sweep.values;
  if (config.sweep.parameter == "none" || sweep_values.empty()) {
    sweep_values = {static_cast<double>(config.scenario.rb_budget)};
  }

  for (double value : sweep_values) {
    CampaignConfig point_cfg = config.sweep.parameter == "none"
                                   ? config
                                   : apply_sweep_value(config, config.sweep.parameter, value);
    for (const auto& solver : config.solver.solvers) {
      const int R = point_cfg.scenario.replications;
      std::vector<ReplicationResult> reps(R);
      const int jobs = std::max(1, config.jobs);
      if (jobs == 1) {
        for (int r = 0; r < R; ++r) {
          reps[r] = run_replication(point_cfg, solver, rep_seed(point_cfg.scenario.seed, r));
        }
      } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
          workers.emplace_back([&, w] {
            for (int r = w; r < R; r += jobs) {
              reps[r] = run_replication(point_cfg, solver, rep_seed(point_cfg.scenario.seed, r));
            }
          });
        }
        for (auto& t : workers) t.join();
      }
      SweepPointResult pt;
      pt.sweep_value = value;
      pt.solver = solver;
      aggregate_point(pt, reps, point_cfg.scenario.messages.empty()
                                    ? table4_messages().size()
                                    : point_cfg.scenario.messages.size());
      for (int r : pt.failed_reps) {
        out.errors.push_back("sweep=" + std::to_string(value) + " solver=" + solver +
                             " replication=" + std::to_string(r) + " failed: " + reps[r].error);
      }
      out.points.push_back(std::move(pt));
    }
  }
  return out;
}

std::string campaign_csv(const CampaignResult& result, std::size_t n_msg) {
  std::ostringstream os;
  os << "sweep_value,solver,mean_utility,ci95";
  for (std::size_t k = 1; k <= n_msg; ++k) os << ",throughput_type_" << k;
  os << ",mean_runtime_ms\n";
  os.precision(10);
  for (const auto& pt : result.points) {
    os << pt.sweep_value << ',' << pt.solver << ',' << pt.mean_utility << ',' << pt.ci95;
    for (std::size_t k = 0; k < n_msg; ++k)
      os << ',' << (k < pt.throughput.size() ? pt.throughput[k] : 0.0);
    os << ',' << pt.mean_runtime_ms << '\n';
  }
  return os.str();
}

std::string paired_diff_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << "sweep_value,solver_a,solver_b,mean_diff,ci95_diff,n\n";
  os.precision(10);
  // group points by sweep value preserving order
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    for (std::size_t j = 0; j < result.points.size(); ++j) {
      const auto& a = result.points[i];
      const auto& b = result.points[j];
      if (i == j || a.sweep_value != b.sweep_value || a.solver >= b.solver) continue;
      std::vector<double> diffs;
      for (std::size_t r = 0; r < std::min(a.per_rep_utility.size(), b.per_rep_utility.size());
           ++r) {
        double d = a.per_rep_utility[r] - b.per_rep_utility[r];
        if (!std::isnan(d)) diffs.push_back(d);
      }
      if (diffs.empty()) continue;
      double mean = 0.0;
      for (double d : diffs) mean += d;
      mean /= diffs.size();
      double var = 0.0;
      for (double d : diffs) var += (d - mean) * (d - mean);
      double ci = diffs.size() > 1
                      ? 1.96 * std::sqrt(var / (diffs.size() - 1)) / std::sqrt(double(diffs.size()))
                      : 0.0;
      os << a.sweep_value << ',' << a.solver << ',' << b.solver << ',' << mean << ',' << ci << ','
         << diffs.size() << '\n';
    }
  }
  return os.str();
}

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result,
                            bool paired_table) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const std::size_t n_msg =
      config.scenario.messages.empty() ? table4_messages().size() : config.scenario.messages.size();

  std::ofstream csv(fs::path(config.out_dir) / "campaign.csv");
  csv << campaign_csv(result, n_msg);

  if (paired_table) {
    std::ofstream diff(fs::path(config.out_dir) / "paired_diff.csv");
    diff << paired_diff_csv(result);
  }

  nlohmann::json manifest;
  manifest["config"] = nlohmann::json::parse(config.to_json());
  manifest["outputs"] = paired_table
                            ? std::vector<std::string>{"campaign.csv", "paired_diff.csv"}
                            : std::vector<std::string>{"campaign.csv"};
  manifest["errors"] = result.errors;
  std::ofstream mf(fs::path(config.out_dir) / "manifest.json");
  mf << manifest.dump(2) << '\n';
}

}  // namespace vmcast
