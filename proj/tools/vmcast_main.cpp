#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/sim.hpp"
#include "vmcast/validate.hpp"

namespace {

using vmcast::CampaignConfig;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> solver;
  std::optional<std::string> rb_budget;  // single value or lo..hi..step
  std::optional<int> vehicles;
  std::optional<double> radius;
  std::optional<double> speed;
  std::optional<std::string> deployment;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  std::optional<int> replications;
  std::optional<int> slots;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (defaults apply without it)");
  cmd->add_option("--seed", f.seed, "root seed");
  cmd->add_option("--solver", f.solver, "solver: baseline|heuristic|hsca|exhaustive");
  cmd->add_option("--rb-budget", f.rb_budget, "RB budget, a value or a lo..hi..step range");
  cmd->add_option("--vehicles", f.vehicles, "number of vehicles");
  cmd->add_option("--radius", f.radius, "cell radius in meters (spacing = 2x radius)");
  cmd->add_option("--speed", f.speed, "average speed km/h (band = avg +/- 10)");
  cmd->add_option("--deployment", f.deployment, "fixed_spacing|binomial");
  cmd->add_option("--out-dir", f.out_dir, "output directory");
  cmd->add_option("--jobs", f.jobs, "concurrent replications");
  cmd->add_option("--replications", f.replications, "replications per sweep point");
  cmd->add_option("--slots", f.slots, "time slots per replication");
}

std::vector<double> parse_budget_range(const std::string& text) {
  auto p1 = text.find("..");
  if (p1 == std::string::npos) return {std::stod(text)};
  auto p2 = text.find("..", p1 + 2);
  double lo = std::stod(text.substr(0, p1));
  double hi, step = 5.0;
  if (p2 == std::string::npos) {
    hi = std::stod(text.substr(p1 + 2));
  } else {
    hi = std::stod(text.substr(p1 + 2, p2 - p1 - 2));
    step = std::stod(text.substr(p2 + 2));
  }
  if (step <= 0 || hi < lo) throw vmcast::ConfigError("bad --rb-budget range: " + text);
  std::vector<double> values;
  for (double v = lo; v <= hi + 1e-9; v += step) values.push_back(v);
  return values;
}

CampaignConfig build_config(const CommonFlags& f, bool keep_config_solvers) {
  CampaignConfig cfg;
  if (!f.config_path.empty()) {
    cfg = CampaignConfig::from_json_file(f.config_path);
  }
  if (f.seed) cfg.scenario.seed = *f.seed;
  if (f.vehicles) cfg.scenario.n_vehicles = *f.vehicles;
  if (f.radius) {
    cfg.scenario.cell_radius_m = *f.radius;
    cfg.scenario.spacing_m = 2.0 * *f.radius;
  }
  if (f.speed) {
    cfg.scenario.speed_low_kmh = *f.speed - 10.0;
    cfg.scenario.speed_high_kmh = *f.speed + 10.0;
  }
  if (f.deployment) {
    cfg.scenario.deployment = (*f.deployment == "fixed_spacing")
                                  ? vmcast::Deployment::kFixedSpacing
                                  : vmcast::Deployment::kBinomialPointProcess;
    if (*f.deployment != "fixed_spacing" && *f.deployment != "binomial" &&
        *f.deployment != "binomial_point_process")
      throw vmcast::ConfigError("--deployment: unknown value '" + *f.deployment + "'");
  }
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.replications) cfg.scenario.replications = *f.replications;
  if (f.slots) cfg.scenario.slots = *f.slots;
  if (f.rb_budget) {
    auto values = parse_budget_range(*f.rb_budget);
    if (values.size() == 1) {
      cfg.scenario.rb_budget = static_cast<int>(values[0]);
      if (cfg.sweep.parameter == "rb_budget") cfg.sweep = {};
    } else {
      cfg.sweep.parameter = "rb_budget";
      cfg.sweep.values = values;
    }
  }
  if (f.solver && !keep_config_solvers) {
    cfg.solver.solvers = {*f.solver};
  }
  return cfg;
}

void print_summary(const vmcast::CampaignResult& result) {
  std::printf("%12s  %-10s  %16s  %12s  %12s\n", "sweep", "solver", "mean_utility", "ci95",
              "runtime_ms");
  for (const auto& pt : result.points) {
    std::printf("%12g  %-10s  %16.1f  %12.1f  %12.3f\n", pt.sweep_value, pt.solver.c_str(),
                pt.mean_utility, pt.ci95, pt.mean_runtime_ms);
  }
  for (const auto& e : result.errors) std::fprintf(stderr, "warning: %s\n", e.c_str());
}

bool solver_name_ok(const std::string& s) {
  return s == "baseline" || s == "heuristic" || s == "hsca" || s == "exhaustive";
}

int cmd_run(const CommonFlags& flags) {
  if (flags.solver && !solver_name_ok(*flags.solver)) {
    std::fprintf(stderr,
                 "error: unknown solver '%s'\nusage: vmcast run --solver "
                 "baseline|heuristic|hsca|exhaustive [options]\n",
                 flags.solver->c_str());
    return 2;
  }
  CampaignConfig cfg = build_config(flags, /*keep_config_solvers=*/false);
  cfg.validate();
  auto result = vmcast::run_campaign(cfg);
  vmcast::write_campaign_outputs(cfg, result, /*paired_table=*/false);
  print_summary(result);
  return result.errors.empty() ? 0 : 1;
}

int cmd_compare(const CommonFlags& flags) {
  CampaignConfig cfg = build_config(flags, /*keep_config_solvers=*/true);
  cfg.validate();
  if (std::find(cfg.solver.solvers.begin(), cfg.solver.solvers.end(), "exhaustive") !=
      cfg.solver.solvers.end()) {
    // refuse oversize oracle runs up front rather than failing mid-campaign
    auto gen = vmcast::generate_scenario(cfg.scenario, vmcast::rep_seed(cfg.scenario.seed, 0));
    try {
      vmcast::exhaustive_solve(gen.scenario, gen.channel, cfg.solver.exhaustive);
    } catch (const vmcast::ExhaustiveCapError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  auto result = vmcast::run_campaign(cfg);
  vmcast::write_campaign_outputs(cfg, result, /*paired_table=*/true);
  print_summary(result);
  return result.errors.empty() ? 0 : 1;
}

int cmd_validate(const std::string& fixture_dir, double mc_tol_se, int mc_trials) {
  vmcast::ValidateOptions opts;
  if (!fixture_dir.empty()) opts.fixture_dir = fixture_dir;
  opts.mc_tolerance_se = mc_tol_se;
  opts.mc_trials = mc_trials;
  auto checks = vmcast::run_validation(opts);
  bool all_ok = true;
  for (const auto& c : checks) {
    std::printf("[%s] %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    all_ok &= c.passed;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multicast resource allocation simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, cmp_flags;
  auto* run = app.add_subcommand("run", "run one campaign with a single solver");
  add_common_flags(run, run_flags);
  auto* cmp = app.add_subcommand("compare", "run all enabled solvers on paired seeds");
  add_common_flags(cmp, cmp_flags);

  std::string fixture_dir = "data";
  double mc_tol_se = 3.0;
  int mc_trials = 200000;
  auto* val = app.add_subcommand("validate", "run the self-check suite");
  val->add_option("--fixture-dir", fixture_dir, "directory holding mcs_table.csv");
  val->add_option("--mc-tolerance-se", mc_tol_se, "Monte Carlo acceptance band");
  val->add_option("--mc-trials", mc_trials, "Monte Carlo trials per check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (cmp->parsed()) return cmd_compare(cmp_flags);
    if (val->parsed()) return cmd_validate(fixture_dir, mc_tol_se, mc_trials);
  } catch (const vmcast::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
