#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vmcast/sim.hpp"

namespace vmcast {

namespace {

Deployment deployment_from_string(const std::string& s) {
  if (s == "fixed_spacing") return Deployment::kFixedSpacing;
  if (s == "binomial" || s == "binomial_point_process") return Deployment::kBinomialPointProcess;
  throw ConfigError("scenario.deployment: unknown value '" + s + "'");
}

std::string deployment_to_string(Deployment d) {
  return d == Deployment::kFixedSpacing ? "fixed_spacing" : "binomial_point_process";
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void ScenarioConfig::validate() const {
  std::vector<std::string> errs;
  if (n_bs < 1) errs.push_back("scenario.n_bs must be >= 1");
  if (n_vehicles < 1) errs.push_back("scenario.n_vehicles must be >= 1");
  if (rb_budget < 0) errs.push_back("scenario.rb_budget must be >= 0");
  if (slots < 1) errs.push_back("scenario.slots must be >= 1");
  if (replications < 1) errs.push_back("scenario.replications must be >= 1");
  if (!(speed_low_kmh <= speed_high_kmh)) errs.push_back("scenario.speed band is empty");
  if (spacing_m <= 0) errs.push_back("scenario.spacing_m must be > 0");
  if (cell_radius_m <= 0) errs.push_back("scenario.cell_radius_m must be > 0");
  if (interest_prob < 0 || interest_prob > 1) errs.push_back("scenario.interest_prob in [0,1]");
  if (channel.rician_k < 0) errs.push_back("channel.rician_k must be >= 0");
  if (channel.interferer_count < 0) errs.push_back("channel.interferer_count must be >= 0");
  if (channel.bandwidth_hz <= 0) errs.push_back("channel.bandwidth_hz must be > 0");
  for (int q : cqi_candidates) {
    if (q < 1 || q > 15) errs.push_back("scenario.cqi_candidates entries must be in 1..15");
  }
  for (std::size_t k = 0; k < messages.size(); ++k) {
    const auto& m = messages[k];
    std::string at = "messages[" + std::to_string(k) + "]";
    if (!(m.data_rate_bps > 0)) errs.push_back(at + ".data_rate_bps must be > 0");
    if (!(m.reliability > 0 && m.reliability < 1)) errs.push_back(at + ".reliability in (0,1)");
    if (m.weight < 0) errs.push_back(at + ".weight must be >= 0");
  }
  if (!errs.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
}

void CampaignConfig::validate() const {
  scenario.validate();
  for (const auto& s : solver.solvers) {
    if (s != "baseline" && s != "heuristic" && s != "hsca" && s != "exhaustive")
      throw ConfigError("solvers: unknown solver '" + s + "'");
  }
  if (!(solver.hsca.c_constant > 0)) throw ConfigError("solver.hsca.c_constant must be > 0");
  if (!(solver.hsca.epsilon > 0)) throw ConfigError("solver.hsca.epsilon must be > 0");
  if (solver.hsca.max_iters < 1) throw ConfigError("solver.hsca.max_iters must be >= 1");
  if (solver.resolve_period_slots < 1)
    throw ConfigError("solver.resolve_period_slots must be >= 1");
  const std::string& p = sweep.parameter;
  if (p != "none" && p != "rb_budget" && p != "n_vehicles" && p != "cell_radius_m" &&
      p != "speed_avg_kmh" && p != "datarate_level" && p != "deployment")
    throw ConfigError("sweep.parameter: unknown value '" + p + "'");
  if (p != "none" && sweep.values.empty()) throw ConfigError("sweep.values must be nonempty");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

CampaignConfig CampaignConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CampaignConfig c;
  if (j.contains("scenario")) {
    const auto& s = j.at("scenario");
    read_if(s, "n_bs", c.scenario.n_bs);
    if (s.contains("deployment"))
      c.scenario.deployment = deployment_from_string(s.at("deployment").get<std::string>());
    read_if(s, "spacing_m", c.scenario.spacing_m);
    read_if(s, "cell_radius_m", c.scenario.cell_radius_m);
    read_if(s, "lateral_offset_m", c.scenario.lateral_offset_m);
    read_if(s, "n_vehicles", c.scenario.n_vehicles);
    if (s.contains("speed_band_kmh")) {
      c.scenario.speed_low_kmh = s.at("speed_band_kmh").at(0).get<double>();
      c.scenario.speed_high_kmh = s.at("speed_band_kmh").at(1).get<double>();
    }
    read_if(s, "interest_prob", c.scenario.interest_prob);
    read_if(s, "rb_budget", c.scenario.rb_budget);
    read_if(s, "slots", c.scenario.slots);
    read_if(s, "slots_per_second", c.scenario.slots_per_second);
    read_if(s, "replications", c.scenario.replications);
    read_if(s, "seed", c.scenario.seed);
    read_if(s, "cqi_candidates", c.scenario.cqi_candidates);
    if (s.contains("messages")) {
      for (const auto& m : s.at("messages")) {
        c.scenario.messages.push_back({m.at("data_rate_bps").get<double>(),
                                       m.at("reliability").get<double>(),
                                       m.at("weight").get<double>()});
      }
    }
  }
  if (j.contains("channel")) {
    const auto& ch = j.at("channel");
    auto& p = c.scenario.channel;
    read_if(ch, "carrier_ghz", p.carrier_ghz);
    read_if(ch, "tx_power_dbm", p.tx_power_dbm);
    read_if(ch, "antenna_gain_dbi", p.antenna_gain_dbi);
    read_if(ch, "shadowing_sigma_db", p.shadowing_sigma_db);
    read_if(ch, "shadowing_enabled", p.shadowing_enabled);
    read_if(ch, "rician_k", p.rician_k);
    read_if(ch, "noise_density_dbm_hz", p.noise_density_dbm_hz);
    read_if(ch, "bandwidth_hz", p.bandwidth_hz);
    read_if(ch, "interferer_count", p.interferer_count);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    read_if(s, "solvers", c.solver.solvers);
    read_if(s, "c_constant", c.solver.hsca.c_constant);
    read_if(s, "epsilon", c.solver.hsca.epsilon);
    read_if(s, "max_iters", c.solver.hsca.max_iters);
    read_if(s, "resolve_period_slots", c.solver.resolve_period_slots);
    read_if(s, "exhaustive_q_grid", c.solver.exhaustive.q_grid);
    read_if(s, "state_cap", c.solver.exhaustive.state_cap);
  }
  if (j.contains("sweep")) {
    read_if(j.at("sweep"), "parameter", c.sweep.parameter);
    read_if(j.at("sweep"), "values", c.sweep.values);
  }
  read_if(j, "out_dir", c.out_dir);
  read_if(j, "jobs", c.jobs);
  return c;
}

CampaignConfig CampaignConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string CampaignConfig::to_json() const {
  nlohmann::json j;
  auto& s = j["scenario"];
  s["n_bs"] = scenario.n_bs;
  s["deployment"] = deployment_to_string(scenario.deployment);
  s["spacing_m"] = scenario.spacing_m;
  s["cell_radius_m"] = scenario.cell_radius_m;
  s["lateral_offset_m"] = scenario.lateral_offset_m;
  s["n_vehicles"] = scenario.n_vehicles;
  s["speed_band_kmh"] = {scenario.speed_low_kmh, scenario.speed_high_kmh};
  s["interest_prob"] = scenario.interest_prob;
  s["rb_budget"] = scenario.rb_budget;
  s["slots"] = scenario.slots;
  s["slots_per_second"] = scenario.slots_per_second;
  s["replications"] = scenario.replications;
  s["seed"] = scenario.seed;
  s["cqi_candidates"] = scenario.cqi_candidates;
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m :
       (scenario.messages.empty() ? table4_messages() : scenario.messages)) {
    msgs.push_back({{"data_rate_bps", m.data_rate_bps},
                    {"reliability", m.reliability},
                    {"weight", m.weight}});
  }
  s["messages"] = msgs;
  auto& ch = j["channel"];
  ch["carrier_ghz"] = scenario.channel.carrier_ghz;
  ch["tx_power_dbm"] = scenario.channel.tx_power_dbm;
  ch["antenna_gain_dbi"] = scenario.channel.antenna_gain_dbi;
  ch["shadowing_sigma_db"] = scenario.channel.shadowing_sigma_db;
  ch["shadowing_enabled"] = scenario.channel.shadowing_enabled;
  ch["rician_k"] = scenario.channel.rician_k;
  ch["noise_density_dbm_hz"] = scenario.channel.noise_density_dbm_hz;
  ch["bandwidth_hz"] = scenario.channel.bandwidth_hz;
  ch["interferer_count"] = scenario.channel.interferer_count;
  auto& so = j["solver"];
  so["solvers"] = solver.solvers;
  so["c_constant"] = solver.hsca.c_constant;
  so["epsilon"] = solver.hsca.epsilon;
  so["max_iters"] = solver.hsca.max_iters;
  so["resolve_period_slots"] = solver.resolve_period_slots;
  so["exhaustive_q_grid"] = solver.exhaustive.q_grid;
  so["state_cap"] = solver.exhaustive.state_cap;
  j["sweep"]["parameter"] = sweep.parameter;
  j["sweep"]["values"] = sweep.values;
  j["out_dir"] = out_dir;
  j["jobs"] = jobs;
  return j.dump(2);
}

CampaignConfig apply_sweep_value(const CampaignConfig& base, const std::string& parameter,
                                 double value) {
  CampaignConfig c = base;
  if (parameter == "rb_budget") {
    c.scenario.rb_budget = static_cast<int>(value);
  } else if (parameter == "n_vehicles") {
    c.scenario.n_vehicles = static_cast<int>(value);
  } else if (parameter == "cell_radius_m") {
    c.scenario.cell_radius_m = value;
    c.scenario.spacing_m = 2.0 * value;  // adjacent coverage areas touch
  } else if (parameter == "speed_avg_kmh") {
    c.scenario.speed_low_kmh = value - 10.0;
    c.scenario.speed_high_kmh = value + 10.0;
  } else if (parameter == "datarate_level") {
    c.scenario.messages = table6_messages(static_cast<int>(value));
  } else if (parameter == "deployment") {
    c.scenario.deployment =
        value == 0 ? Deployment::kFixedSpacing : Deployment::kBinomialPointProcess;
  } else if (parameter != "none") {
    throw ConfigError("unknown sweep parameter: " + parameter);
  }
  return c;
}

}  // namespace vmcast
