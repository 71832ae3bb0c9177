#include "vmcast/model.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace vmcast {

double Scenario::link_distance_m(std::size_t n, std::size_t v) const {
  const auto& bs = base_stations[n];
  const auto& veh = vehicles[v];
  double dx = std::fabs(veh.x_m - bs.x_m);
  if (highway_length_m > 0.0) dx = std::min(dx, highway_length_m - dx);
  double dy = veh.y_m - bs.y_m;
  return std::sqrt(dx * dx + dy * dy);
}

ChannelRealization realize_sinr(const Scenario& scenario, Matrix<double> shadowing_db,
                                Matrix<std::uint8_t> los) {
  const std::size_t n_bs = scenario.num_bs();
  const std::size_t n_veh = scenario.num_vehicles();
  ChannelRealization r;
  r.shadowing_db = std::move(shadowing_db);
  r.los = std::move(los);
  r.sinr_db = Matrix<double>(n_bs, n_veh);
  for (std::size_t n = 0; n < n_bs; ++n) {
    for (std::size_t v = 0; v < n_veh; ++v) {
      r.sinr_db(n, v) = mean_sinr_db(scenario.link_distance_m(n, v), scenario.channel,
                                     r.shadowing_db(n, v));
    }
  }
  return r;
}

std::vector<MessageType> table4_messages() {
  return {
      {100e3, 0.9999, 2.0},
      {1000e3, 0.9, 1.0},
      {2500e3, 0.9, 1.0},
      {50e3, 0.99, 1.5},
      {2000e3, 0.9, 1.0},
  };
}

std::vector<MessageType> table6_messages(int level) {
  static const double rates[5][5] = {
      {50e3, 300e3, 50e3, 1600e3, 2000e3},
      {340e3, 325e3, 112e3, 1600e3, 2000e3},
      {630e3, 350e3, 175e3, 1600e3, 2000e3},
      {920e3, 375e3, 240e3, 1600e3, 2000e3},
      {1200e3, 400e3, 300e3, 1600e3, 2000e3},
  };
  if (level < 1 || level > 5) throw ConfigError("data rate level must be in 1..5");
  auto msgs = table4_messages();
  for (int k = 0; k < 5; ++k) msgs[k].data_rate_bps = rates[level - 1][k];
  return msgs;
}

std::vector<MessageType> load_catalog(const std::string& path, const std::string& catalog_name) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open message catalog: " + path);
  nlohmann::json j;
  in >> j;

  auto parse_msgs = [](const nlohmann::json& arr) {
    std::vector<MessageType> out;
    for (const auto& m : arr) {
      out.push_back({m.at("data_rate_bps").get<double>(), m.at("reliability").get<double>(),
                     m.at("weight").get<double>()});
    }
    return out;
  };

  if (catalog_name == "table4") return parse_msgs(j.at("table4"));
  if (catalog_name.rfind("level", 0) == 0) {
    auto base = parse_msgs(j.at("table4"));
    const auto& rates = j.at("levels").at(catalog_name);
    for (std::size_t k = 0; k < base.size() && k < rates.size(); ++k)
      base[k].data_rate_bps = rates[k].get<double>();
    return base;
  }
  throw ConfigError("unknown catalog: " + catalog_name);
}

}  // namespace vmcast
