#pragma once

#include <string>
#include <vector>

#include "vmcast/channel.hpp"
#include "vmcast/util.hpp"

namespace vmcast {

/// One multicast message type: sustained data rate, reliability target and
/// utility weight.
struct MessageType {
  double data_rate_bps = 0.0;   // D_k
  double reliability = 0.9;     // P_k
  double weight = 1.0;          // a_k

  bool operator==(const MessageType&) const = default;
};

struct BaseStation {
  double x_m = 0.0;
  double y_m = 0.0;
  int rb_budget = 0;  // RBs reserved per slot for multicast

  bool operator==(const BaseStation&) const = default;
};

struct Vehicle {
  double x_m = 0.0;
  double y_m = 0.0;
  double speed_kmh = 0.0;
  std::vector<std::uint8_t> interest;  // w_v^k over message types

  bool operator==(const Vehicle&) const = default;
};

struct Scenario {
  std::vector<BaseStation> base_stations;
  std::vector<Vehicle> vehicles;
  std::vector<MessageType> messages;
  ChannelParams channel;
  int slots_per_second = 1000;
  double highway_length_m = 0.0;        // wraparound segment
  std::vector<int> cqi_candidates;      // CQIs solvers may select; default 1..15

  std::size_t num_bs() const { return base_stations.size(); }
  std::size_t num_vehicles() const { return vehicles.size(); }
  std::size_t num_messages() const { return messages.size(); }

  /// Wraparound BS-to-vehicle distance including the lateral road offset.
  double link_distance_m(std::size_t n, std::size_t v) const;

  bool operator==(const Scenario&) const = default;
};

/// Frozen per-replication channel state: mean SINR per link, the lognormal
/// shadowing draws and the LOS/NLOS coin flips behind them. Immutable; the
/// mobility step builds a fresh one from the frozen parts.
struct ChannelRealization {
  Matrix<double> sinr_db;       // N x V
  Matrix<double> shadowing_db;  // N x V, frozen for the replication
  Matrix<std::uint8_t> los;     // N x V, 1 = LOS (Rician K), 0 = NLOS (Rayleigh)

  double rician_k(std::size_t n, std::size_t v, const ChannelParams& p) const {
    return los(n, v) ? p.rician_k : 0.0;
  }

  bool operator==(const ChannelRealization&) const = default;
};

/// Recompute the mean-SINR matrix for current vehicle positions, keeping the
/// frozen shadowing and LOS state.
ChannelRealization realize_sinr(const Scenario& scenario, Matrix<double> shadowing_db,
                                Matrix<std::uint8_t> los);

/// Table IV default catalog: five message types.
std::vector<MessageType> table4_messages();

/// Table VI variant: same reliabilities/weights as the default catalog with
/// per-level data rates; level in 1..5.
std::vector<MessageType> table6_messages(int level);

/// Load a message catalog from a JSON file ({"table4": [...]} plus
/// {"levels": {...}}); catalog_name is "table4" or "level1".."level5".
std::vector<MessageType> load_catalog(const std::string& path, const std::string& catalog_name);

}  // namespace vmcast
