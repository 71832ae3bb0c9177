#pragma once

#include <string>
#include <vector>

#include "vmcast/mcs.hpp"
#include "vmcast/model.hpp"
#include "vmcast/util.hpp"

namespace vmcast {

/// Sustained bits/second one RB position delivers when granted every slot:
/// 12 subcarriers x 14 symbols x efficiency(q) x slots per second.
/// Throws std::domain_error for q = 0 (no transmission).
double rb_data_rate(int cqi, const McsTable& table, int slots_per_second);

/// RBs needed to carry data_rate_bps at per-RB rate rd and FEC code rate f:
/// ceil(d / (rd * f)).
int rb_count(double data_rate_bps, double rd_bps, double code_rate);

/// End-to-end decode probability: at least ceil(rb * f) of rb transmitted
/// blocks received, each independently with probability p. The interest and
/// association gates are applied by the caller.
double ps_success(int rb, double code_rate, double p);

/// Step utility: weight * data rate when ps meets the reliability target
/// (inclusive), else zero.
double utility(double ps, const MessageType& msg);

/// The joint decision state: per-(BS, type) CQI, FEC code rate and RB count,
/// plus the per-vehicle association matrix y (row n, column v).
struct Allocation {
  Matrix<int> q;            // N x K, CQI in 1..15 (rows with rb = 0 are inert)
  Matrix<double> f;         // N x K, code rate in (0, 1]
  Matrix<int> rb;           // N x K
  Matrix<std::uint8_t> y;   // N x V, one 1 per column

  static Allocation empty(std::size_t n_bs, std::size_t n_veh, std::size_t n_msg);

  /// Serving BS of vehicle v (first row with a 1; -1 if unassociated).
  int serving_bs(std::size_t v) const;

  std::string to_json() const;
  static Allocation from_json(const std::string& text);

  bool operator==(const Allocation&) const = default;
};

struct Violation {
  std::string constraint;  // "rb_budget", "rate_demand", "association"
  int n = -1;
  int k = -1;
  int v = -1;
  double slack = 0.0;
};

/// Empty iff the allocation satisfies the RB budgets, the per-type rate
/// demands (for granted types) and the one-BS-per-vehicle rule.
std::vector<Violation> check_feasibility(const Allocation& alloc, const Scenario& scenario);

/// Per-RB success probability of link (n, v) when transmitting at CQI q:
/// Rician/Rayleigh outage complement at the CQI's protection ratio.
double link_rb_success(const Scenario& scenario, const ChannelRealization& channel,
                       std::size_t n, std::size_t v, int q,
                       const McsTable& table = McsTable::builtin());

/// Decode probability of message k at vehicle v from its serving BS under
/// alloc, without the interest gate.
double allocation_ps(const Allocation& alloc, const Scenario& scenario,
                     const ChannelRealization& channel, std::size_t n, std::size_t v,
                     std::size_t k, const McsTable& table = McsTable::builtin());

/// Total step utility over all (BS, vehicle, type) triples.
double system_utility(const Allocation& alloc, const Scenario& scenario,
                      const ChannelRealization& channel,
                      const McsTable& table = McsTable::builtin());

}  // namespace vmcast
