#pragma once

#include <vector>

#include "vmcast/link_model.hpp"
#include "vmcast/model.hpp"
#include "vmcast/util.hpp"

namespace vmcast {

/// Shared per-solve tables: integer-CQI link success probabilities, per-type
/// RB demands, group membership, and the minimum RB count at which each
/// vehicle's decode probability meets its type's reliability target.
class SolveContext {
 public:
  SolveContext(const Scenario& scenario, const ChannelRealization& channel);

  const Scenario& scenario() const { return *scenario_; }
  const ChannelRealization& channel() const { return *channel_; }

  std::size_t num_bs() const { return N_; }
  std::size_t num_vehicles() const { return V_; }
  std::size_t num_messages() const { return K_; }
  int budget(std::size_t n) const { return scenario_->base_stations[n].rb_budget; }
  const std::vector<int>& candidates() const { return candidates_; }

  /// Per-RB success of link (n, v) at integer CQI q (lazily cached).
  double p(std::size_t n, std::size_t v, int q) const;

  /// Source blocks needed by type k at CQI q (Eq-8 demand with F = 1).
  int demand(std::size_t k, int q) const { return demand_[k * 16 + q]; }

  /// Minimal rb >= demand(k, q) with tail(rb, demand, p(n,v,q)) >= P_k, or
  /// -1 when no rb up to the BS budget reaches the target.
  int min_rb(std::size_t n, std::size_t k, int q, std::size_t v) const;

  /// Vehicles interested in type k and attached to BS n under `serving`.
  std::vector<std::size_t> group(const std::vector<int>& serving, std::size_t n,
                                 std::size_t k) const;

  /// Utility of group (n, k) transmitting at (q, rb) with F = demand/rb.
  double group_utility(const std::vector<int>& serving, std::size_t n, std::size_t k, int q,
                       int rb) const;

  /// Density greedy: repeatedly apply the (type, CQI, RB-count) change with
  /// the best utility gain per added RB at BS n. allow_fec=false restricts
  /// configurations to rb = demand (F = 1) as the no-FEC baseline requires.
  /// Same-RB requalification counts as a free move.
  void greedy_fill(const std::vector<int>& serving, Allocation& alloc, bool allow_fec) const;

  /// serving[] vector from an association matrix.
  static std::vector<int> serving_of(const Matrix<std::uint8_t>& y);

 private:
  const Scenario* scenario_;
  const ChannelRealization* channel_;
  std::size_t N_, V_, K_;
  std::vector<int> candidates_;
  std::vector<int> demand_;                  // K x 16
  mutable std::vector<double> p_cache_;      // N x V x 16, NaN = not computed
  mutable std::vector<int> min_rb_cache_;    // N x K x 16 x V, -2 = not computed
};

}  // namespace vmcast
