#include "solve_context.hpp"

#include <cmath>
#include <limits>

namespace vmcast {

SolveContext::SolveContext(const Scenario& scenario, const ChannelRealization& channel)
    : scenario_(&scenario),
      channel_(&channel),
      N_(scenario.num_bs()),
      V_(scenario.num_vehicles()),
      K_(scenario.num_messages()) {
  candidates_ = scenario.cqi_candidates;
  if (candidates_.empty()) {
    for (int q = 1; q <= 15; ++q) candidates_.push_back(q);
  }
  demand_.assign(K_ * 16, 0);
  for (std::size_t k = 0; k < K_; ++k) {
    for (int q = 1; q <= 15; ++q) {
      double rd = rb_data_rate(q, McsTable::builtin(), scenario.slots_per_second);
      demand_[k * 16 + q] = rb_count(scenario.messages[k].data_rate_bps, rd, 1.0);
    }
  }
  p_cache_.assign(N_ * V_ * 16, std::numeric_limits<double>::quiet_NaN());
  min_rb_cache_.assign(N_ * K_ * 16 * V_, -2);
}

double SolveContext::p(std::size_t n, std::size_t v, int q) const {
  double& slot = p_cache_[(n * V_ + v) * 16 + q];
  if (std::isnan(slot)) slot = link_rb_success(*scenario_, *channel_, n, v, q);
  return slot;
}

int SolveContext::min_rb(std::size_t n, std::size_t k, int q, std::size_t v) const {
  int& slot = min_rb_cache_[((n * K_ + k) * 16 + q) * V_ + v];
  if (slot != -2) return slot;
  const int need = demand(k, q);
  const double target = scenario_->messages[k].reliability;
  const double pv = p(n, v, q);
  const int cap = budget(n);
  slot = -1;
  if (need <= cap && pv > 0.0) {
    // incremental binomial tail in rb: tail(rb+1) = tail(rb) + p * pmf(rb, need-1)
    double tail = std::pow(pv, need);
    double pmf = need * std::pow(pv, need - 1) * (1.0 - pv);  // pmf(rb = need, need-1)
    for (int rb = need; rb <= cap; ++rb) {
      if (tail >= target) {
        slot = rb;
        break;
      }
      tail += pv * pmf;
      pmf *= (rb + 1) * (1.0 - pv) / static_cast<double>(rb + 2 - need);
    }
  }
  return slot;
}

std::vector<std::size_t> SolveContext::group(const std::vector<int>& serving, std::size_t n,
                                             std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < V_; ++v) {
    if (serving[v] == static_cast<int>(n) && scenario_->vehicles[v].interest[k]) out.push_back(v);
  }
  return out;
}

double SolveContext::group_utility(const std::vector<int>& serving, std::size_t n, std::size_t k,
                                   int q, int rb) const {
  if (rb <= 0 || demand(k, q) > rb) return 0.0;
  const auto& msg = scenario_->messages[k];
  double u = 0.0;
  for (std::size_t v = 0; v < V_; ++v) {
    if (serving[v] != static_cast<int>(n) || !scenario_->vehicles[v].interest[k]) continue;
    int r = min_rb(n, k, q, v);
    if (r >= 0 && r <= rb) u += msg.weight * msg.data_rate_bps;
  }
  return u;
}

void SolveContext::greedy_fill(const std::vector<int>& serving, Allocation& alloc,
                               bool allow_fec) const {
  for (std::size_t n = 0; n < N_; ++n) {
    while (true) {
      int used = 0;
      for (std::size_t k = 0; k < K_; ++k) used += alloc.rb(n, k);
      const int left = budget(n) - used;

      // best = (density, fewer added, higher q, lower k)
      double best_density = 0.0;
      int best_added = 0, best_q = -1, best_rb = 0;
      std::size_t best_k = 0;
      bool found = false;
      for (std::size_t k = 0; k < K_; ++k) {
        const int rb_cur = alloc.rb(n, k);
        const double cur =
            rb_cur > 0 ? group_utility(serving, n, k, alloc.q(n, k), rb_cur) : 0.0;
        for (int q : candidates_) {
          const int need = demand(k, q);
          const int lo = allow_fec ? std::max(need, rb_cur > 0 ? rb_cur : 1)
                                   : std::max(need, rb_cur + 1);
          const int hi = allow_fec ? rb_cur + left : need;
          for (int rb2 = lo; rb2 <= hi; ++rb2) {
            const int added = rb2 - rb_cur;
            if (added > left || (!allow_fec && rb2 != need)) continue;
            if (added == 0 && q == alloc.q(n, k)) continue;
            double gain = group_utility(serving, n, k, q, rb2) - cur;
            if (gain <= 0.0) continue;
            double density = added > 0 ? gain / added : std::numeric_limits<double>::infinity();
            bool better = false;
            if (!found || density > best_density) {
              better = true;
            } else if (density == best_density) {
              if (added < best_added) better = true;
              else if (added == best_added && q > best_q) better = true;
              else if (added == best_added && q == best_q && k < best_k) better = true;
            }
            if (better) {
              found = true;
              best_density = density;
              best_added = added;
              best_q = q;
              best_rb = rb2;
              best_k = k;
            }
          }
        }
      }
      if (!found) break;
      alloc.q(n, best_k) = best_q;
      alloc.rb(n, best_k) = best_rb;
      alloc.f(n, best_k) = static_cast<double>(demand(best_k, best_q)) / best_rb;
    }
  }
}

std::vector<int> SolveContext::serving_of(const Matrix<std::uint8_t>& y) {
  std::vector<int> serving(y.cols(), -1);
  for (std::size_t v = 0; v < y.cols(); ++v) {
    for (std::size_t n = 0; n < y.rows(); ++n) {
      if (y(n, v)) serving[v] = static_cast<int>(n);
    }
  }
  return serving;
}

}  // namespace vmcast
