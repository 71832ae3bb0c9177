#include <algorithm>
#include <cmath>

#include "vmcast/solvers.hpp"
#include "solve_context.hpp"

namespace vmcast {

namespace {

struct GroupConfig {
  int q = 0;
  int rb = 0;  // 0 = type not served
};

struct BsBest {
  double utility = -1.0;
  int rb_used = 0;
  std::vector<GroupConfig> cfg;
};

/// Best per-BS configuration for a fixed member set: DFS over message types,
/// each either unserved or at (q in grid, rb in [demand(q), budget-left]).
/// Preference: utility, then fewer RBs, then higher CQIs (q scanned
/// descending with strict improvement).
class BsOptimizer {
 public:
  BsOptimizer(const SolveContext& ctx, const std::vector<int>& q_grid,
              const std::vector<int>& serving, std::size_t n)
      : ctx_(ctx), grid_(q_grid), serving_(serving), n_(n) {}

  BsBest run() {
    best_ = BsBest{};
    best_.cfg.assign(ctx_.num_messages(), GroupConfig{});
    cur_.assign(ctx_.num_messages(), GroupConfig{});
    dfs(0, 0, 0.0);
    return best_;
  }

 private:
  void dfs(std::size_t k, int used, double util) {
    if (k == ctx_.num_messages()) {
      bool better = util > best_.utility ||
                    (util == best_.utility && used < best_.rb_used);
      if (better) {
        best_.utility = util;
        best_.rb_used = used;
        best_.cfg = cur_;
      }
      return;
    }
    // unserved
    cur_[k] = GroupConfig{};
    dfs(k + 1, used, util);
    // served at (q, rb)
    const int left = ctx_.budget(n_) - used;
    for (auto it = grid_.rbegin(); it != grid_.rend(); ++it) {
      const int q = *it;
      const int need = ctx_.demand(k, q);
      for (int rb = need; rb <= left; ++rb) {
        double u = ctx_.group_utility(serving_, n_, k, q, rb);
        cur_[k] = {q, rb};
        dfs(k + 1, used + rb, util + u);
      }
    }
    cur_[k] = GroupConfig{};
  }

  const SolveContext& ctx_;
  const std::vector<int>& grid_;
  const std::vector<int>& serving_;
  std::size_t n_;
  BsBest best_;
  std::vector<GroupConfig> cur_;
};

double estimate_states(const SolveContext& ctx, const std::vector<int>& q_grid,
                       std::size_t n_assignable) {
  double per_bs = 0.0;
  for (std::size_t n = 0; n < ctx.num_bs(); ++n) {
    double combos = 1.0;
    for (std::size_t k = 0; k < ctx.num_messages(); ++k) {
      double c = 1.0;  // unserved
      for (int q : q_grid) {
        int span = ctx.budget(n) - ctx.demand(k, q) + 1;
        if (span > 0) c += span;
      }
      combos *= c;
    }
    per_bs += combos;
  }
  return std::pow(static_cast<double>(ctx.num_bs()), static_cast<double>(n_assignable)) * per_bs;
}

}  // namespace

SolverResult exhaustive_solve(const Scenario& scenario, const ChannelRealization& channel,
                              const ExhaustiveParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  SolveContext ctx(scenario, channel);
  const std::size_t N = ctx.num_bs();
  const std::size_t V = ctx.num_vehicles();
  const std::size_t K = ctx.num_messages();

  std::vector<int> q_grid = params.q_grid;
  std::sort(q_grid.begin(), q_grid.end());
  // honor the scenario's candidate restriction as well
  std::vector<int> grid;
  for (int q : q_grid) {
    if (std::find(ctx.candidates().begin(), ctx.candidates().end(), q) != ctx.candidates().end())
      grid.push_back(q);
  }
  if (grid.empty()) grid = ctx.candidates();

  // vehicles with no interests never affect utility; pin them to their
  // best-SINR BS instead of enumerating
  std::vector<std::size_t> assignable;
  std::vector<int> serving(V, 0);
  for (std::size_t v = 0; v < V; ++v) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < N; ++n) {
      if (channel.sinr_db(n, v) > channel.sinr_db(best, v)) best = n;
    }
    serving[v] = static_cast<int>(best);
    bool interested = false;
    for (std::size_t k = 0; k < K; ++k) interested |= (scenario.vehicles[v].interest[k] != 0);
    if (interested && N > 1) assignable.push_back(v);
  }

  double est = estimate_states(ctx, grid, assignable.size());
  if (est > params.state_cap) {
    throw ExhaustiveCapError("exhaustive search size " + std::to_string(est) +
                             " exceeds state cap " + std::to_string(params.state_cap));
  }

  double best_u = -1.0;
  int best_rb_used = 0;
  std::vector<int> best_serving;
  std::vector<BsBest> best_cfg;

  // mixed-radix counter over assignable vehicles' serving BS
  std::vector<std::size_t> digits(assignable.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < assignable.size(); ++i)
      serving[assignable[i]] = static_cast<int>(digits[i]);

    double total = 0.0;
    int rb_used = 0;
    std::vector<BsBest> cfg(N);
    for (std::size_t n = 0; n < N; ++n) {
      BsOptimizer opt(ctx, grid, serving, n);
      cfg[n] = opt.run();
      total += cfg[n].utility;
      rb_used += cfg[n].rb_used;
    }
    if (total > best_u || (total == best_u && rb_used < best_rb_used)) {
      best_u = total;
      best_rb_used = rb_used;
      best_serving = serving;
      best_cfg = std::move(cfg);
    }

    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (++digits[i] < N) break;
      digits[i] = 0;
    }
    if (i == digits.size()) break;
    if (digits.empty()) break;
  }

  Allocation alloc = Allocation::empty(N, V, K);
  for (std::size_t v = 0; v < V; ++v) alloc.y(best_serving[v], v) = 1;
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      const auto& c = best_cfg[n].cfg[k];
      if (c.rb > 0) {
        alloc.q(n, k) = c.q;
        alloc.rb(n, k) = c.rb;
        alloc.f(n, k) = static_cast<double>(ctx.demand(k, c.q)) / c.rb;
      }
    }
  }

  SolverResult res;
  res.alloc = std::move(alloc);
  res.utility = system_utility(res.alloc, scenario, channel);
  res.iterations = 1;
  res.wall_time = std::chrono::steady_clock::now() - t0;
  return res;
}

}  // namespace vmcast
