#include <algorithm>
#include <cmath>

#include "vmcast/association.hpp"
#include "vmcast/fading.hpp"
#include "vmcast/solvers.hpp"
#include "solve_context.hpp"

namespace vmcast {

SmoothedObjective::SmoothedObjective(const Scenario& scenario, const ChannelRealization& channel,
                                     double c_constant)
    : scenario_(&scenario), channel_(&channel), c_(c_constant) {
  if (!(c_ > 0.0)) throw std::domain_error("smoothing constant must be > 0");
}

int SmoothedObjective::rb_demand(std::size_t k, double q) const {
  const auto& table = McsTable::builtin();
  double rd = 12.0 * 14.0 * table.efficiency_interp(q) * scenario_->slots_per_second;
  return static_cast<int>(std::ceil(scenario_->messages[k].data_rate_bps / rd));
}

double SmoothedObjective::smoothed_term(double ps, const MessageType& msg, double c_constant) {
  return msg.weight * msg.data_rate_bps * 0.5 *
         (std::tanh(c_constant * (ps - msg.reliability)) + 1.0);
}

double SmoothedObjective::term(std::size_t n, std::size_t v, std::size_t k, double q,
                               double y) const {
  const auto& table = McsTable::builtin();
  const auto& msg = scenario_->messages[k];
  const double w = scenario_->vehicles[v].interest[k] ? 1.0 : 0.0;
  const double p = rb_success_prob(table.threshold_db_interp(q), channel_->sinr_db(n, v),
                                   channel_->rician_k(n, v, scenario_->channel));
  const double ps = w * y * std::pow(p, rb_demand(k, q));
  return smoothed_term(ps, msg, c_);
}

double SmoothedObjective::operator()(const AugmentedVector& x) const {
  double u = 0.0;
  for (std::size_t n = 0; n < x.n_bs; ++n) {
    for (std::size_t k = 0; k < x.n_msg; ++k) {
      const double q = x.q_at(n, k);
      for (std::size_t v = 0; v < x.n_veh; ++v) {
        u += term(n, v, k, q, x.y_at(n, v));
      }
    }
  }
  return -u;
}

bool SmoothedObjective::within_budgets(const AugmentedVector& x) const {
  for (std::size_t n = 0; n < x.n_bs; ++n) {
    int sum = 0;
    for (std::size_t k = 0; k < x.n_msg; ++k) sum += rb_demand(k, x.q_at(n, k));
    if (sum > scenario_->base_stations[n].rb_budget) return false;
  }
  return true;
}

std::vector<double> finite_diff_gradient(const AugmentedVector& x_t,
                                         const AugmentedVector& x_prev,
                                         const SmoothedObjective& obj) {
  const double u_prev = obj(x_prev);
  std::vector<double> g(x_t.size(), 0.0);
  AugmentedVector probe = x_prev;
  for (std::size_t j = 0; j < x_t.size(); ++j) {
    if (x_t.x[j] == x_prev.x[j]) continue;
    probe.x[j] = x_t.x[j];
    double d = u_prev - obj(probe);
    probe.x[j] = x_prev.x[j];
    g[j] = std::fabs(d) < 1e-9 ? 0.0 : d;
  }
  return g;
}

AugmentedVector surrogate_argmin(const std::vector<double>& gradient,
                                 const AugmentedVector& current) {
  AugmentedVector next = current;
  for (std::size_t j = 0; j < next.q_size(); ++j) {
    if (gradient[j] > 0.0) next.x[j] = 1.0;
    else if (gradient[j] < 0.0) next.x[j] = 15.0;
  }
  for (std::size_t v = 0; v < next.n_veh; ++v) {
    bool any = false;
    std::size_t best_n = 0;
    for (std::size_t n = 0; n < next.n_bs; ++n) {
      double gn = gradient[next.q_size() + n * next.n_veh + v];
      if (gn != 0.0) any = true;
      if (gn < gradient[next.q_size() + best_n * next.n_veh + v]) best_n = n;
    }
    if (!any) continue;  // keep the current block
    for (std::size_t n = 0; n < next.n_bs; ++n) next.y_at(n, v) = (n == best_n) ? 1.0 : 0.0;
  }
  return next;
}

namespace {

double squared_distance(const AugmentedVector& a, const AugmentedVector& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double d = a.x[j] - b.x[j];
    s += d * d;
  }
  return s;
}

int round_to_candidates(double q, const std::vector<int>& candidates) {
  int best = candidates.front();
  double best_d = std::fabs(q - best);
  for (int c : candidates) {
    double d = std::fabs(q - c);
    if (d < best_d || (d == best_d && c > best)) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

SolverResult hsca_solve(const Scenario& scenario, const ChannelRealization& channel,
                        const HscaParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  SolveContext ctx(scenario, channel);
  const std::size_t N = ctx.num_bs();
  const std::size_t V = ctx.num_vehicles();
  const std::size_t K = ctx.num_messages();

  auto y0 = refine_association(initial_association(channel), channel);

  SmoothedObjective obj(scenario, channel, params.c_constant);

  AugmentedVector x_prev;
  x_prev.n_bs = N;
  x_prev.n_veh = V;
  x_prev.n_msg = K;
  x_prev.x.assign(N * K + N * V, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) x_prev.q_at(n, k) = 10.0;
    for (std::size_t v = 0; v < V; ++v) x_prev.y_at(n, v) = y0(n, v) ? 1.0 : 0.0;
  }
  AugmentedVector x_cur = x_prev;
  for (std::size_t j = 0; j < x_cur.q_size(); ++j) x_cur.x[j] = 9.0;

  SolverResult res;
  int iters = 0;
  for (int t = 1; t <= params.max_iters; ++t) {
    iters = t;
    auto g = finite_diff_gradient(x_cur, x_prev, obj);
    res.trace.push_back(obj(x_cur));
    AugmentedVector x_next = surrogate_argmin(g, x_cur);
    if (squared_distance(x_next, x_cur) <= params.epsilon) break;
    if (!obj.within_budgets(x_next)) break;
    x_prev = std::move(x_cur);
    x_cur = std::move(x_next);
  }

  // Round the final iterate: CQIs to the nearest candidate, associations to
  // the heaviest coordinate of each vehicle's block.
  Allocation alloc = Allocation::empty(N, V, K);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      alloc.q(n, k) = round_to_candidates(x_cur.q_at(n, k), ctx.candidates());
    }
  }
  std::vector<int> serving(V, 0);
  for (std::size_t v = 0; v < V; ++v) {
    std::size_t best_n = 0;
    for (std::size_t n = 1; n < N; ++n) {
      if (x_cur.y_at(n, v) > x_cur.y_at(best_n, v)) best_n = n;
    }
    serving[v] = static_cast<int>(best_n);
    alloc.y(best_n, v) = 1;
  }

  // Block demands of the rounded CQIs; groups with no audience stay empty.
  bool feasible = true;
  for (std::size_t n = 0; n < N; ++n) {
    int sum = 0;
    for (std::size_t k = 0; k < K; ++k) {
      if (ctx.group(serving, n, k).empty()) continue;
      alloc.rb(n, k) = ctx.demand(k, alloc.q(n, k));
      alloc.f(n, k) = 1.0;
      sum += alloc.rb(n, k);
    }
    if (sum > ctx.budget(n)) feasible = false;
  }

  if (!feasible) {
    SolverResult fb = heuristic_solve(scenario, channel);
    fb.used_fallback = true;
    fb.iterations = iters;
    fb.trace = std::move(res.trace);
    fb.wall_time = std::chrono::steady_clock::now() - t0;
    return fb;
  }

  ctx.greedy_fill(serving, alloc, /*allow_fec=*/true);

  res.alloc = std::move(alloc);
  res.utility = system_utility(res.alloc, scenario, channel);
  res.iterations = iters;
  res.wall_time = std::chrono::steady_clock::now() - t0;
  return res;
}

}  // namespace vmcast
