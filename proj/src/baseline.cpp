#include "vmcast/association.hpp"
#include "vmcast/solvers.hpp"
#include "solve_context.hpp"

namespace vmcast {

namespace {

Matrix<std::uint8_t> y_from_serving(const std::vector<int>& serving, std::size_t n_bs) {
  Matrix<std::uint8_t> y(n_bs, serving.size(), 0);
  for (std::size_t v = 0; v < serving.size(); ++v) {
    if (serving[v] >= 0) y(serving[v], v) = 1;
  }
  return y;
}

}  // namespace

SolverResult baseline_solve(const Scenario& scenario, const ChannelRealization& channel) {
  auto t0 = std::chrono::steady_clock::now();
  SolveContext ctx(scenario, channel);

  auto y = initial_association(channel);
  auto serving = SolveContext::serving_of(y);

  Allocation alloc = Allocation::empty(ctx.num_bs(), ctx.num_vehicles(), ctx.num_messages());
  alloc.y = y;
  ctx.greedy_fill(serving, alloc, /*allow_fec=*/false);

  SolverResult res;
  res.alloc = std::move(alloc);
  res.utility = system_utility(res.alloc, scenario, channel);
  res.iterations = 1;
  res.wall_time = std::chrono::steady_clock::now() - t0;
  return res;
}

SolverResult heuristic_solve(const Scenario& scenario, const ChannelRealization& channel) {
  auto t0 = std::chrono::steady_clock::now();
  SolveContext ctx(scenario, channel);
  const std::size_t N = ctx.num_bs();
  const std::size_t K = ctx.num_messages();

  auto y = refine_association(initial_association(channel), channel);
  auto serving = SolveContext::serving_of(y);

  Allocation alloc = Allocation::empty(N, ctx.num_vehicles(), K);
  alloc.y = y;

  // Link adaptation per group: highest candidate CQI at which every
  // interested attached vehicle meets its reliability target with F = 1.
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      auto members = ctx.group(serving, n, k);
      if (members.empty()) continue;
      for (auto it = ctx.candidates().rbegin(); it != ctx.candidates().rend(); ++it) {
        const int q = *it;
        const int need = ctx.demand(k, q);
        bool all_ok = true;
        for (std::size_t v : members) {
          int r = ctx.min_rb(n, k, q, v);
          if (r < 0 || r > need) {
            all_ok = false;
            break;
          }
        }
        if (all_ok) {
          alloc.q(n, k) = q;
          alloc.rb(n, k) = need;
          alloc.f(n, k) = 1.0;
          break;
        }
      }
    }
  }

  // Squeeze into the budget one RB at a time, each time decrementing the
  // type that newly violates the fewest vehicles (ties to the lowest k).
  for (std::size_t n = 0; n < N; ++n) {
    auto used = [&] {
      int s = 0;
      for (std::size_t k = 0; k < K; ++k) s += alloc.rb(n, k);
      return s;
    };
    while (used() > ctx.budget(n)) {
      int best_l = -1;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < K; ++k) {
        if (alloc.rb(n, k) <= 0) continue;
        const int q = alloc.q(n, k);
        const int need = ctx.demand(k, q);
        const int rb = alloc.rb(n, k);
        int newly = 0;
        for (std::size_t v : ctx.group(serving, n, k)) {
          int r = ctx.min_rb(n, k, q, v);
          bool sat_now = rb >= need && r >= 0 && r <= rb;
          bool sat_after = (rb - 1) >= need && r >= 0 && r <= rb - 1;
          if (sat_now && !sat_after) ++newly;
        }
        if (best_l < 0 || newly < best_l) {
          best_l = newly;
          best_k = k;
        }
      }
      alloc.rb(n, best_k) -= 1;
    }
  }

  // Groups squeezed below their block demand can no longer carry the
  // message; release their RBs.
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      if (alloc.rb(n, k) > 0 && alloc.rb(n, k) < ctx.demand(k, alloc.q(n, k))) {
        alloc.rb(n, k) = 0;
        alloc.f(n, k) = 1.0;
      }
    }
  }

  // FEC fine-tune: one pass over groups; each picks the (CQI, RB) within its
  // BS's current leftover that maximizes utility, then uses fewest RBs, then
  // the highest CQI. Covers both directions: shrinking via a higher CQI and
  // spending residual RBs on redundancy blocks.
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      if (ctx.group(serving, n, k).empty()) continue;
      int used = 0;
      for (std::size_t kk = 0; kk < K; ++kk) used += alloc.rb(n, kk);
      const int left = ctx.budget(n) - used;
      const int rb_cur = alloc.rb(n, k);
      double best_u = rb_cur > 0 ? ctx.group_utility(serving, n, k, alloc.q(n, k), rb_cur) : 0.0;
      int best_q = alloc.q(n, k), best_rb = rb_cur;
      bool have = rb_cur > 0;
      for (int q : ctx.candidates()) {
        const int need = ctx.demand(k, q);
        for (int rb2 = need; rb2 <= rb_cur + left; ++rb2) {
          double u = ctx.group_utility(serving, n, k, q, rb2);
          bool better = !have && u > 0.0;
          if (have) {
            if (u > best_u) better = true;
            else if (u == best_u && rb2 < best_rb) better = true;
            else if (u == best_u && rb2 == best_rb && q > best_q) better = true;
          }
          if (better) {
            have = true;
            best_u = u;
            best_q = q;
            best_rb = rb2;
          }
        }
      }
      if (have && best_rb > 0 && best_u > 0.0) {
        alloc.q(n, k) = best_q;
        alloc.rb(n, k) = best_rb;
        alloc.f(n, k) = static_cast<double>(ctx.demand(k, best_q)) / best_rb;
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
