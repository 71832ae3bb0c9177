#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "vmcast/link_model.hpp"
#include "vmcast/model.hpp"

namespace vmcast {

struct SolverResult {
  Allocation alloc;
  double utility = 0.0;
  int iterations = 0;
  std::chrono::duration<double> wall_time{0.0};
  std::vector<double> trace;   // per-iteration objective values (HSCA)
  bool used_fallback = false;  // HSCA fell back to the heuristic

  std::string to_json() const;
};

struct HscaParams {
  double c_constant = 50.0;
  double epsilon = 1e-3;
  int max_iters = 200;
};

struct ExhaustiveParams {
  std::vector<int> q_grid = {1, 5, 10, 15};
  /// Upper bound on enumerated (association x per-BS configuration) states;
  /// instances above it are refused.
  double state_cap = 5e8;
};

struct ExhaustiveCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Greedy no-FEC reference: best-SINR association, then per BS repeatedly
/// grant the (type, CQI) with the highest utility gain per RB at F = 1.
SolverResult baseline_solve(const Scenario& scenario, const ChannelRealization& channel);

/// Worst-vehicle link adaptation with QoS-violation-minimizing RB squeeze
/// and a final per-group FEC fine-tune pass.
SolverResult heuristic_solve(const Scenario& scenario, const ChannelRealization& channel);

/// Tanh-smoothed successive convex approximation with finite-difference
/// gradients, plus the residual-RB distribution after rounding.
SolverResult hsca_solve(const Scenario& scenario, const ChannelRealization& channel,
                        const HscaParams& params = {});

/// Brute-force oracle over association x (CQI, RB-count) per group, CQIs
/// restricted to q_grid. Throws ExhaustiveCapError above the state cap.
SolverResult exhaustive_solve(const Scenario& scenario, const ChannelRealization& channel,
                              const ExhaustiveParams& params = {});

/// ---- smoothed objective pieces (exposed for tests) ----

/// Relaxed decision vector: N*K CQI coordinates in [1,15] then N*V
/// association coordinates in [0,1] (one simplex block per vehicle).
struct AugmentedVector {
  std::size_t n_bs = 0, n_veh = 0, n_msg = 0;
  std::vector<double> x;  // size n_bs*n_msg + n_bs*n_veh

  double& q_at(std::size_t n, std::size_t k) { return x[n * n_msg + k]; }
  double q_at(std::size_t n, std::size_t k) const { return x[n * n_msg + k]; }
  double& y_at(std::size_t n, std::size_t v) { return x[n_bs * n_msg + n * n_veh + v]; }
  double y_at(std::size_t n, std::size_t v) const { return x[n_bs * n_msg + n * n_veh + v]; }
  std::size_t q_size() const { return n_bs * n_msg; }
  std::size_t size() const { return x.size(); }
};

/// The tanh-smoothed negated system utility over the augmented vector.
/// Fractional CQIs use piecewise-linear interpolation of the feedback table.
class SmoothedObjective {
 public:
  SmoothedObjective(const Scenario& scenario, const ChannelRealization& channel,
                    double c_constant);

  double operator()(const AugmentedVector& x) const;
  double c_constant() const { return c_; }

  /// One smoothed utility term: a_k D_k (tanh(C (ps - P_k)) + 1) / 2.
  static double smoothed_term(double ps, const MessageType& msg, double c_constant);

  /// RB demand of type k at (possibly fractional) CQI q.
  int rb_demand(std::size_t k, double q) const;

  /// Budget feasibility of the relaxed iterate (RB demands within budgets).
  bool within_budgets(const AugmentedVector& x) const;

  const Scenario& scenario() const { return *scenario_; }
  const ChannelRealization& channel() const { return *channel_; }

 private:
  double term(std::size_t n, std::size_t v, std::size_t k, double q, double y) const;

  const Scenario* scenario_;
  const ChannelRealization* channel_;
  double c_;
};

/// Finite-difference gradient: per coordinate, U(x_prev) minus U(x_prev with
/// that coordinate replaced by its x_t value). Entries below 1e-9 absolute
/// are zeroed.
std::vector<double> finite_diff_gradient(const AugmentedVector& x_t,
                                         const AugmentedVector& x_prev,
                                         const SmoothedObjective& obj);

/// Minimize <gradient, x> over the box/simplex: CQI coordinates go to the
/// box end opposite the gradient sign, each vehicle's association block puts
/// all mass on its most negative entry; zero-gradient coordinates keep their
/// current value.
AugmentedVector surrogate_argmin(const std::vector<double>& gradient,
                                 const AugmentedVector& current);

}  // namespace vmcast
