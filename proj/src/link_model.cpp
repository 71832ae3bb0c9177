#include "vmcast/link_model.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "vmcast/fading.hpp"

namespace vmcast {

double rb_data_rate(int cqi, const McsTable& table, int slots_per_second) {
  if (cqi < 1 || cqi > 15) throw std::domain_error("rb_data_rate: no transmission at CQI 0");
  return 12.0 * 14.0 * table.efficiency(cqi) * slots_per_second;
}

int rb_count(double data_rate_bps, double rd_bps, double code_rate) {
  return static_cast<int>(std::ceil(data_rate_bps / (rd_bps * code_rate)));
}

double ps_success(int rb, double code_rate, double p) {
  const int need = static_cast<int>(std::ceil(rb * code_rate));
  if (need >= rb) return std::pow(p, rb);  // f = 1: every block required
  return binomial_tail(rb, need, p);
}

double utility(double ps, const MessageType& msg) {
  return ps >= msg.reliability ? msg.weight * msg.data_rate_bps : 0.0;
}

Allocation Allocation::empty(std::size_t n_bs, std::size_t n_veh, std::size_t n_msg) {
  Allocation a;
  a.q = Matrix<int>(n_bs, n_msg, 1);
  a.f = Matrix<double>(n_bs, n_msg, 1.0);
  a.rb = Matrix<int>(n_bs, n_msg, 0);
  a.y = Matrix<std::uint8_t>(n_bs, n_veh, 0);
  return a;
}

int Allocation::serving_bs(std::size_t v) const {
  for (std::size_t n = 0; n < y.rows(); ++n)
    if (y(n, v)) return static_cast<int>(n);
  return -1;
}

namespace {

template <typename T>
nlohmann::json matrix_to_json(const Matrix<T>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

template <typename T>
Matrix<T> matrix_from_json(const nlohmann::json& j) {
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<T>();
  return m;
}

}  // namespace

std::string Allocation::to_json() const {
  nlohmann::json j;
  j["q"] = matrix_to_json(q);
  j["f"] = matrix_to_json(f);
  j["rb"] = matrix_to_json(rb);
  j["y"] = matrix_to_json(y);
  return j.dump(2);
}

Allocation Allocation::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Allocation a;
  a.q = matrix_from_json<int>(j.at("q"));
  a.f = matrix_from_json<double>(j.at("f"));
  a.rb = matrix_from_json<int>(j.at("rb"));
  a.y = matrix_from_json<std::uint8_t>(j.at("y"));
  return a;
}

std::vector<Violation> check_feasibility(const Allocation& alloc, const Scenario& scenario) {
  std::vector<Violation> out;
  const std::size_t N = scenario.num_bs();
  const std::size_t V = scenario.num_vehicles();
  const std::size_t K = scenario.num_messages();

  for (std::size_t n = 0; n < N; ++n) {
    int used = 0;
    for (std::size_t k = 0; k < K; ++k) used += alloc.rb(n, k);
    int budget = scenario.base_stations[n].rb_budget;
    if (used > budget) {
      out.push_back({"rb_budget", static_cast<int>(n), -1, -1, double(budget - used)});
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      if (alloc.rb(n, k) <= 0) continue;
      double rd = rb_data_rate(alloc.q(n, k), McsTable::builtin(), scenario.slots_per_second);
      double supplied = alloc.rb(n, k) * rd * alloc.f(n, k);
      double demand = scenario.messages[k].data_rate_bps;
      if (supplied < demand * (1.0 - 1e-9)) {
        out.push_back({"rate_demand", static_cast<int>(n), static_cast<int>(k), -1,
                       supplied - demand});
      }
    }
  }
  for (std::size_t v = 0; v < V; ++v) {
    int sum = 0;
    for (std::size_t n = 0; n < N; ++n) sum += alloc.y(n, v);
    if (sum != 1) {
      out.push_back({"association", -1, -1, static_cast<int>(v), double(sum - 1)});
    }
  }
  return out;
}

double link_rb_success(const Scenario& scenario, const ChannelRealization& channel,
                       std::size_t n, std::size_t v, int q, const McsTable& table) {
  return rb_success_prob(table.threshold_db(q), channel.sinr_db(n, v),
                         channel.rician_k(n, v, scenario.channel));
}

double allocation_ps(const Allocation& alloc, const Scenario& scenario,
                     const ChannelRealization& channel, std::size_t n, std::size_t v,
                     std::size_t k, const McsTable& table) {
  if (alloc.rb(n, k) <= 0) return 0.0;
  double p = link_rb_success(scenario, channel, n, v, alloc.q(n, k), table);
  return ps_success(alloc.rb(n, k), alloc.f(n, k), p);
}

double system_utility(const Allocation& alloc, const Scenario& scenario,
                      const ChannelRealization& channel, const McsTable& table) {
  double total = 0.0;
  const std::size_t N = scenario.num_bs();
  const std::size_t V = scenario.num_vehicles();
  const std::size_t K = scenario.num_messages();
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      if (alloc.rb(n, k) <= 0) continue;
      for (std::size_t v = 0; v < V; ++v) {
        if (!alloc.y(n, v) || !scenario.vehicles[v].interest[k]) continue;
        double ps = allocation_ps(alloc, scenario, channel, n, v, k, table);
        total += utility(ps, scenario.messages[k]);
      }
    }
  }
  return total;
}

}  // namespace vmcast
