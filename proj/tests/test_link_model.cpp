#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "vmcast/link_model.hpp"
#include "vmcast/rng.hpp"

using namespace vmcast;
using vmcast::testsupport::fixed_scenario;

TEST_CASE("per-RB data rate from the feedback table") {
  const auto& t = McsTable::builtin();
  CHECK(rb_data_rate(15, t, 1000) == doctest::Approx(933189.6).epsilon(1e-12));
  CHECK(rb_data_rate(1, t, 1000) == doctest::Approx(25586.4).epsilon(1e-12));
  CHECK(rb_data_rate(15, t, 1) == doctest::Approx(933.1896).epsilon(1e-12));
  CHECK_THROWS_AS(rb_data_rate(0, t, 1000), std::domain_error);
}

TEST_CASE("rb_count ceiling arithmetic") {
  CHECK(rb_count(2500000.0, 933189.6, 1.0) == 3);
  CHECK(rb_count(100000.0, 933189.6, 1.0) == 1);
  CHECK(rb_count(933189.6, 933189.6, 1.0) == 1);  // exact fit
}

TEST_CASE("rb_count output always covers the demand") {
  Rng rng(5);
  const auto& t = McsTable::builtin();
  for (int i = 0; i < 500; ++i) {
    double d = rng.uniform(1e4, 5e6);
    int q = static_cast<int>(rng.uniform_int(1, 15));
    double f = rng.uniform(0.2, 1.0);
    double rd = rb_data_rate(q, t, 1000);
    int rb = rb_count(d, rd, f);
    CHECK(rb * rd * f >= d - 1e-6);
    CHECK((rb - 1) * rd * f < d);
  }
}

TEST_CASE("ps_success oracle values") {
  CHECK(ps_success(3, 2.0 / 3.0, 0.9) == doctest::Approx(0.972).epsilon(1e-12));
  // frozen from an independent binomial-tail evaluation
  CHECK(ps_success(10, 0.7, 0.85) == doctest::Approx(0.9500302011214843).epsilon(1e-11));
  CHECK(ps_success(16, 0.9, 0.97) == doctest::Approx(0.9182142242483444).epsilon(1e-11));
  CHECK(ps_success(64, 0.5, 0.3) == doctest::Approx(0.0006254833313619884).epsilon(1e-9));
  CHECK(ps_success(5, 1.0, 0.9) == doctest::Approx(0.59049).epsilon(1e-12));
}

TEST_CASE("ps_success equals p^rb at full rate") {
  Rng rng(9);
  for (int rb = 1; rb <= 64; ++rb) {
    for (double p : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      CHECK(ps_success(rb, 1.0, p) == std::pow(p, rb));
    }
  }
  CHECK(ps_success(17, 1.0, 1.0) == 1.0);
}

TEST_CASE("binomial terms sum to one") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    int n = static_cast<int>(rng.uniform_int(1, 64));
    double p = rng.uniform(0.01, 0.99);
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
      total += binomial_tail(n, k, p) - binomial_tail(n, k + 1, p);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("redundancy never hurts: tail nondecreasing in rb at fixed need") {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    int need = static_cast<int>(rng.uniform_int(1, 20));
    int rb = need + static_cast<int>(rng.uniform_int(0, 20));
    double p = rng.uniform(0.05, 0.99);
    CHECK(binomial_tail(rb + 1, need, p) >= binomial_tail(rb, need, p) - 1e-13);
    CHECK(binomial_tail(rb, need, p + 0.005) >= binomial_tail(rb, need, p) - 1e-13);
  }
}

TEST_CASE("utility is a step at the reliability target") {
  MessageType msg{100e3, 0.9999, 2.0};
  CHECK(utility(0.99995, msg) == 200000.0);
  CHECK(utility(0.999, msg) == 0.0);
  CHECK(utility(0.9999, msg) == 200000.0);  // inclusive threshold
  MessageType m2{1000e3, 0.9, 1.0};
  double prev = -1.0;
  for (double ps = 0.0; ps <= 1.0; ps += 0.01) {
    double u = utility(ps, m2);
    CHECK(u >= prev);
    prev = u;
  }
}

namespace {

std::pair<Scenario, ChannelRealization> utility_fixture() {
  return fixed_scenario(
      {{18.0, 6.0, 12.0, -3.0}, {2.0, 14.0, 9.0, 11.0}},
      {{1, 0, 1, 0}, {0, 1, 1, 1}},
      {{1, 1}, {1, 1}, {1, 1}, {0, 1}},
      {{100e3, 0.9999, 2.0}, {1000e3, 0.9, 1.0}},
      {10, 15});
}

Allocation utility_fixture_alloc() {
  Allocation a = Allocation::empty(2, 4, 2);
  a.q(0, 0) = 10; a.q(0, 1) = 7; a.q(1, 0) = 9; a.q(1, 1) = 5;
  a.f(0, 0) = 0.5; a.f(0, 1) = 1.0; a.f(1, 0) = 1.0; a.f(1, 1) = 2.0 / 3.0;
  a.rb(0, 0) = 2; a.rb(0, 1) = 5; a.rb(1, 0) = 1; a.rb(1, 1) = 11;
  a.y(0, 0) = 1; a.y(1, 1) = 1; a.y(0, 2) = 1; a.y(1, 3) = 1;
  return a;
}

}  // namespace

TEST_CASE("system utility on the two-cell fixture") {
  auto [sc, ch] = utility_fixture();
  Allocation a = utility_fixture_alloc();
  CHECK(check_feasibility(a, sc).empty());
  // frozen by an independent per-term evaluation: only vehicle 1 and 3
  // clear their targets, both on message 2
  CHECK(system_utility(a, sc, ch) == doctest::Approx(2000000.0).epsilon(1e-12));
}

TEST_CASE("system utility is zero without interest") {
  auto [sc, ch] = utility_fixture();
  for (auto& veh : sc.vehicles) veh.interest.assign(2, 0);
  Allocation a = utility_fixture_alloc();
  CHECK(system_utility(a, sc, ch) == 0.0);
}

TEST_CASE("system utility is invariant to vehicle permutation") {
  auto [sc, ch] = utility_fixture();
  Allocation a = utility_fixture_alloc();
  double u1 = system_utility(a, sc, ch);

  // swap vehicles 0 and 3 everywhere
  std::swap(sc.vehicles[0], sc.vehicles[3]);
  for (int n = 0; n < 2; ++n) {
    std::swap(ch.sinr_db(n, 0), ch.sinr_db(n, 3));
    std::swap(ch.los(n, 0), ch.los(n, 3));
    auto tmp = a.y(n, 0);
    a.y(n, 0) = a.y(n, 3);
    a.y(n, 3) = tmp;
  }
  CHECK(system_utility(a, sc, ch) == doctest::Approx(u1).epsilon(1e-12));
}

TEST_CASE("single satisfied vehicle earns its full weight") {
  auto [sc, ch] = fixed_scenario({{40.0}}, {{1}}, {{1}},
                                 {{100e3, 0.9, 1.5}}, {10});
  Allocation a = Allocation::empty(1, 1, 1);
  a.q(0, 0) = 10;
  a.rb(0, 0) = 3;
  a.f(0, 0) = 1.0 / 3.0;
  a.y(0, 0) = 1;
  CHECK(system_utility(a, sc, ch) == doctest::Approx(150000.0).epsilon(1e-12));
}

TEST_CASE("feasibility boundaries") {
  auto [sc, ch] = utility_fixture();
  Allocation a = utility_fixture_alloc();

  SUBCASE("budget used exactly is feasible") {
    a.rb(0, 0) = 5;  // 5 + 5 = 10 = budget
    a.f(0, 0) = 0.2;
    CHECK(check_feasibility(a, sc).empty());
  }
  SUBCASE("budget exceeded by one is flagged") {
    a.rb(0, 0) = 6;
    a.f(0, 0) = 0.2;
    auto v = check_feasibility(a, sc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == "rb_budget");
    CHECK(v[0].n == 0);
    CHECK(v[0].slack == -1.0);
  }
  SUBCASE("unassociated vehicle is flagged") {
    a.y(1, 3) = 0;
    auto v = check_feasibility(a, sc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == "association");
    CHECK(v[0].v == 3);
  }
  SUBCASE("rate demand shortfall is flagged") {
    a.rb(0, 1) = 4;  // 4 RBs at q7 cannot carry 1 Mb/s at F = 1
    auto v = check_feasibility(a, sc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == "rate_demand");
    CHECK(v[0].n == 0);
    CHECK(v[0].k == 1);
  }
}

TEST_CASE("allocation json round trip") {
  Allocation a = utility_fixture_alloc();
  Allocation b = Allocation::from_json(a.to_json());
  CHECK(a == b);
}
