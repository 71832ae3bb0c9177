#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vmcast/fading.hpp"
#include "vmcast/mcs.hpp"
#include "vmcast/rng.hpp"
#include "vmcast/util.hpp"

using namespace vmcast;

TEST_CASE("marcum q special values") {
  CHECK(marcum_q1(0.7, 0.0) == 1.0);
  CHECK(marcum_q1(0.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(marcum_q1(0.0, 2.5) == doctest::Approx(std::exp(-3.125)).epsilon(1e-14));
}

TEST_CASE("marcum q reference values") {
  // precomputed with an independent noncentral chi-square implementation
  CHECK(marcum_q1(1.0, 1.0) == doctest::Approx(0.7328798037968203).epsilon(1e-12));
  CHECK(marcum_q1(2.0, 1.0) == doctest::Approx(0.9181076963694061).epsilon(1e-12));
  CHECK(marcum_q1(1.0, 2.0) == doctest::Approx(0.26901206003591).epsilon(1e-12));
  CHECK(marcum_q1(0.5, 3.0) == doctest::Approx(0.01784367338648221).epsilon(1e-12));
  CHECK(marcum_q1(3.0, 0.5) == doctest::Approx(0.9983002327055392).epsilon(1e-12));
  CHECK(marcum_q1(5.0, 5.0) == doctest::Approx(0.5400983867737185).epsilon(1e-12));
}

TEST_CASE("marcum q is a survival function in b and increasing in a") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    double a = rng.uniform(0.0, 5.0);
    double b1 = rng.uniform(0.0, 6.0);
    double b2 = b1 + rng.uniform(0.0, 2.0);
    double q1 = marcum_q1(a, b1);
    double q2 = marcum_q1(a, b2);
    CHECK(q1 >= 0.0);
    CHECK(q1 <= 1.0);
    CHECK(q2 <= q1 + 1e-13);
    CHECK(marcum_q1(a + 0.5, b1) >= q1 - 1e-13);
  }
}

TEST_CASE("marcum q rejects negative arguments") {
  CHECK_THROWS_AS(marcum_q1(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(marcum_q1(1.0, -1.0), std::domain_error);
}

TEST_CASE("rb success probability limits") {
  // protection ratio -> 0 linear: success certain
  CHECK(rb_success_prob(-500.0, 10.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rb_success_prob(-std::numeric_limits<double>::infinity(), 10.0, 1.0) == 1.0);
  // threshold far above the mean: outage certain
  CHECK(rb_success_prob(80.0, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("rayleigh closed form at K = 0") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    double thr = rng.uniform(-10.0, 20.0);
    double snr = rng.uniform(-5.0, 30.0);
    double expected = std::exp(-db_to_linear(thr) / db_to_linear(snr));
    CHECK(rb_success_prob(thr, snr, 0.0) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("rician success at mean SNR equal to the threshold, K = 1") {
  // analytic value, frozen from an independent evaluation
  CHECK(rb_success_prob(10.0, 10.0, 1.0) == doctest::Approx(0.39429685889233174).epsilon(1e-10));
  CHECK(rb_success_prob(10.266, 15.0, 1.0) ==
        doctest::Approx(0.7601100692989415).epsilon(1e-10));
}

TEST_CASE("monte carlo fading agrees with the analytic Rician model") {
  LinkStats link{10.0, 1.0, {}, 0.0};
  double analytic = RicianFading{}.rb_success_prob(10.0, link);
  MonteCarloFading mc(1000000, 42);
  double sampled = mc.rb_success_prob(10.0, link);
  double se = std::sqrt(analytic * (1 - analytic) / 1e6);
  CHECK(std::fabs(sampled - analytic) < 3.0 * se);
}

TEST_CASE("monte carlo model handles interferers") {
  // one strong Rayleigh interferer must cut the success probability
  LinkStats clean{15.0, 1.0, {}, 0.0};
  LinkStats jammed{15.0, 1.0, {db_to_linear(10.0)}, 0.0};
  MonteCarloFading mc(200000, 7);
  CHECK(mc.rb_success_prob(5.0, jammed) < mc.rb_success_prob(5.0, clean));
}

TEST_CASE("success probability falls as the CQI rises") {
  for (double snr : {2.0, 8.0, 14.0, 20.0}) {
    for (double k : {0.0, 1.0}) {
      double prev = 1.1;
      for (int q = 1; q <= 15; ++q) {
        double p = rb_success_prob(McsTable::builtin().threshold_db(q), snr, k);
        CHECK(p <= prev + 1e-12);
        prev = p;
      }
    }
  }
}

TEST_CASE("domain errors for invalid fading parameters") {
  CHECK_THROWS_AS(rb_success_prob(5.0, 10.0, -0.5), std::domain_error);
}
