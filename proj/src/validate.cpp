#include "vmcast/validate.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "vmcast/association.hpp"
#include "vmcast/fading.hpp"
#include "vmcast/link_model.hpp"
#include "vmcast/mcs.hpp"
#include "vmcast/rng.hpp"

namespace vmcast {

namespace {

CheckResult check_mcs_fixture(const std::string& fixture_dir) {
  CheckResult r{"mcs_table_fixture", false, ""};
  try {
    auto path = std::filesystem::path(fixture_dir) / "mcs_table.csv";
    McsTable csv = McsTable::load_csv(path.string());
    if (csv == McsTable::builtin() && sinr_to_cqi(11.0, csv) == 10) {
      r.passed = true;
    } else {
      r.detail = "CSV rows differ from the built-in feedback table";
    }
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

CheckResult check_ps_monte_carlo(double tol_se, int trials) {
  CheckResult r{"ps_success_monte_carlo", true, ""};
  Rng rng(20240611);
  const struct {
    int rb;
    double f;
    double p;
  } cases[] = {{3, 2.0 / 3.0, 0.9}, {8, 0.5, 0.6}, {12, 0.75, 0.85}, {16, 1.0, 0.95}};
  for (const auto& c : cases) {
    const int need = static_cast<int>(std::ceil(c.rb * c.f));
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      int got = 0;
      for (int b = 0; b < c.rb; ++b) {
        if (rng.uniform() < c.p) ++got;
      }
      if (got >= need) ++hits;
    }
    double mc = static_cast<double>(hits) / trials;
    double analytic = ps_success(c.rb, c.f, c.p);
    double se = std::sqrt(std::max(analytic * (1 - analytic), 1e-12) / trials);
    if (std::fabs(mc - analytic) > tol_se * se) {
      r.passed = false;
      std::ostringstream os;
      os << "rb=" << c.rb << " f=" << c.f << " p=" << c.p << ": |" << mc << " - " << analytic
         << "| > " << tol_se << " SE";
      r.detail += (r.detail.empty() ? "" : "; ") + os.str();
    }
  }
  return r;
}

CheckResult check_marcum_references() {
  CheckResult r{"marcum_q_references", true, ""};
  // reference values precomputed with an independent noncentral chi-square
  // implementation
  const struct {
    double a, b, q;
  } refs[] = {
      {1.0, 1.0, 0.7328798037968203},  {2.0, 1.0, 0.9181076963694061},
      {1.0, 2.0, 0.26901206003591},    {0.5, 3.0, 0.01784367338648221},
      {3.0, 0.5, 0.9983002327055392},  {5.0, 5.0, 0.5400983867737185},
      {0.1, 0.1, 0.9950372925748537},  {4.0, 2.0, 0.985276535891285},
  };
  for (const auto& ref : refs) {
    if (std::fabs(marcum_q1(ref.a, ref.b) - ref.q) > 1e-11) {
      r.passed = false;
      std::ostringstream os;
      os << "Q1(" << ref.a << "," << ref.b << ") off by more than 1e-11";
      r.detail += (r.detail.empty() ? "" : "; ") + os.str();
    }
  }
  return r;
}

CheckResult check_association_trace() {
  CheckResult r{"association_hand_trace", false, ""};
  ChannelRealization ch;
  ch.sinr_db = Matrix<double>(2, 3);
  const double vals[2][3] = {{10.0, 3.0, 20.0}, {9.0, 5.0, 8.0}};
  for (int n = 0; n < 2; ++n)
    for (int v = 0; v < 3; ++v) ch.sinr_db(n, v) = vals[n][v];
  ch.shadowing_db = Matrix<double>(2, 3, 0.0);
  ch.los = Matrix<std::uint8_t>(2, 3, 1);
  auto y = refine_association(initial_association(ch), ch);
  bool ok = y(1, 0) == 1 && y(1, 1) == 1 && y(0, 2) == 1;
  if (ok) {
    r.passed = true;
  } else {
    r.detail = "worst-vehicle move did not match the expected trace";
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& opts) {
  return {
      check_mcs_fixture(opts.fixture_dir),
      check_ps_monte_carlo(opts.mc_tolerance_se, opts.mc_trials),
      check_marcum_references(),
      check_association_trace(),
  };
}

}  // namespace vmcast
