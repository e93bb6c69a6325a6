#include <cmath>
#include <sstream>

#include "doctest.h"
#include "staggered/driver.hpp"
#include "staggered/errors.hpp"

using namespace staggered;

namespace {

std::string summary_text(const RunResult& r) {
  std::ostringstream os;
  write_summary(r.summary, os);
  return os.str();
}

std::string value(const Summary& s, const std::string& key) {
  for (const auto& [k, v] : s) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace

TEST_SUITE("driver") {
  TEST_CASE("config text") {
    const RunConfig cfg = parse_config("case = sod\nn_cells = 1000\ncfl = 0.4\n");
    CHECK(cfg.case_name == "sod");
    CHECK(cfg.n_cells == 1000);
    CHECK(*cfg.cfl == 0.4);
    const RunConfig c2 = parse_config("# comment\n\n  flux = exact   # trailing\nblending=proc2\n");
    CHECK(c2.flux == FluxChoice::exact);
    CHECK(c2.blending == Blending::proc2);
  }

  TEST_CASE("defaults mirror the accuracy runs") {
    const RunConfig cfg;
    CHECK(cfg.r == 1);
    CHECK(cfg.flux == FluxChoice::hllc);
    CHECK(cfg.stabilization == Stabilization::jump);
    CHECK(cfg.correction);
    CHECK(cfg.theta == 0.1);
  }

  TEST_CASE("config errors name the key") {
    auto message = [](const std::string& text) {
      try {
        parse_config(text);
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message("flux = upwind").find("flux") != std::string::npos);
    CHECK(message("colour = red").find("colour") != std::string::npos);
    CHECK(message("n_cells = ten").find("n_cells") != std::string::npos);
    CHECK(message("cfl = -1").find("cfl") != std::string::npos);
    CHECK(message("just words").find("line 1") != std::string::npos);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/run.cfg"), ConfigError);
  }

  TEST_CASE("flags override the file") {
    const RunConfig cfg = parse_config("correction = on\nn_cells = 50", {{"correction", "off"}});
    CHECK_FALSE(cfg.correction);
    CHECK(cfg.n_cells == 50);
  }

  TEST_CASE("every documented key is accepted") {
    const std::map<std::string, std::string> sample{
        {"case", "smooth"},   {"n_cells", "10"},    {"r", "0"},         {"equal_degree", "false"},
        {"flux", "exact"},    {"stabilization", "llf"}, {"blending", "proc1"}, {"correction", "true"},
        {"time_scheme", "euler"}, {"dec_sweeps", "3"}, {"cfl", "0.2"}, {"theta", "0.2"},
        {"t_final", "0.01"},  {"dt_max", "1e-3"},   {"max_steps", "10"}, {"growth_limit", "100"},
        {"profile", "p.csv"}, {"series", "s.csv"},  {"summary", "m.csv"}, {"correction_report", "c.csv"}};
    for (const auto& key : config_keys()) {
      RunConfig cfg;
      REQUIRE(sample.count(key) == 1);
      CHECK_NOTHROW(apply_setting(cfg, key, sample.at(key)));
    }
    CHECK(config_keys().size() == sample.size());
  }

  TEST_CASE("equal degree only for K1T1") {
    RunConfig cfg;
    cfg.r = 0;
    cfg.equal_degree = true;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  }

  TEST_CASE("sod run reports errors and drifts") {
    RunConfig cfg;
    cfg.n_cells = 100;
    cfg.blending = Blending::proc2;
    const RunResult r = run_case(cfg);
    CHECK(r.t == doctest::Approx(0.16));
    REQUIRE(r.l1.has_value());
    CHECK(r.l1->rho < 0.05);
    CHECK(std::abs(r.ledger.mass_drift()) < 1e-12);
    CHECK(r.ledger.max_abs_drift_m() < 1e-12);
    CHECK(r.ledger.max_abs_drift_E() < 1e-12);
    CHECK(r.identities.max() < 1e-12);
    CHECK(value(r.summary, "shock_position_flag") == "ok");
    CHECK(r.min_rho > 0.0);
  }

  TEST_CASE("identical configurations give identical summaries") {
    RunConfig cfg;
    cfg.case_name = "smooth";
    cfg.n_cells = 40;
    CHECK(summary_text(run_case(cfg)) == summary_text(run_case(cfg)));
  }

  TEST_CASE("observer sees every step") {
    RunConfig cfg;
    cfg.case_name = "smooth";
    cfg.n_cells = 40;
    long calls = 0;
    const RunResult r = run_case(cfg, [&](long, double, const StaggeredField&, const StaggeredField&,
                                          const StepRecord&) { ++calls; });
    CHECK(calls == r.steps);
  }

  TEST_CASE("step limit is a blow-up with step and time") {
    RunConfig cfg;
    cfg.case_name = "smooth";
    cfg.n_cells = 40;
    cfg.max_steps = 3;
    try {
      run_case(cfg);
      FAIL("expected a blow-up");
    } catch (const BlowUpError& e) {
      CHECK(e.step() == 3);
      CHECK(e.time() > 0.0);
    }
  }

  TEST_CASE("positivity abort carries step and time") {
    RunConfig cfg;
    cfg.case_name = "strong";
    cfg.n_cells = 100;
    try {
      run_case(cfg);
      FAIL("expected a positivity abort");
    } catch (const PositivityAbort& e) {
      CHECK(e.step() > 0);
      CHECK(e.time() > 0.0);
    }
  }

  TEST_CASE("convergence table") {
    RunConfig cfg;
    cfg.case_name = "smooth";
    cfg.r = 0;
    cfg.stabilization = Stabilization::llf;
    cfg.time_scheme = TimeScheme::euler;
    const auto rows = convergence_study(cfg, {50, 100, 200, 400});
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(rows[0].order_rho.has_value());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].error.rho < rows[i - 1].error.rho);
      CHECK(*rows[i].order_rho > 0.6);
      CHECK(*rows[i].order_rho < 1.3);
    }
    std::ostringstream os;
    write_convergence(rows, os);
    CHECK(os.str().rfind("n,l1_rho,l1_u,l1_p,order_rho,order_u,order_p\n50,", 0) == 0);
  }

  TEST_CASE("stability table shape") {
    const auto rows = stability_matrix({40, 0.005, 0.4});
    REQUIRE(rows.size() == 9);
    std::ostringstream os;
    write_stability(rows, os);
    CHECK(os.str().rfind("flux,layout,outcome,step,time,max_growth\ncentered,K1T0,", 0) == 0);
  }
}
