#include <cmath>
#include <random>

#include "doctest.h"
#include "staggered/diagnostics.hpp"
#include "staggered/errors.hpp"
#include "staggered/stepper.hpp"

using namespace staggered;

namespace {

StaggeredField smooth_field(int r, int n) {
  const GasModel gas(1.4);
  const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, n, Boundary::periodic), r);
  return project_initial([](double x) { return 1.0 + 0.2 * std::sin(2.0 * M_PI * x); },
                         [](double x) { return 0.3 * std::cos(2.0 * M_PI * x); },
                         [](double) { return 1.0; }, l, gas);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("stepper") {
  TEST_CASE("time scheme names") {
    CHECK(parse_time_scheme("euler") == TimeScheme::euler);
    CHECK(parse_time_scheme("dec2") == TimeScheme::dec2);
    CHECK(to_string(TimeScheme::dec2) == "dec2");
    CHECK_THROWS_AS(parse_time_scheme("rk4"), ArgumentError);
  }

  TEST_CASE("uniform flow stays uniform") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 10, Boundary::periodic), 1);
    const auto f = project_initial([](double, Side) { return Primitive{1.0, 0.5, 1.0}; }, l, gas);
    for (auto ts : {TimeScheme::euler, TimeScheme::dec2}) {
      StepperOptions opt;
      opt.time = ts;
      const auto a = advance(f, gas, opt, 0.01);
      CHECK(max_diff(a.step.state.rho, f.rho) < 1e-14);
      CHECK(max_diff(a.step.state.u, f.u) < 1e-14);
      CHECK(max_diff(a.step.state.e, f.e) < 1e-13);
    }
  }

  TEST_CASE("one deferred-correction pass is the Euler step") {
    const GasModel gas(1.4);
    const auto f = smooth_field(1, 12);
    const StepperOptions opt;
    const auto a = euler_step(f, gas, opt, 1e-3);
    const auto b = dec_step(f, gas, opt, 1e-3, 1);
    CHECK(max_diff(a.state.rho, b.state.rho) == 0.0);
    CHECK(max_diff(a.state.u, b.state.u) == 0.0);
    CHECK_THROWS_AS(dec_step(f, gas, opt, 1e-3, 0), ArgumentError);
  }

  TEST_CASE("time step") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 10, Boundary::transmissive), 0);
    const auto f = project_initial([](double, Side) { return Primitive{1.4, 1.0, 1.0}; }, l, gas);
    // alpha = |u| + c = 2.
    CHECK(compute_dt(f, gas, 0.4, 0.0, 10.0, 1.0) == doctest::Approx(0.4 * 0.1 / 2.0));
    CHECK(compute_dt(f, gas, 0.4, 0.0, 0.001, 1.0) == doctest::Approx(0.001));
    CHECK_THROWS_AS(compute_dt(f, gas, 0.0, 0.0, 1.0, 1.0), ArgumentError);
  }

  TEST_CASE("dec2 is second order in time") {
    // Self-convergence in dt on a fixed mesh with the mass iteration converged.
    const GasModel gas(1.4);
    const auto f0 = smooth_field(1, 16);
    StepperOptions opt;
    opt.dec_sweeps = 30;
    auto run = [&](int steps) {
      StaggeredField f = f0;
      const double dt = 0.02 / steps;
      for (int s = 0; s < steps; ++s) f = dec_step(f, gas, opt, dt, opt.dec_sweeps).state;
      return f;
    };
    const auto a = run(8), b = run(16), c = run(32);
    CHECK(std::log2(max_diff(a.rho, b.rho) / max_diff(b.rho, c.rho)) > 1.8);
    CHECK(std::log2(max_diff(a.u, b.u) / max_diff(b.u, c.u)) > 1.8);
  }

  TEST_CASE("positivity failure halves the step then propagates") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 10, Boundary::transmissive), 0);
    const auto f = project_initial(
        [](double x, Side) { return x < 0.5 ? Primitive{1.0, 0.0, 1000.0} : Primitive{1.0, 0.0, 0.01}; }, l, gas);
    StepperOptions opt;
    opt.time = TimeScheme::euler;
    const auto ok = advance(f, gas, opt, 0.4 * 0.1 / std::sqrt(1400.0));
    CHECK(ok.halvings == 0);
    const auto halved = advance(f, gas, opt, 0.01);
    CHECK(halved.halvings > 0);
    CHECK(halved.dt < 0.01);
    opt.max_halvings = 0;
    CHECK_THROWS_AS(advance(f, gas, opt, 0.01), PositivityError);
  }

  TEST_CASE("periodic corrected runs keep the totals") {
    const GasModel gas(1.4);
    for (int r : {0, 1}) {
      auto f = smooth_field(r, 20);
      const Totals t0 = conservation_totals(f);
      StepperOptions opt;
      for (int s = 0; s < 50; ++s) f = advance(f, gas, opt, 2e-3).step.state;
      const Totals t1 = conservation_totals(f);
      CHECK(std::abs(t1.mass - t0.mass) < 1e-13);
      CHECK(std::abs(t1.momentum - t0.momentum) < 1e-13);
      CHECK(std::abs(t1.energy - t0.energy) < 1e-12);
    }
  }
}
