#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "staggered/errors.hpp"
#include "staggered/riemann.hpp"

using namespace staggered;

namespace {

void check_against_bisection(const Primitive& l, const Primitive& r, double gamma) {
  const GasModel gas(gamma);
  const ExactRiemannSolution ex(l, r, gas);
  const auto o = oracle::riemann_bisection(l.rho, l.u, l.p, r.rho, r.u, r.p, gamma);
  CHECK(std::abs(ex.p_star() - o.p) <= 1e-10 * std::max(1.0, o.p));
  CHECK(std::abs(ex.u_star() - o.u) <= 1e-10 * std::max(1.0, std::abs(o.u)));
  CHECK(std::abs(ex.rho_star_left() - o.rho_left) <= 1e-10 * std::max(1.0, o.rho_left));
  CHECK(std::abs(ex.rho_star_right() - o.rho_right) <= 1e-10 * std::max(1.0, o.rho_right));
}

Conservative cons(const GasModel& gas, const Primitive& w) { return gas.to_conservative(w); }

}  // namespace

TEST_SUITE("riemann") {
  TEST_CASE("star states match the bisection oracle") {
    check_against_bisection({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 1.4);
    check_against_bisection({1.0, -2.0, 0.4}, {1.0, 2.0, 0.4}, 1.4);
    check_against_bisection({1.0, 0.0, 1000.0}, {1.0, 0.0, 0.01}, 1.4);
    check_against_bisection({5.99924, 19.5975, 460.894}, {5.99242, -6.19633, 46.0950}, 1.4);
  }

  TEST_CASE("sod star values") {
    const ExactRiemannSolution ex({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, GasModel(1.4));
    CHECK(ex.p_star() == doctest::Approx(0.30313).epsilon(1e-4));
    CHECK(ex.u_star() == doctest::Approx(0.92745).epsilon(1e-4));
    CHECK(ex.rho_star_left() == doctest::Approx(0.42632).epsilon(1e-4));
    CHECK_FALSE(ex.left_is_shock());
    CHECK(ex.right_is_shock());
  }

  TEST_CASE("123 star values") {
    const ExactRiemannSolution ex({1.0, -2.0, 0.4}, {1.0, 2.0, 0.4}, GasModel(1.4));
    CHECK(ex.p_star() == doctest::Approx(0.00189).epsilon(1e-2));
    CHECK(std::abs(ex.u_star()) < 1e-12);
    CHECK(ex.sample(0.0).u == doctest::Approx(0.0));
  }

  TEST_CASE("sampled shock satisfies Rankine-Hugoniot") {
    const GasModel gas(1.4);
    const ExactRiemannSolution ex({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, gas);
    const double s = ex.right_shock_speed();
    const Primitive behind = ex.sample(s - 1e-9);
    const Primitive ahead = ex.sample(s + 1e-9);
    const Conservative qb = cons(gas, behind), qa = cons(gas, ahead);
    const Flux fb = gas.flux(behind), fa = gas.flux(ahead);
    CHECK(std::abs(s * (qa.rho - qb.rho) - (fa.mass - fb.mass)) < 1e-10);
    CHECK(std::abs(s * (qa.m - qb.m) - (fa.momentum - fb.momentum)) < 1e-10);
    CHECK(std::abs(s * (qa.E - qb.E) - (fa.energy - fb.energy)) < 1e-10);
  }

  TEST_CASE("far field sampling") {
    const ExactRiemannSolution ex({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, GasModel(1.4));
    const Primitive l = ex.sample(-10.0), r = ex.sample(10.0);
    CHECK(l.rho == 1.0);
    CHECK(l.p == 1.0);
    CHECK(r.rho == 0.125);
    CHECK(r.p == 0.1);
  }

  TEST_CASE("godunov flux is the physical flux of the sampled interface state") {
    const GasModel gas(1.4);
    const Primitive l{1.0, 0.75, 1.0}, r{0.125, 0.0, 0.1};
    const InterfaceSolution g = exact_riemann(l, r, gas);
    const Flux f = gas.flux(ExactRiemannSolution(l, r, gas).sample(0.0));
    CHECK(g.flux.mass == doctest::Approx(f.mass));
    CHECK(g.flux.momentum == doctest::Approx(f.momentum));
    CHECK(g.flux.energy == doctest::Approx(f.energy));
  }

  TEST_CASE("consistency of every flux choice") {
    const GasModel gas(1.4);
    const Primitive w{0.8, 0.3, 1.7};
    const Flux f = gas.flux(w);
    for (auto choice : {FluxChoice::centered, FluxChoice::exact, FluxChoice::hllc}) {
      const InterfaceSolution s = interface_flux(w, w, gas, choice);
      CHECK(s.flux.mass == doctest::Approx(f.mass).epsilon(1e-12));
      CHECK(s.flux.momentum == doctest::Approx(f.momentum).epsilon(1e-12));
      CHECK(s.flux.energy == doctest::Approx(f.energy).epsilon(1e-12));
      CHECK(s.p_star == doctest::Approx(w.p).epsilon(1e-12));
    }
  }

  TEST_CASE("hllc resolves a stationary contact") {
    const GasModel gas(1.4);
    const InterfaceSolution s = hllc_flux({1.0, 0.0, 1.0}, {0.1, 0.0, 1.0}, gas);
    CHECK(std::abs(s.flux.mass) < 1e-14);
    CHECK(s.flux.momentum == doctest::Approx(1.0));
    CHECK(std::abs(s.flux.energy) < 1e-14);
    CHECK(std::abs(s.u_star) < 1e-14);
  }

  TEST_CASE("centered choice") {
    const GasModel gas(1.4);
    const Primitive l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
    const InterfaceSolution s = centered_flux(l, r, gas);
    CHECK(s.p_star == doctest::Approx(0.55));
    CHECK(s.flux.momentum == doctest::Approx(0.55));
    CHECK(interface_pressure(l, r, gas, FluxChoice::centered) == doctest::Approx(0.55));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(ExactRiemannSolution({1.0, -5.0, 0.4}, {1.0, 5.0, 0.4}, GasModel(1.4)), VacuumError);
    CHECK_THROWS_AS(parse_flux_choice("upwind"), ArgumentError);
    CHECK(parse_flux_choice("hllc") == FluxChoice::hllc);
    CHECK(to_string(FluxChoice::exact) == "exact");
  }
}
