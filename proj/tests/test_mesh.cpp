#include <cmath>

#include "doctest.h"
#include "staggered/errors.hpp"
#include "staggered/mesh.hpp"

using namespace staggered;

TEST_SUITE("mesh") {
  TEST_CASE("uniform mesh and location") {
    const Mesh1D m = Mesh1D::uniform(0.0, 1.0, 4, Boundary::transmissive);
    CHECK(m.cells() == 4);
    CHECK(m.h(2) == doctest::Approx(0.25));
    auto [k, l] = m.locate(0.3);
    CHECK(k == 1);
    CHECK(l == doctest::Approx(0.2));
    CHECK(m.locate(0.5, Side::left).first == 1);
    CHECK(m.locate(0.5, Side::right).first == 2);
    CHECK(m.locate(1.0).first == 3);
    CHECK_THROWS_AS(m.locate(1.5), ArgumentError);
  }

  TEST_CASE("dof counts of the staggered pairs") {
    for (bool periodic : {false, true}) {
      const Boundary b = periodic ? Boundary::periodic : Boundary::transmissive;
      const int n = 10;
      const auto k1t0 = build_spaces(Mesh1D::uniform(0.0, 1.0, n, b), 0);
      const auto k2t1 = build_spaces(Mesh1D::uniform(0.0, 1.0, n, b), 1);
      const auto k1t1 = build_spaces(Mesh1D::uniform(0.0, 1.0, n, b), 1, 1);
      CHECK(k1t0->thermo_dofs() == n);
      CHECK(k2t1->thermo_dofs() == 2 * n);
      CHECK(k1t0->kinematic_dofs() == n + (periodic ? 0 : 1));
      CHECK(k2t1->kinematic_dofs() == 2 * n + (periodic ? 0 : 1));
      CHECK(k1t1->kinematic_dofs() == n + (periodic ? 0 : 1));
      CHECK(k2t1->faces() == n + (periodic ? 0 : 1));
    }
  }

  TEST_CASE("continuity of the kinematic numbering") {
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 5, Boundary::periodic), 1);
    for (int k = 0; k < 5; ++k) {
      CHECK(l->kinematic_dof(k, 2) == l->kinematic_dof((k + 1) % 5, 0));
    }
    CHECK(l->kinematic_cells(0).size() == 2);
    CHECK(l->kinematic_cells(1).size() == 1);
    CHECK(l->right_face(4) == 0);
  }

  TEST_CASE("lumped masses add up to the domain") {
    for (int r : {0, 1}) {
      for (auto b : {Boundary::transmissive, Boundary::periodic}) {
        const auto l = build_spaces(Mesh1D({0.0, 0.1, 0.4, 0.5, 1.2}, b), r);
        double st = 0.0, sk = 0.0;
        for (int i = 0; i < l->thermo_dofs(); ++i) st += l->thermo_mass(i);
        for (int i = 0; i < l->kinematic_dofs(); ++i) {
          CHECK(l->kinematic_mass(i) > 0.0);
          sk += l->kinematic_mass(i);
        }
        CHECK(st == doctest::Approx(1.2));
        CHECK(sk == doctest::Approx(1.2));
      }
    }
  }

  TEST_CASE("projection reproduces polynomials of the space") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 2.0, 7, Boundary::transmissive), 1);
    const auto f = project_initial([](double x) { return 1.0 + 0.5 * x; },
                                   [](double x) { return x * x - x; },
                                   [](double x) { return 2.0 - 0.3 * x; }, l, gas);
    for (double x : {0.05, 0.6, 1.31, 1.99}) {
      CHECK(eval_field(f, Variable::density, x) == doctest::Approx(1.0 + 0.5 * x));
      CHECK(eval_field(f, Variable::velocity, x) == doctest::Approx(x * x - x));
      CHECK(eval_field(f, Variable::energy, x) == doctest::Approx((2.0 - 0.3 * x) / 0.4));
    }
  }

  TEST_CASE("discontinuity on a node takes one-sided values") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 4, Boundary::transmissive), 0);
    const auto f = project_initial(
        [](double x, Side s) {
          const bool left = x < 0.5 || (x == 0.5 && s == Side::left);
          return left ? Primitive{1.0, 1.0, 1.0} : Primitive{0.125, 3.0, 0.1};
        },
        l, gas);
    CHECK(f.rho[1] == 1.0);
    CHECK(f.rho[2] == 0.125);
    CHECK(f.u[2] == doctest::Approx(2.0));
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(Mesh1D({0.0, 0.0}, Boundary::transmissive), ArgumentError);
    CHECK_THROWS_AS(Mesh1D::uniform(0.0, 1.0, 0, Boundary::transmissive), ArgumentError);
    CHECK_THROWS_AS(build_spaces(Mesh1D::uniform(0.0, 1.0, 4, Boundary::transmissive), 2), ArgumentError);
    CHECK_THROWS_AS(parse_boundary("slip"), ArgumentError);
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 4, Boundary::transmissive), 0);
    CHECK_THROWS_AS(project_initial([](double) { return -1.0; }, [](double) { return 0.0; },
                                    [](double) { return 1.0; }, l, gas),
                    DataError);
  }
}
