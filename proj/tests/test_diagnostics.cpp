#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "staggered/diagnostics.hpp"
#include "staggered/errors.hpp"
#include "staggered/format.hpp"

using namespace staggered;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("staggered_test_" + name)).string();
}

std::vector<ProfileRow> step_rows(std::initializer_list<std::pair<double, double>> jumps, int n = 400) {
  std::vector<ProfileRow> rows;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    double v = 1.0;
    for (const auto& [pos, height] : jumps) v += x > pos ? height : 0.0;
    rows.push_back({x, v, 0.0, 1.0, 1.0});
  }
  return rows;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("totals of a known field") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 2.0, 5, Boundary::transmissive), 1);
    const auto f = project_initial([](double x) { return 1.0 + x; }, [](double) { return 2.0; },
                                   [](double) { return 0.4; }, l, gas);
    const Totals t = conservation_totals(f);
    CHECK(t.mass == doctest::Approx(4.0));
    CHECK(t.momentum == doctest::Approx(8.0));
    CHECK(t.energy == doctest::Approx(2.0 + 0.5 * 4.0 * 4.0));
  }

  TEST_CASE("ledger drifts account for outflow") {
    ConservationLedger led;
    led.start({2.0, 0.0, 8.0});
    led.record(1, 0.1, {2.0, 0.5, 8.0}, {0.0, -0.5, 0.0}, 0.0, 0.0);
    CHECK(led.entries().back().rel_drift_m == doctest::Approx(0.0));
    led.record(2, 0.2, {2.0, 0.5 + 4e-3, 8.0 - 8e-3}, {}, 0.0, 0.0);
    CHECK(led.entries().back().rel_drift_m == doctest::Approx(4e-3 / std::sqrt(32.0)));
    CHECK(led.entries().back().rel_drift_E == doctest::Approx(-1e-3));
    CHECK(led.max_abs_drift_E() == doctest::Approx(1e-3));
    CHECK(led.mass_drift() == 0.0);
  }

  TEST_CASE("weak BV statistic") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 0.5, 1, Boundary::transmissive), 1);
    StaggeredField f(l);
    f.rho = {0.0, 1.0};
    f.e = {1.0, 1.0};
    f.u = {0.0, 0.0, 0.0};
    WeakBV bv;
    bv.add(f, 0.1);
    CHECK(bv.rho() == doctest::Approx(0.1 * 0.5));
    CHECK(bv.e() == 0.0);
    CHECK(bv.u() == 0.0);
  }

  TEST_CASE("profile sampling, writing and reading back") {
    const GasModel gas(1.4);
    const auto l = build_spaces(Mesh1D::uniform(0.0, 1.0, 7, Boundary::transmissive), 1);
    const auto f = project_initial([](double x) { return 1.0 + std::sin(x); }, [](double x) { return x / 3.0; },
                                   [](double x) { return 1.0 + x * x; }, l, gas);
    const std::string path = temp_path("profile.csv");
    write_profile(f, gas, path);
    std::ifstream in(path);
    int lines = 0;
    std::string line, header;
    std::getline(in, header);
    CHECK(header == "x,rho,u,p,e");
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1000);
    const auto rows = read_profile(path);
    const auto direct = sample_profile(f, gas);
    REQUIRE(rows.size() == direct.size());
    for (std::size_t i = 0; i < rows.size(); i += 37) {
      CHECK(rows[i].x == direct[i].x);
      CHECK(rows[i].rho == direct[i].rho);
      CHECK(rows[i].u == direct[i].u);
      CHECK(rows[i].p == direct[i].p);
      CHECK(rows[i].e == direct[i].e);
    }
    CHECK(direct[10].e == doctest::Approx(direct[10].p / (0.4 * direct[10].rho)));
    std::filesystem::remove(path);
  }

  TEST_CASE("empty series is header only") {
    ConservationLedger led;
    led.start({1.0, 0.0, 1.0});
    std::ostringstream os;
    write_series(led, os);
    CHECK(os.str() == "step,t,mass,momentum,energy,rel_drift_m,rel_drift_E,max_ru,max_re\n");
  }

  TEST_CASE("summary format") {
    std::ostringstream os;
    write_summary({{"a", "1"}, {"b", "x"}}, os);
    CHECK(os.str() == "quantity,value\na,1\nb,x\n");
  }

  TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    const double v = 0.30000000000000004;
    CHECK(std::stod(format_double(v)) == v);
  }

  TEST_CASE("io errors name the path") {
    ConservationLedger led;
    CHECK_THROWS_AS(write_series(led, "/nonexistent_dir/x.csv"), IoError);
    CHECK_THROWS_AS(read_profile("/nonexistent_dir/x.csv"), IoError);
  }

  TEST_CASE("level crossing from the right") {
    const auto rows = step_rows({{0.3, -0.5}, {0.7, -0.25}});
    const double x = crossing_from_right(rows, &ProfileRow::rho, 0.375);
    CHECK(x == doctest::Approx(0.7).epsilon(0.01));
    CHECK(std::isnan(crossing_from_right(rows, &ProfileRow::rho, 5.0)));
  }

  TEST_CASE("steep gradient clusters") {
    const auto rows = step_rows({{0.2, 1.0}, {0.5, 0.1}, {0.8, 3.0}});
    const auto c = steep_gradient_locations(rows, &ProfileRow::rho, 0.02, 0.02);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(0.2).epsilon(0.01));
    CHECK(c[1] == doctest::Approx(0.5).epsilon(0.01));
    CHECK(c[2] == doctest::Approx(0.8).epsilon(0.01));
    CHECK(steep_gradient_locations(rows, &ProfileRow::rho, 0.5, 0.02).size() == 1);
  }
}
