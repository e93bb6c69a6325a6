#include "staggered/reference.hpp"

#include <cmath>
#include <numbers>

#include "staggered/errors.hpp"
#include "staggered/riemann.hpp"

namespace staggered {

std::string_view to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::riemann:
      return "riemann";
    case ReferenceKind::isentropic:
      return "isentropic";
    case ReferenceKind::none:
      return "none";
  }
  return "?";
}

double smooth_density(double x) { return 1.0 + 0.9 * std::sin(2.0 * std::numbers::pi * x); }

PrimitiveProfile BenchmarkCase::profile() const {
  if (reference == ReferenceKind::isentropic) {
    const double g = gamma;
    return [g](double x, Side) {
      const double r = smooth_density(x);
      return Primitive{r, 0.0, std::pow(r, g)};
    };
  }
  const Primitive l = left, r = right;
  const double xd = x0;
  return [l, r, xd](double x, Side side) {
    if (x < xd) return l;
    if (x > xd) return r;
    return side == Side::left ? l : r;
  };
}

const std::vector<BenchmarkCase>& builtin_cases() {
  static const std::vector<BenchmarkCase> cases = [] {
    std::vector<BenchmarkCase> v;
    BenchmarkCase sod;
    sod.name = "sod";
    sod.left = {1.0, 0.0, 1.0};
    sod.right = {0.125, 0.0, 0.1};
    sod.t_final = 0.16;
    v.push_back(sod);

    BenchmarkCase strong = sod;
    strong.name = "strong";
    strong.left = {1.0, 0.0, 1000.0};
    strong.right = {1.0, 0.0, 0.01};
    strong.t_final = 0.012;
    v.push_back(strong);

    BenchmarkCase one23 = sod;
    one23.name = "one23";
    one23.left = {1.0, -2.0, 0.4};
    one23.right = {1.0, 2.0, 0.4};
    one23.t_final = 0.15;
    v.push_back(one23);

    BenchmarkCase severe = sod;
    severe.name = "severe";
    severe.left = {5.99924, 19.5975, 460.894};
    severe.right = {5.99242, -6.19633, 46.0950};
    severe.x0 = 0.8;
    severe.t_final = 0.012;
    severe.cfl = 0.1;
    v.push_back(severe);

    BenchmarkCase smooth;
    smooth.name = "smooth";
    smooth.a = -1.0;
    smooth.b = 1.0;
    smooth.x0 = 0.0;
    smooth.t_final = 0.025;
    smooth.gamma = 3.0;
    smooth.boundary = Boundary::periodic;
    smooth.reference = ReferenceKind::isentropic;
    v.push_back(smooth);
    return v;
  }();
  return cases;
}

const BenchmarkCase& find_case(const std::string& name) {
  for (const auto& c : builtin_cases()) {
    if (c.name == name) return c;
  }
  throw ArgumentError("unknown case '" + name + "'");
}

RiemannSample sample_riemann(const BenchmarkCase& c, double x, double t) {
  if (!(t > 0.0)) throw ArgumentError("riemann sampling needs t > 0");
  if (c.reference != ReferenceKind::riemann) throw ArgumentError("case '" + c.name + "' has no two-state data");
  const GasModel gas = c.gas();
  const double xi = (x - c.x0) / t;
  try {
    return {ExactRiemannSolution(c.left, c.right, gas).sample(xi), false};
  } catch (const VacuumError&) {
    // Two rarefactions separated by vacuum.
    const double g = gas.gamma;
    const Primitive& l = c.left;
    const Primitive& r = c.right;
    const double cl = gas.sound_speed(l.rho, l.p);
    const double cr = gas.sound_speed(r.rho, r.p);
    const double tail_l = l.u + 2.0 * cl / (g - 1.0);
    const double tail_r = r.u - 2.0 * cr / (g - 1.0);
    if (xi <= l.u - cl) return {l, false};
    if (xi >= r.u + cr) return {r, false};
    if (xi < tail_l) {
      const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * cl) * (l.u - xi);
      return {{l.rho * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * l.u + xi),
               l.p * std::pow(k, 2.0 * g / (g - 1.0))},
              false};
    }
    if (xi > tail_r) {
      const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * cr) * (r.u - xi);
      return {{r.rho * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * r.u + xi),
               r.p * std::pow(k, 2.0 * g / (g - 1.0))},
              false};
    }
    return {{0.0, xi, 0.0}, true};
  }
}

IsentropicState isentropic_exact(double x, double t, const std::function<double(double)>& rho0,
                                 double period, double gamma) {
  if (std::abs(gamma - 3.0) > 1e-12) throw ArgumentError("closed-form isentropic solution needs gamma = 3");
  const double s3 = std::sqrt(3.0);
  IsentropicState out;
  if (t == 0.0) {
    out.rho = rho0(x);
    out.x1 = out.x2 = x;
    return out;
  }

  // Solve g(y) = y + sign * s3 rho0(y) t - x = 0 by damped Newton; rho0' by
  // central differences is enough since the root is refined on g itself.
  auto solve = [&](double sign) {
    auto g = [&](double y) { return y + sign * s3 * rho0(y) * t - x; };
    const double eps = 1e-7 * period;
    double y = x;
    for (int it = 0; it < 200; ++it) {
      const double gy = g(y);
      if (std::abs(gy) < 1e-13 * std::max(1.0, std::abs(x))) return y;
      const double dg = 1.0 + sign * s3 * t * (rho0(y + eps) - rho0(y - eps)) / (2.0 * eps);
      if (!(dg > 0.0)) throw ConvergenceError("characteristics have crossed (t too late)");
      double step = gy / dg;
      double lam = 1.0;
      while (lam > 1e-6 && std::abs(g(y - lam * step)) > std::abs(gy)) lam *= 0.5;
      y -= lam * step;
    }
    throw ConvergenceError("characteristic foot did not converge");
  };
  // x = x1 - s3 rho0(x1) t  and  x = x2 + s3 rho0(x2) t
  out.x1 = solve(-1.0);
  out.x2 = solve(+1.0);
  const double r1 = rho0(out.x1), r2 = rho0(out.x2);
  out.rho = 0.5 * (r1 + r2);
  out.u = s3 * (out.rho - r1);
  return out;
}

std::optional<ReferenceSampler> reference_sampler(const BenchmarkCase& c, double t) {
  switch (c.reference) {
    case ReferenceKind::riemann:
      if (t <= 0.0) return ReferenceSampler([c](double x) { return c.profile()(x, Side::right); });
      return ReferenceSampler([c, t](double x) { return sample_riemann(c, x, t).state; });
    case ReferenceKind::isentropic:
      return ReferenceSampler([c, t](double x) {
        const auto s = isentropic_exact(x, t, smooth_density, 1.0, c.gamma);
        return Primitive{s.rho, s.u, std::pow(s.rho, c.gamma)};
      });
    case ReferenceKind::none:
      break;
  }
  return std::nullopt;
}

L1Errors l1_error(const StaggeredField& field, const GasModel& gas, const ReferenceSampler& ref,
                  int n_samples) {
  if (n_samples < 1) throw ArgumentError("need at least one sample");
  const Mesh1D& mesh = field.layout->mesh();
  const double dx = mesh.length() / n_samples;
  L1Errors err;
  for (int i = 0; i < n_samples; ++i) {
    const double x = mesh.left() + (i + 0.5) * dx;
    const Primitive w = ref(x);
    err.rho += dx * std::abs(eval_field(field, Variable::density, x) - w.rho);
    err.u += dx * std::abs(eval_field(field, Variable::velocity, x) - w.u);
    err.p += dx * std::abs(gas.pressure_from_volumetric(eval_field(field, Variable::energy, x)) - w.p);
  }
  return err;
}

std::optional<double> exact_right_shock(const BenchmarkCase& c, double t) {
  if (c.reference != ReferenceKind::riemann) return std::nullopt;
  const ExactRiemannSolution sol(c.left, c.right, c.gas());
  if (!sol.right_is_shock()) return std::nullopt;
  return c.x0 + sol.right_shock_speed() * t;
}

}  // namespace staggered
