#include "staggered/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "staggered/errors.hpp"

namespace staggered {
namespace {

constexpr int kMaxIterations = 100;
constexpr double kTolerance = 1e-14;

// Toro's pressure function for one side and its derivative in p.
void pressure_function(double p, const Primitive& w, double c, double gamma, double& f,
                       double& df) {
  if (p > w.p) {
    const double a = 2.0 / ((gamma + 1.0) * w.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double s = std::sqrt(a / (p + b));
    f = (p - w.p) * s;
    df = s * (1.0 - 0.5 * (p - w.p) / (p + b));
  } else {
    const double ratio = p / w.p;
    const double z = (gamma - 1.0) / (2.0 * gamma);
    f = 2.0 * c / (gamma - 1.0) * (std::pow(ratio, z) - 1.0);
    df = 1.0 / (w.rho * c) * std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma));
  }
}

}  // namespace

FluxChoice parse_flux_choice(std::string_view name) {
  if (name == "centered") return FluxChoice::centered;
  if (name == "exact") return FluxChoice::exact;
  if (name == "hllc") return FluxChoice::hllc;
  throw ArgumentError("unknown flux choice '" + std::string(name) + "'");
}

std::string_view to_string(FluxChoice choice) {
  switch (choice) {
    case FluxChoice::centered:
      return "centered";
    case FluxChoice::exact:
      return "exact";
    case FluxChoice::hllc:
      return "hllc";
  }
  return "?";
}

ExactRiemannSolution::ExactRiemannSolution(const Primitive& left, const Primitive& right,
                                           const GasModel& gas)
    : left_(left), right_(right), gas_(gas) {
  validate(left);
  validate(right);
  const double g = gas.gamma;
  c_left_ = gas.sound_speed(left.rho, left.p);
  c_right_ = gas.sound_speed(right.rho, right.p);
  const double du = right.u - left.u;
  if (2.0 * (c_left_ + c_right_) / (g - 1.0) <= du) {
    throw VacuumError("Riemann data generates vacuum");
  }

  auto total = [&](double p, double& f, double& df) {
    double fl, dfl, fr, dfr;
    pressure_function(p, left, c_left_, g, fl, dfl);
    pressure_function(p, right, c_right_, g, fr, dfr);
    f = fl + fr + du;
    df = dfl + dfr;
  };

  // Two-rarefaction guess; f is increasing and concave in p, f(0+) < 0.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((c_left_ + c_right_ - 0.5 * (g - 1.0) * du) /
                          (c_left_ / std::pow(left.p, z) + c_right_ / std::pow(right.p, z)),
                      1.0 / z);
  if (!(p > 0.0) || !std::isfinite(p)) p = 0.5 * (left.p + right.p);

  double lo = 0.0;
  double hi = std::max(left.p, right.p);
  double f, df;
  total(hi, f, df);
  while (f < 0.0) {
    lo = hi;
    hi *= 2.0;
    total(hi, f, df);
  }
  if (p <= lo || p >= hi) p = 0.5 * (lo + hi);

  bool converged = false;
  for (iterations_ = 1; iterations_ <= kMaxIterations; ++iterations_) {
    total(p, f, df);
    if (f < 0.0) lo = p; else hi = p;
    double next = p - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - p) / (0.5 * (next + p));
    p = next;
    if (change < kTolerance || hi - lo <= kTolerance * hi) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("exact Riemann solver did not converge");

  double fl, dfl, fr, dfr;
  pressure_function(p, left, c_left_, g, fl, dfl);
  pressure_function(p, right, c_right_, g, fr, dfr);
  p_star_ = p;
  u_star_ = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);

  const double gm = (g - 1.0) / (g + 1.0);
  auto star_density = [&](const Primitive& w) {
    const double ratio = p_star_ / w.p;
    if (p_star_ > w.p) return w.rho * (ratio + gm) / (gm * ratio + 1.0);
    return w.rho * std::pow(ratio, 1.0 / g);
  };
  rho_star_left_ = star_density(left);
  rho_star_right_ = star_density(right);
}

double ExactRiemannSolution::left_shock_speed() const {
  const double g = gas_.gamma;
  return left_.u - c_left_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / left_.p + (g - 1.0) / (2.0 * g));
}

double ExactRiemannSolution::right_shock_speed() const {
  const double g = gas_.gamma;
  return right_.u +
         c_right_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / right_.p + (g - 1.0) / (2.0 * g));
}

Primitive ExactRiemannSolution::sample(double xi) const {
  const double g = gas_.gamma;
  if (xi <= u_star_) {
    const Primitive& w = left_;
    const double c = c_left_;
    if (left_is_shock()) {
      return xi <= left_shock_speed() ? w : Primitive{rho_star_left_, u_star_, p_star_};
    }
    const double head = w.u - c;
    const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - c_star;
    if (xi <= head) return w;
    if (xi >= tail) return {rho_star_left_, u_star_, p_star_};
    const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
    return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi),
            w.p * std::pow(k, 2.0 * g / (g - 1.0))};
  }
  const Primitive& w = right_;
  const double c = c_right_;
  if (right_is_shock()) {
    return xi >= right_shock_speed() ? w : Primitive{rho_star_right_, u_star_, p_star_};
  }
  const double head = w.u + c;
  const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + c_star;
  if (xi >= head) return w;
  if (xi <= tail) return {rho_star_right_, u_star_, p_star_};
  const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
  return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi),
          w.p * std::pow(k, 2.0 * g / (g - 1.0))};
}

InterfaceSolution exact_riemann(const Primitive& left, const Primitive& right, const GasModel& gas) {
  ExactRiemannSolution sol(left, right, gas);
  InterfaceSolution out;
  out.p_star = sol.p_star();
  out.u_star = sol.u_star();
  const double cl = gas.sound_speed(left.rho, left.p);
  const double cr = gas.sound_speed(right.rho, right.p);
  out.s_left = sol.left_is_shock() ? sol.left_shock_speed() : left.u - cl;
  out.s_right = sol.right_is_shock() ? sol.right_shock_speed() : right.u + cr;
  out.flux = gas.flux(sol.sample(0.0));
  return out;
}

InterfaceSolution hllc_flux(const Primitive& left, const Primitive& right, const GasModel& gas) {
  validate(left);
  validate(right);
  const double cl = gas.sound_speed(left.rho, left.p);
  const double cr = gas.sound_speed(right.rho, right.p);
  const double sl = std::min(left.u - cl, right.u - cr);
  const double sr = std::max(left.u + cl, right.u + cr);
  const double ml = left.rho * (sl - left.u);
  const double mr = right.rho * (sr - right.u);
  const double s_star = (right.p - left.p + left.u * ml - right.u * mr) / (ml - mr);

  InterfaceSolution out;
  out.s_left = sl;
  out.s_right = sr;
  out.u_star = s_star;
  out.p_star = left.p + ml * (s_star - left.u);

  const Conservative ql = gas.to_conservative(left);
  const Conservative qr = gas.to_conservative(right);
  if (sl >= 0.0) {
    out.flux = gas.flux(left);
  } else if (sr <= 0.0) {
    out.flux = gas.flux(right);
  } else {
    const bool use_left = s_star >= 0.0;
    const Primitive& w = use_left ? left : right;
    const Conservative& q = use_left ? ql : qr;
    const double s = use_left ? sl : sr;
    const double factor = w.rho * (s - w.u) / (s - s_star);
    const Conservative star{factor, factor * s_star,
                            factor * (q.E / w.rho + (s_star - w.u) * (s_star + w.p / (w.rho * (s - w.u))))};
    const Flux f = gas.flux(w);
    out.flux = {f.mass + s * (star.rho - q.rho), f.momentum + s * (star.m - q.m),
                f.energy + s * (star.E - q.E)};
  }
  return out;
}

InterfaceSolution centered_flux(const Primitive& left, const Primitive& right, const GasModel& gas) {
  InterfaceSolution out;
  out.flux = 0.5 * (gas.flux(left) + gas.flux(right));
  out.p_star = 0.5 * (left.p + right.p);
  out.u_star = 0.5 * (left.u + right.u);
  const double cl = gas.sound_speed(left.rho, left.p);
  const double cr = gas.sound_speed(right.rho, right.p);
  out.s_left = std::min(left.u - cl, right.u - cr);
  out.s_right = std::max(left.u + cl, right.u + cr);
  return out;
}

InterfaceSolution interface_flux(const Primitive& left, const Primitive& right, const GasModel& gas,
                                 FluxChoice choice) {
  switch (choice) {
    case FluxChoice::centered:
      return centered_flux(left, right, gas);
    case FluxChoice::exact:
      return exact_riemann(left, right, gas);
    case FluxChoice::hllc:
      return hllc_flux(left, right, gas);
  }
  throw ArgumentError("unknown flux choice");
}

double interface_pressure(const Primitive& left, const Primitive& right, const GasModel& gas,
                          FluxChoice choice) {
  return interface_flux(left, right, gas, choice).p_star;
}

}  // namespace staggered
