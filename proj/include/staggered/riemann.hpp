#pragma once

#include <string_view>

#include "staggered/gas.hpp"

namespace staggered {

/// How interface fluxes and the interface pressure p* are obtained.
enum class FluxChoice { centered, exact, hllc };

FluxChoice parse_flux_choice(std::string_view name);
std::string_view to_string(FluxChoice choice);

/// Result of an interface solve between a left and a right trace state.
struct InterfaceSolution {
  double p_star = 0.0;
  double u_star = 0.0;
  double s_left = 0.0;   ///< leftmost signal speed (HLLC estimate; exact: head of left wave)
  double s_right = 0.0;  ///< rightmost signal speed
  Flux flux;
};

/// Exact solution of the ideal-gas Riemann problem (Toro's construction).
class ExactRiemannSolution {
 public:
  ExactRiemannSolution(const Primitive& left, const Primitive& right, const GasModel& gas);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  int iterations() const { return iterations_; }

  /// Density just left / right of the contact.
  double rho_star_left() const { return rho_star_left_; }
  double rho_star_right() const { return rho_star_right_; }

  bool left_is_shock() const { return p_star_ > left_.p; }
  bool right_is_shock() const { return p_star_ > right_.p; }
  /// Shock speeds; only meaningful when the corresponding wave is a shock.
  double left_shock_speed() const;
  double right_shock_speed() const;

  /// Self-similar state at xi = x / t.
  Primitive sample(double xi) const;

  const Primitive& left() const { return left_; }
  const Primitive& right() const { return right_; }

 private:
  Primitive left_, right_;
  GasModel gas_;
  double c_left_, c_right_;
  double p_star_ = 0.0, u_star_ = 0.0;
  double rho_star_left_ = 0.0, rho_star_right_ = 0.0;
  int iterations_ = 0;
};

/// Godunov flux of the exact solution sampled at xi = 0.
InterfaceSolution exact_riemann(const Primitive& left, const Primitive& right, const GasModel& gas);

/// HLLC flux with Davis wave-speed bounds.
InterfaceSolution hllc_flux(const Primitive& left, const Primitive& right, const GasModel& gas);

/// Arithmetic mean of the two physical fluxes; p* is the mean pressure.
InterfaceSolution centered_flux(const Primitive& left, const Primitive& right, const GasModel& gas);

InterfaceSolution interface_flux(const Primitive& left, const Primitive& right, const GasModel& gas,
                                 FluxChoice choice);

double interface_pressure(const Primitive& left, const Primitive& right, const GasModel& gas,
                          FluxChoice choice);

}  // namespace staggered
