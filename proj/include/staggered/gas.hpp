#pragma once

#include <span>

namespace staggered {

/// Point state in primitive variables (1D).
struct Primitive {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

/// Point state in conservative variables: density, momentum rho*u and total
/// energy E = rho*eps + rho*u^2/2 (eps specific internal energy).
struct Conservative {
  double rho = 1.0;
  double m = 0.0;
  double E = 1.0;
};

/// Components of a flux of the conservative system.
struct Flux {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;

  Flux& operator+=(const Flux& o) {
    mass += o.mass;
    momentum += o.momentum;
    energy += o.energy;
    return *this;
  }
  friend Flux operator+(Flux a, const Flux& b) { return a += b; }
  friend Flux operator*(double s, Flux f) { return {s * f.mass, s * f.momentum, s * f.energy}; }
};

/// Calorically perfect gas, p = (gamma - 1) rho eps.
///
/// The staggered fields carry the internal energy per unit volume
/// e = rho * eps, so that E = e + rho u^2 / 2 and p = (gamma - 1) e; the
/// helpers below name which of the two conventions they take.
struct GasModel {
  double gamma = 1.4;

  GasModel() = default;
  explicit GasModel(double g);

  /// p from density and specific internal energy.
  double pressure(double rho, double eps) const { return (gamma - 1.0) * rho * eps; }
  /// p from internal energy per unit volume.
  double pressure_from_volumetric(double e) const { return (gamma - 1.0) * e; }
  /// Internal energy per unit volume for a given pressure.
  double volumetric_energy(double p) const { return p / (gamma - 1.0); }

  double sound_speed(double rho, double p) const;

  Conservative to_conservative(const Primitive& w) const;
  Primitive to_primitive(const Conservative& q) const;

  Flux flux(const Conservative& q) const;
  Flux flux(const Primitive& w) const;

  /// max(|u| + c) over the given states.
  double wave_bound(std::span<const Primitive> states) const;
};

/// Throws StateError unless rho > 0, p > 0 and every component is finite.
void validate(const Primitive& w);

}  // namespace staggered
