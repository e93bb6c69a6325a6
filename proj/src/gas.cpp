#include "staggered/gas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "staggered/errors.hpp"

namespace staggered {

GasModel::GasModel(double g) : gamma(g) {
  if (!(g > 1.0)) throw ArgumentError("ratio of specific heats must exceed 1");
}

void validate(const Primitive& w) {
  if (!std::isfinite(w.rho) || !std::isfinite(w.u) || !std::isfinite(w.p) || !(w.rho > 0.0) ||
      !(w.p > 0.0)) {
    std::ostringstream os;
    os << "non-physical state (rho=" << w.rho << ", u=" << w.u << ", p=" << w.p << ")";
    throw StateError(os.str());
  }
}

double GasModel::sound_speed(double rho, double p) const {
  if (!(rho > 0.0) || !(p > 0.0)) {
    std::ostringstream os;
    os << "sound speed undefined for rho=" << rho << ", p=" << p;
    throw StateError(os.str());
  }
  return std::sqrt(gamma * p / rho);
}

Conservative GasModel::to_conservative(const Primitive& w) const {
  return {w.rho, w.rho * w.u, volumetric_energy(w.p) + 0.5 * w.rho * w.u * w.u};
}

Primitive GasModel::to_primitive(const Conservative& q) const {
  if (!(q.rho > 0.0)) throw StateError("non-positive density in conservative state");
  const double u = q.m / q.rho;
  const double e = q.E - 0.5 * q.m * u;
  if (!(e > 0.0)) throw StateError("non-positive internal energy in conservative state");
  return {q.rho, u, pressure_from_volumetric(e)};
}

Flux GasModel::flux(const Conservative& q) const { return flux(to_primitive(q)); }

Flux GasModel::flux(const Primitive& w) const {
  validate(w);
  const double E = volumetric_energy(w.p) + 0.5 * w.rho * w.u * w.u;
  return {w.rho * w.u, w.rho * w.u * w.u + w.p, (E + w.p) * w.u};
}

double GasModel::wave_bound(std::span<const Primitive> states) const {
  double a = 0.0;
  for (const auto& w : states) a = std::max(a, std::abs(w.u) + sound_speed(w.rho, w.p));
  return a;
}

}  // namespace staggered
