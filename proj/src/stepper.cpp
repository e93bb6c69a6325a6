#include "staggered/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "staggered/basis.hpp"
#include "staggered/errors.hpp"

namespace staggered {

TimeScheme parse_time_scheme(std::string_view name) {
  if (name == "euler") return TimeScheme::euler;
  if (name == "dec2") return TimeScheme::dec2;
  throw ArgumentError("unknown time scheme '" + std::string(name) + "'");
}

std::string_view to_string(TimeScheme s) { return s == TimeScheme::euler ? "euler" : "dec2"; }

double compute_dt(const StaggeredField& field, const GasModel& gas, double cfl, double t,
                  double t_final, double dt_max) {
  if (!(cfl > 0.0)) throw ArgumentError("cfl must be positive");
  double dt = std::numeric_limits<double>::infinity();
  for (int k = 0; k < field.layout->cells(); ++k) {
    const double a = element_wave_bound(element_data(field, k, gas), gas);
    if (a > 0.0) dt = std::min(dt, field.layout->mesh().h(k) / a);
  }
  dt = std::isfinite(dt) ? cfl * dt : dt_max;
  if (t + dt > t_final) dt = t_final - t;
  return dt;
}

StepResult apply_update(const StaggeredField& old, const SpatialResiduals& res, double dt, bool correct) {
  const SpaceLayout& layout = *old.layout;
  const int n = layout.cells();
  const int nk = layout.kinematic_per_cell();
  const int nt = layout.thermo_per_cell();

  StepResult out{StaggeredField(old.layout), {}, {}};
  StaggeredField& next = out.state;
  StepRecord& rec = out.record;
  rec.dt = dt;
  rec.phi_rho = res.rho;
  rec.psi = res.u;
  rec.phi_e = res.e;
  rec.target_m.resize(static_cast<std::size_t>(n));
  rec.target_e.resize(static_cast<std::size_t>(n));
  rec.scale_m.resize(static_cast<std::size_t>(n));
  rec.scale_e.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Flux f = res.boundary_flux(layout, k);
    rec.target_m[k] = f.momentum;
    rec.target_e[k] = f.energy;
    const Flux& fl = res.faces[static_cast<std::size_t>(k)].solution.flux;
    const Flux& fr = res.faces[static_cast<std::size_t>(layout.right_face(k))].solution.flux;
    rec.scale_m[k] = std::abs(fl.momentum) + std::abs(fr.momentum);
    rec.scale_e[k] = std::abs(fl.energy) + std::abs(fr.energy);
  }

  auto check = [](double v, const char* what, int dof) {
    if (!std::isfinite(v)) {
      throw BlowUpError(std::string("non-finite ") + what + " at dof " + std::to_string(dof), -1,
                        std::numeric_limits<double>::quiet_NaN());
    }
  };

  for (int d = 0; d < layout.thermo_dofs(); ++d) {
    next.rho[d] = old.rho[d] - dt / layout.thermo_mass(d) * res.rho[d];
    check(next.rho[d], "density", d);
    if (!(next.rho[d] > 0.0)) throw PositivityError("non-positive density at dof " + std::to_string(d));
  }

  if (correct) {
    compute_momentum_weights(layout, next.rho, old.u, rec.weights);
    rec.r_u.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      auto psi = std::span<double>(rec.psi).subspan(static_cast<std::size_t>(k * nk), nk);
      const auto pr = std::span<const double>(rec.phi_rho).subspan(static_cast<std::size_t>(k * nt), nt);
      rec.r_u[k] = momentum_correction(layout, k, rec.weights, psi, pr, rec.target_m[k]);
      for (double& v : psi) v += rec.r_u[k];
    }
  }

  std::vector<double> acc(static_cast<std::size_t>(layout.kinematic_dofs()), 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < nk; ++i) acc[layout.kinematic_dof(k, i)] += rec.psi[k * nk + i];
  }
  for (int d = 0; d < layout.kinematic_dofs(); ++d) {
    next.u[d] = old.u[d] - dt / layout.kinematic_mass(d) * acc[d];
    check(next.u[d], "velocity", d);
  }

  if (correct) {
    compute_energy_weights(layout, old.rho, old.u, next.rho, next.u, rec.weights);
    rec.r_e.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      auto pe = std::span<double>(rec.phi_e).subspan(static_cast<std::size_t>(k * nt), nt);
      const auto psi = std::span<const double>(rec.psi).subspan(static_cast<std::size_t>(k * nk), nk);
      const auto pr = std::span<const double>(rec.phi_rho).subspan(static_cast<std::size_t>(k * nt), nt);
      rec.r_e[k] = energy_correction(layout, k, rec.weights, pe, psi, pr, rec.target_e[k]);
      for (double& v : pe) v += rec.r_e[k];
    }
  }

  for (int d = 0; d < layout.thermo_dofs(); ++d) {
    next.e[d] = old.e[d] - dt / layout.thermo_mass(d) * rec.phi_e[d];
    check(next.e[d], "internal energy", d);
    if (!(next.e[d] > 0.0)) {
      throw PositivityError("non-positive internal energy at dof " + std::to_string(d));
    }
  }

  if (!layout.mesh().periodic()) {
    const Flux& first = res.faces.front().solution.flux;
    const Flux& last = res.faces.back().solution.flux;
    out.outflow = {dt * (last.mass - first.mass), dt * (last.momentum - first.momentum),
                   dt * (last.energy - first.energy)};
  }
  return out;
}

namespace {

// Consistent-minus-lumped mass applied to the stage increment, divided by dt:
//   (int_K phi_i (v - v^n) - |C_i^K| (v_i - v_i^n)) / dt.
// Sums to zero over the element, so element totals are untouched.
void add_mass_defect(std::span<double> res, std::span<const double> stage, std::span<const double> base,
                     double h, double dt) {
  const int deg = static_cast<int>(stage.size()) - 1;
  const auto& q = basis::element_rule();
  std::vector<double> d(stage.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = stage[i] - base[i];
  const double lumped = h / (deg + 1);
  for (int i = 0; i <= deg; ++i) {
    double m = 0.0;
    for (std::size_t g = 0; g < q.size(); ++g) {
      m += q.weights[g] * basis::eval(deg, i, q.points[g]) * basis::bezier_value(d, q.points[g]);
    }
    res[i] += (h * m - lumped * d[i]) / dt;
  }
}

void add_mass_defect(SpatialResiduals& res, const StaggeredField& stage, const StaggeredField& base,
                     double dt) {
  const SpaceLayout& layout = *base.layout;
  for (int k = 0; k < layout.cells(); ++k) {
    const double h = layout.mesh().h(k);
    add_mass_defect(res.rho_cell(k), stage.rho_cell(k), base.rho_cell(k), h, dt);
    add_mass_defect(res.e_cell(k), stage.e_cell(k), base.e_cell(k), h, dt);
    add_mass_defect(res.u_cell(k), stage.u_cell(k), base.u_cell(k), h, dt);
  }
}

}  // namespace

StepResult euler_step(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                      double dt) {
  return apply_update(field, assemble_residuals(field, gas, opt.scheme), dt, opt.correction);
}

StepResult dec_step(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                    double dt, int passes) {
  if (passes < 1) throw ArgumentError("deferred correction needs at least one pass");
  const SpatialResiduals r0 = assemble_residuals(field, gas, opt.scheme);
  StepResult cur = apply_update(field, r0, dt, opt.correction);
  for (int k = 2; k <= passes; ++k) {
    const SpatialResiduals rk = assemble_residuals(cur.state, gas, opt.scheme);
    SpatialResiduals hk = half_sum(r0, rk);
    add_mass_defect(hk, cur.state, field, dt);
    cur = apply_update(field, hk, dt, opt.correction);
  }
  return cur;
}

AdvanceResult advance(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                      double dt) {
  const int passes = opt.time == TimeScheme::euler ? 1 : opt.dec_sweeps;
  for (int h = 0;; ++h) {
    try {
      return AdvanceResult{dec_step(field, gas, opt, dt, passes), dt, h};
    } catch (const PositivityError&) {
      if (h >= opt.max_halvings) throw;
    } catch (const StateError& e) {
      // An intermediate stage left the admissible set.
      if (h >= opt.max_halvings) throw PositivityError(e.what());
    } catch (const VacuumError& e) {
      if (h >= opt.max_halvings) throw PositivityError(e.what());
    }
    dt *= 0.5;
  }
}

}  // namespace staggered
