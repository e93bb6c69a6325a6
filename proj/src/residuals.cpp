#include "staggered/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "staggered/basis.hpp"
#include "staggered/errors.hpp"

namespace staggered {

Stabilization parse_stabilization(std::string_view name) {
  if (name == "llf") return Stabilization::llf;
  if (name == "jump") return Stabilization::jump;
  throw ArgumentError("unknown stabilization '" + std::string(name) + "'");
}

std::string_view to_string(Stabilization s) { return s == Stabilization::llf ? "llf" : "jump"; }

Blending parse_blending(std::string_view name) {
  if (name == "none") return Blending::none;
  if (name == "proc1") return Blending::proc1;
  if (name == "proc2") return Blending::proc2;
  throw ArgumentError("unknown blending '" + std::string(name) + "'");
}

std::string_view to_string(Blending b) {
  switch (b) {
    case Blending::none:
      return "none";
    case Blending::proc1:
      return "proc1";
    case Blending::proc2:
      return "proc2";
  }
  return "?";
}

ElementData element_data(const StaggeredField& field, int cell, const GasModel& gas) {
  ElementData el;
  el.cell = cell;
  el.h = field.layout->mesh().h(cell);
  const auto r = field.rho_cell(cell);
  const auto e = field.e_cell(cell);
  el.rho.assign(r.begin(), r.end());
  el.e.assign(e.begin(), e.end());
  el.p.resize(el.e.size());
  for (std::size_t i = 0; i < el.e.size(); ++i) el.p[i] = gas.pressure_from_volumetric(el.e[i]);
  el.u = field.u_cell(cell);
  return el;
}

double element_average(std::span<const double> coeffs) {
  return std::accumulate(coeffs.begin(), coeffs.end(), 0.0) / static_cast<double>(coeffs.size());
}

double element_wave_bound(const ElementData& el, const GasModel& gas) {
  double umax = 0.0;
  for (double v : el.u) umax = std::max(umax, std::abs(v));
  double cmax = 0.0;
  for (std::size_t i = 0; i < el.rho.size(); ++i) {
    cmax = std::max(cmax, gas.sound_speed(el.rho[i], el.p[i]));
  }
  return umax + cmax;
}

std::vector<FaceState> face_states(const StaggeredField& field, const GasModel& gas,
                                   FluxChoice choice) {
  const SpaceLayout& layout = *field.layout;
  const int n = layout.cells();
  const bool periodic = layout.mesh().periodic();

  auto trace = [&](int cell, double lambda) {
    const auto u = field.u_cell(cell);
    return Primitive{basis::bezier_value(field.rho_cell(cell), lambda),
                     basis::bezier_value(u, lambda),
                     gas.pressure_from_volumetric(basis::bezier_value(field.e_cell(cell), lambda))};
  };

  std::vector<FaceState> faces(static_cast<std::size_t>(layout.faces()));
  for (int f = 0; f < layout.faces(); ++f) {
    FaceState& fs = faces[f];
    if (f == 0) {
      fs.right = trace(0, 0.0);
      fs.left = periodic ? trace(n - 1, 1.0) : fs.right;
    } else if (f == n) {
      fs.left = trace(n - 1, 1.0);
      fs.right = fs.left;
    } else {
      fs.left = trace(f - 1, 1.0);
      fs.right = trace(f, 0.0);
    }
    fs.solution = interface_flux(fs.left, fs.right, gas, choice);
  }
  return faces;
}

std::vector<double> density_residual(const ElementData& el, double mass_flux_left,
                                     double mass_flux_right) {
  const int deg = static_cast<int>(el.rho.size()) - 1;
  const auto& q = basis::element_rule();
  std::vector<double> res(el.rho.size(), 0.0);
  for (std::size_t g = 0; g < q.size(); ++g) {
    const double l = q.points[g];
    const double flux = basis::bezier_value(el.rho, l) * basis::bezier_value(el.u, l);
    for (int i = 0; i <= deg; ++i) res[i] -= q.weights[g] * basis::derivative(deg, i, l) * flux;
  }
  for (int i = 0; i <= deg; ++i) {
    res[i] += mass_flux_right * basis::eval(deg, i, 1.0) - mass_flux_left * basis::eval(deg, i, 0.0);
  }
  return res;
}

std::vector<double> velocity_residual_centered(const ElementData& el, double rho_star,
                                               double p_star_left, double p_star_right) {
  if (!(rho_star > 0.0)) {
    throw PositivityError("non-positive element density in velocity residual (cell " +
                          std::to_string(el.cell) + ")");
  }
  const int deg = static_cast<int>(el.u.size()) - 1;
  const auto& q = basis::element_rule();
  std::vector<double> res(el.u.size(), 0.0);
  for (std::size_t g = 0; g < q.size(); ++g) {
    const double l = q.points[g];
    const double w = q.weights[g];
    // h cancels: u_x dx = (du/dlambda) dlambda.
    const double advect = basis::bezier_value(el.rho, l) * basis::bezier_value(el.u, l) *
                          basis::bezier_derivative(el.u, l);
    const double p = basis::bezier_value(el.p, l);
    for (int i = 0; i <= deg; ++i) {
      res[i] += w * (basis::eval(deg, i, l) * advect - p * basis::derivative(deg, i, l));
    }
  }
  for (int i = 0; i <= deg; ++i) {
    res[i] += p_star_right * basis::eval(deg, i, 1.0) - p_star_left * basis::eval(deg, i, 0.0);
    res[i] /= rho_star;
  }
  return res;
}

std::vector<double> energy_residual(const ElementData& el) {
  const int deg = static_cast<int>(el.e.size()) - 1;
  const auto& q = basis::element_rule();
  std::vector<double> res(el.e.size(), 0.0);
  for (std::size_t g = 0; g < q.size(); ++g) {
    const double l = q.points[g];
    const double integrand =
        basis::bezier_value(el.u, l) * basis::bezier_derivative(el.e, l) +
        (basis::bezier_value(el.e, l) + basis::bezier_value(el.p, l)) * basis::bezier_derivative(el.u, l);
    for (int i = 0; i <= deg; ++i) res[i] += q.weights[g] * basis::eval(deg, i, l) * integrand;
  }
  return res;
}

std::vector<double> llf_dissipation(std::span<const double> dofs, double alpha) {
  const double mean = element_average(dofs);
  std::vector<double> d(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) d[i] = alpha * (dofs[i] - mean);
  return d;
}

JumpContribution jump_stabilization(const ElementData& left, const ElementData& right,
                                    double theta, double beta) {
  const int dl = static_cast<int>(left.u.size()) - 1;
  const int dr = static_cast<int>(right.u.size()) - 1;
  const double hf = 0.5 * (left.h + right.h);
  const double coeff = theta * beta * hf * hf;
  const double du_jump = basis::bezier_derivative(right.u, 0.0) / right.h -
                         basis::bezier_derivative(left.u, 1.0) / left.h;

  JumpContribution out{std::vector<double>(left.u.size(), 0.0),
                       std::vector<double>(right.u.size(), 0.0)};
  for (int i = 0; i < dl; ++i) {
    out.left[i] = coeff * (-basis::derivative(dl, i, 1.0) / left.h) * du_jump;
  }
  for (int i = 1; i <= dr; ++i) {
    out.right[i] = coeff * (basis::derivative(dr, i, 0.0) / right.h) * du_jump;
  }
  const double shared = coeff * du_jump *
                        (basis::derivative(dr, 0, 0.0) / right.h - basis::derivative(dl, dl, 1.0) / left.h);
  out.left[dl] = 0.5 * shared;
  out.right[0] = 0.5 * shared;
  return out;
}

void blend_procedure1(std::span<double> residuals) {
  const double total = std::accumulate(residuals.begin(), residuals.end(), 0.0);
  if (!(std::abs(total) > 0.0)) {
    std::fill(residuals.begin(), residuals.end(), 0.0);
    return;
  }
  double sum = 0.0;
  for (double& r : residuals) {
    r = std::max(r / total, 0.0);
    sum += r;
  }
  if (sum > 0.0) {
    for (double& r : residuals) r = r / sum * total;
  } else {
    std::fill(residuals.begin(), residuals.end(), total / static_cast<double>(residuals.size()));
  }
}

void blend_procedure2(std::span<double> rho_res, std::span<double> u_res, std::span<double> e_res,
                      std::span<const double> rho, std::span<const double> e, double alpha) {
  const auto dr = llf_dissipation(rho, alpha);
  const auto de = llf_dissipation(e, alpha);
  for (std::size_t i = 0; i < rho_res.size(); ++i) rho_res[i] += dr[i];
  for (std::size_t i = 0; i < e_res.size(); ++i) e_res[i] += de[i];
  blend_procedure1(rho_res);
  blend_procedure1(u_res);
  blend_procedure1(e_res);
}

std::span<double> SpatialResiduals::rho_cell(int k) {
  return std::span<double>(rho).subspan(static_cast<std::size_t>(k * thermo_stride),
                                        static_cast<std::size_t>(thermo_stride));
}
std::span<double> SpatialResiduals::u_cell(int k) {
  return std::span<double>(u).subspan(static_cast<std::size_t>(k * kinematic_stride),
                                      static_cast<std::size_t>(kinematic_stride));
}
std::span<double> SpatialResiduals::e_cell(int k) {
  return std::span<double>(e).subspan(static_cast<std::size_t>(k * thermo_stride),
                                      static_cast<std::size_t>(thermo_stride));
}
std::span<const double> SpatialResiduals::rho_cell(int k) const {
  return std::span<const double>(rho).subspan(static_cast<std::size_t>(k * thermo_stride),
                                              static_cast<std::size_t>(thermo_stride));
}
std::span<const double> SpatialResiduals::u_cell(int k) const {
  return std::span<const double>(u).subspan(static_cast<std::size_t>(k * kinematic_stride),
                                            static_cast<std::size_t>(kinematic_stride));
}
std::span<const double> SpatialResiduals::e_cell(int k) const {
  return std::span<const double>(e).subspan(static_cast<std::size_t>(k * thermo_stride),
                                            static_cast<std::size_t>(thermo_stride));
}

Flux SpatialResiduals::boundary_flux(const SpaceLayout& layout, int k) const {
  const Flux& fl = faces[static_cast<std::size_t>(k)].solution.flux;
  const Flux& fr = faces[static_cast<std::size_t>(layout.right_face(k))].solution.flux;
  return {fr.mass - fl.mass, fr.momentum - fl.momentum, fr.energy - fl.energy};
}

SpatialResiduals assemble_residuals(const StaggeredField& field, const GasModel& gas,
                                    const SchemeOptions& options, std::span<const double> rho_star) {
  const SpaceLayout& layout = *field.layout;
  const int n = layout.cells();
  SpatialResiduals out;
  out.thermo_stride = layout.thermo_per_cell();
  out.kinematic_stride = layout.kinematic_per_cell();
  out.rho.assign(static_cast<std::size_t>(n * out.thermo_stride), 0.0);
  out.e.assign(out.rho.size(), 0.0);
  out.u.assign(static_cast<std::size_t>(n * out.kinematic_stride), 0.0);
  out.alpha.resize(static_cast<std::size_t>(n));
  out.rho_star.resize(static_cast<std::size_t>(n));
  out.faces = face_states(field, gas, options.flux);

  std::vector<ElementData> elements;
  elements.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    elements.push_back(element_data(field, k, gas));
    const ElementData& el = elements.back();
    out.alpha[k] = element_wave_bound(el, gas);
    out.rho_star[k] = rho_star.empty() ? element_average(el.rho) : rho_star[k];

    const auto& fl = out.faces[static_cast<std::size_t>(k)].solution;
    const auto& fr = out.faces[static_cast<std::size_t>(layout.right_face(k))].solution;
    const auto phi_rho = density_residual(el, fl.flux.mass, fr.flux.mass);
    const auto psi_u = velocity_residual_centered(el, out.rho_star[k], fl.p_star, fr.p_star);
    const auto phi_e = energy_residual(el);
    std::copy(phi_rho.begin(), phi_rho.end(), out.rho_cell(k).begin());
    std::copy(psi_u.begin(), psi_u.end(), out.u_cell(k).begin());
    std::copy(phi_e.begin(), phi_e.end(), out.e_cell(k).begin());

    if (options.stabilization == Stabilization::llf) {
      const auto d = llf_dissipation(el.u, out.alpha[k]);
      auto uc = out.u_cell(k);
      for (std::size_t i = 0; i < d.size(); ++i) uc[i] += d[i];
    }
  }

  if (options.stabilization == Stabilization::jump) {
    const int first = layout.mesh().periodic() ? 0 : 1;
    for (int f = first; f < n; ++f) {
      const int kl = f == 0 ? n - 1 : f - 1;
      const int kr = f;
      const double beta = std::max(out.alpha[kl], out.alpha[kr]);
      const auto j = jump_stabilization(elements[kl], elements[kr], options.theta, beta);
      auto ul = out.u_cell(kl);
      auto ur = out.u_cell(kr);
      for (std::size_t i = 0; i < j.left.size(); ++i) ul[i] += j.left[i];
      for (std::size_t i = 0; i < j.right.size(); ++i) ur[i] += j.right[i];
    }
  }

  if (options.blending != Blending::none) {
    for (int k = 0; k < n; ++k) {
      if (options.blending == Blending::proc1) {
        blend_procedure1(out.u_cell(k));
      } else {
        blend_procedure2(out.rho_cell(k), out.u_cell(k), out.e_cell(k), elements[k].rho,
                         elements[k].e, out.alpha[k]);
      }
    }
  }
  return out;
}

SpatialResiduals half_sum(const SpatialResiduals& a, const SpatialResiduals& b) {
  SpatialResiduals out = a;
  for (std::size_t i = 0; i < out.rho.size(); ++i) out.rho[i] = 0.5 * (a.rho[i] + b.rho[i]);
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] = 0.5 * (a.u[i] + b.u[i]);
  for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = 0.5 * (a.e[i] + b.e[i]);
  for (std::size_t f = 0; f < out.faces.size(); ++f) {
    auto& s = out.faces[f].solution;
    const auto& sb = b.faces[f].solution;
    s.flux = 0.5 * (s.flux + sb.flux);
    s.p_star = 0.5 * (s.p_star + sb.p_star);
    s.u_star = 0.5 * (s.u_star + sb.u_star);
  }
  for (std::size_t k = 0; k < out.alpha.size(); ++k) out.alpha[k] = std::max(a.alpha[k], b.alpha[k]);
  return out;
}

}  // namespace staggered
