#include "staggered/correction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "staggered/basis.hpp"
#include "staggered/errors.hpp"
#include "staggered/format.hpp"

namespace staggered {
namespace {

// Below this magnitude products lose relative precision (subnormal range), so
// residues are measured against it instead of the vanishing local scale.
constexpr double kScaleFloor =
    std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

double relative(double diff, double scale) { return diff / std::max(scale, kScaleFloor); }

std::vector<double> local_u(const SpaceLayout& layout, std::span<const double> u, int cell) {
  std::vector<double> c(static_cast<std::size_t>(layout.kinematic_per_cell()));
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) c[i] = u[layout.kinematic_dof(cell, i)];
  return c;
}

std::span<const double> local_thermo(const SpaceLayout& layout, std::span<const double> v, int cell) {
  return v.subspan(static_cast<std::size_t>(layout.thermo_dof(cell, 0)),
                   static_cast<std::size_t>(layout.thermo_per_cell()));
}

// int_K f phi_i dx for every local basis function of degree `deg`, with f
// given at the quadrature points of the element rule.
template <class F>
std::vector<double> moments(int deg, double h, F&& f) {
  const auto& q = basis::element_rule();
  std::vector<double> out(static_cast<std::size_t>(deg + 1), 0.0);
  for (std::size_t g = 0; g < q.size(); ++g) {
    const double val = f(q.points[g]);
    for (int i = 0; i <= deg; ++i) out[i] += h * q.weights[g] * basis::eval(deg, i, q.points[g]) * val;
  }
  return out;
}

}  // namespace

std::vector<double> element_density_weights(const SpaceLayout& layout, int cell,
                                            std::span<const double> rho) {
  const auto rc = local_thermo(layout, rho, cell);
  auto m = moments(layout.kinematic_degree(), layout.mesh().h(cell),
                   [&](double l) { return basis::bezier_value(rc, l); });
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
    m[i] /= layout.kinematic_mass(layout.kinematic_dof(cell, i));
  }
  return m;
}

void compute_momentum_weights(const SpaceLayout& layout, std::span<const double> rho_new,
                              std::span<const double> u_old, CorrectionWeights& w) {
  w.omega_rho.assign(static_cast<std::size_t>(layout.kinematic_dofs()), 0.0);
  w.omega_u.assign(static_cast<std::size_t>(layout.thermo_dofs()), 0.0);
  for (int k = 0; k < layout.cells(); ++k) {
    const auto wk = element_density_weights(layout, k, rho_new);
    for (int i = 0; i < layout.kinematic_per_cell(); ++i) w.omega_rho[layout.kinematic_dof(k, i)] += wk[i];

    const auto uc = local_u(layout, u_old, k);
    const auto mu = moments(layout.thermo_degree(), layout.mesh().h(k),
                            [&](double l) { return basis::bezier_value(uc, l); });
    for (int i = 0; i < layout.thermo_per_cell(); ++i) {
      const int d = layout.thermo_dof(k, i);
      w.omega_u[d] = mu[i] / layout.thermo_mass(d);
    }
  }
  for (std::size_t s = 0; s < w.omega_rho.size(); ++s) {
    if (!(w.omega_rho[s] > 0.0)) {
      throw PositivityError("non-positive density weight at velocity dof " + std::to_string(s));
    }
  }
}

void compute_energy_weights(const SpaceLayout& layout, std::span<const double> rho_old,
                            std::span<const double> u_old, std::span<const double> rho_new,
                            std::span<const double> u_new, CorrectionWeights& w) {
  w.theta_m.assign(static_cast<std::size_t>(layout.kinematic_dofs()), 0.0);
  w.theta_q2.assign(static_cast<std::size_t>(layout.thermo_dofs()), 0.0);
  for (int k = 0; k < layout.cells(); ++k) {
    const double h = layout.mesh().h(k);
    const auto r0 = local_thermo(layout, rho_old, k);
    const auto r1 = local_thermo(layout, rho_new, k);
    const auto u0 = local_u(layout, u_old, k);
    const auto u1 = local_u(layout, u_new, k);

    const auto tm = moments(layout.kinematic_degree(), h, [&](double l) {
      return 0.5 * (basis::bezier_value(r1, l) * basis::bezier_value(u1, l) +
                    basis::bezier_value(r0, l) * basis::bezier_value(u0, l));
    });
    for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
      const int d = layout.kinematic_dof(k, i);
      w.theta_m[d] += tm[i] / layout.kinematic_mass(d);
    }
    const auto tq = moments(layout.thermo_degree(), h, [&](double l) {
      return basis::bezier_value(u1, l) * basis::bezier_value(u0, l);
    });
    for (int i = 0; i < layout.thermo_per_cell(); ++i) {
      const int d = layout.thermo_dof(k, i);
      w.theta_q2[d] = tq[i] / layout.thermo_mass(d);
    }
  }
}

double momentum_correction(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                           std::span<const double> psi, std::span<const double> phi_rho,
                           double target) {
  double wsum = 0.0;
  double lhs = 0.0;
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
    const double om = w.omega_rho[layout.kinematic_dof(cell, i)];
    wsum += om;
    lhs += om * psi[i];
  }
  for (int i = 0; i < layout.thermo_per_cell(); ++i) {
    lhs += w.omega_u[layout.thermo_dof(cell, i)] * phi_rho[i];
  }
  if (!(wsum > 0.0)) {
    throw PositivityError("non-positive density weight sum on element " + std::to_string(cell));
  }
  return (target - lhs) / wsum;
}

double energy_correction(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                         std::span<const double> phi_e, std::span<const double> psi_tilde,
                         std::span<const double> phi_rho, double target) {
  double lhs = 0.0;
  for (int i = 0; i < layout.thermo_per_cell(); ++i) {
    const int d = layout.thermo_dof(cell, i);
    lhs += phi_e[i] + 0.5 * w.theta_q2[d] * phi_rho[i];
  }
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
    lhs += w.theta_m[layout.kinematic_dof(cell, i)] * psi_tilde[i];
  }
  return (target - lhs) / layout.thermo_per_cell();
}

double momentum_balance_residue(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                                std::span<const double> psi, std::span<const double> phi_rho,
                                double target, double flux_scale) {
  double lhs = 0.0;
  double scale = std::abs(target) + flux_scale;
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
    const double t = w.omega_rho[layout.kinematic_dof(cell, i)] * psi[i];
    lhs += t;
    scale += std::abs(t);
  }
  for (int i = 0; i < layout.thermo_per_cell(); ++i) {
    const double t = w.omega_u[layout.thermo_dof(cell, i)] * phi_rho[i];
    lhs += t;
    scale += std::abs(t);
  }
  return relative(std::abs(lhs - target), scale);
}

double energy_balance_residue(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                              std::span<const double> phi_e, std::span<const double> psi,
                              std::span<const double> phi_rho, double target,
                              double flux_scale) {
  double lhs = 0.0;
  double scale = std::abs(target) + flux_scale;
  for (int i = 0; i < layout.thermo_per_cell(); ++i) {
    const int d = layout.thermo_dof(cell, i);
    const double t = phi_e[i] + 0.5 * w.theta_q2[d] * phi_rho[i];
    lhs += t;
    scale += std::abs(phi_e[i]) + std::abs(0.5 * w.theta_q2[d] * phi_rho[i]);
  }
  for (int i = 0; i < layout.kinematic_per_cell(); ++i) {
    const double t = w.theta_m[layout.kinematic_dof(cell, i)] * psi[i];
    lhs += t;
    scale += std::abs(t);
  }
  return relative(std::abs(lhs - target), scale);
}

double IdentityReport::max() const {
  return std::max({momentum_split, kinetic_split, momentum_balance, energy_balance});
}

namespace {
double element_flux_scale(const std::vector<double>& s, int k) {
  return s.empty() ? 0.0 : s[static_cast<std::size_t>(k)];
}
}  // namespace

IdentityReport verify_master_identities(const StaggeredField& before, const StaggeredField& after,
                                        const StepRecord& record) {
  const SpaceLayout& layout = *before.layout;
  const auto& q = basis::element_rule();
  const int nk = layout.kinematic_per_cell();
  const int nt = layout.thermo_per_cell();
  IdentityReport rep;

  for (int k = 0; k < layout.cells(); ++k) {
    const double h = layout.mesh().h(k);
    const auto r0 = before.rho_cell(k);
    const auto r1 = after.rho_cell(k);
    const auto u0 = before.u_cell(k);
    const auto u1 = after.u_cell(k);

    // Direct integrals of d(rho u) and d(rho u^2)/2 and their splittings.
    double dm = 0.0, dm_scale = 0.0, dk = 0.0, dk_scale = 0.0;
    double sm = 0.0, sk = 0.0;
    for (std::size_t g = 0; g < q.size(); ++g) {
      const double l = q.points[g];
      const double w = h * q.weights[g];
      const double rho0 = basis::bezier_value(r0, l), rho1 = basis::bezier_value(r1, l);
      const double v0 = basis::bezier_value(u0, l), v1 = basis::bezier_value(u1, l);
      dm += w * (rho1 * v1 - rho0 * v0);
      dm_scale += w * (std::abs(rho1 * v1) + std::abs(rho0 * v0));
      dk += 0.5 * w * (rho1 * v1 * v1 - rho0 * v0 * v0);
      dk_scale += 0.5 * w * (rho1 * v1 * v1 + rho0 * v0 * v0);
      for (int i = 0; i < nk; ++i) {
        const double phi = basis::eval(layout.kinematic_degree(), i, l);
        sm += w * rho1 * phi * (u1[i] - u0[i]);
        sk += w * 0.5 * (rho1 * v1 + rho0 * v0) * phi * (u1[i] - u0[i]);
      }
      for (int i = 0; i < nt; ++i) {
        const double phi = basis::eval(layout.thermo_degree(), i, l);
        sm += w * v0 * phi * (r1[i] - r0[i]);
        sk += 0.5 * w * v1 * v0 * phi * (r1[i] - r0[i]);
      }
    }
    rep.momentum_split = std::max(rep.momentum_split, relative(std::abs(dm - sm), dm_scale));
    rep.kinetic_split = std::max(rep.kinetic_split, relative(std::abs(dk - sk), dk_scale));

    if (!record.weights.omega_rho.empty() && !record.target_m.empty()) {
      const auto psi = std::span<const double>(record.psi).subspan(static_cast<std::size_t>(k * nk), nk);
      const auto pr = std::span<const double>(record.phi_rho).subspan(static_cast<std::size_t>(k * nt), nt);
      const auto pe = std::span<const double>(record.phi_e).subspan(static_cast<std::size_t>(k * nt), nt);
      rep.momentum_balance = std::max(
          rep.momentum_balance, momentum_balance_residue(layout, k, record.weights, psi, pr, record.target_m[k],
                                                    element_flux_scale(record.scale_m, k)));
      if (!record.weights.theta_m.empty()) {
        rep.energy_balance = std::max(rep.energy_balance,
                                      energy_balance_residue(layout, k, record.weights, pe, psi, pr,
                                                             record.target_e[k], element_flux_scale(record.scale_e, k)));
      }
    }
  }
  return rep;
}

std::vector<CorrectionRow> correction_rows(long step, const SpaceLayout& layout,
                                           const StepRecord& record) {
  const int nk = layout.kinematic_per_cell();
  const int nt = layout.thermo_per_cell();
  std::vector<CorrectionRow> rows;
  rows.reserve(static_cast<std::size_t>(layout.cells()));
  for (int k = 0; k < layout.cells(); ++k) {
    CorrectionRow row;
    row.step = step;
    row.element = k;
    if (!record.r_u.empty()) row.abs_ru = std::abs(record.r_u[k]);
    if (!record.r_e.empty()) row.abs_re = std::abs(record.r_e[k]);
    if (!record.weights.theta_m.empty()) {
      const auto psi = std::span<const double>(record.psi).subspan(static_cast<std::size_t>(k * nk), nk);
      const auto pr = std::span<const double>(record.phi_rho).subspan(static_cast<std::size_t>(k * nt), nt);
      const auto pe = std::span<const double>(record.phi_e).subspan(static_cast<std::size_t>(k * nt), nt);
      row.momentum_residue = momentum_balance_residue(layout, k, record.weights, psi, pr, record.target_m[k],
                                                    element_flux_scale(record.scale_m, k));
      row.energy_residue = energy_balance_residue(layout, k, record.weights, pe, psi, pr, record.target_e[k], element_flux_scale(record.scale_e, k));
    }
    rows.push_back(row);
  }
  return rows;
}

void write_correction_report(const std::vector<CorrectionRow>& rows, std::ostream& out) {
  out << "step,element,abs_ru,abs_re,momentum_residue,energy_residue\n";
  for (const auto& r : rows) {
    out << r.step << ',' << r.element << ',' << format_double(r.abs_ru) << ','
        << format_double(r.abs_re) << ',' << format_double(r.momentum_residue) << ','
        << format_double(r.energy_residue) << '\n';
  }
}

void write_correction_report(const std::vector<CorrectionRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_correction_report(rows, out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace staggered
