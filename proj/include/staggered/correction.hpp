#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "staggered/mesh.hpp"

namespace staggered {

/// Weights that turn DOF increments into changes of momentum and kinetic
/// energy.
///
///   omega_rho[sV]   = sum_K int_K rho^{n+1} phi_sV / |C_sV|      (global)
///   omega_u[K, sE]  = int_K u^n phi_sE / |C_sE|                   (per element)
///   theta_m[sV]     = sum_K int_K m~ phi_sV / |C_sV|,  m~ = (rho^{n+1} u^{n+1} + rho^n u^n) / 2
///   theta_q2[K, sE] = int_K u^{n+1} u^n phi_sE / |C_sE|
///
/// Per-element arrays use the element-local thermodynamic layout (the same
/// flat indexing as StaggeredField::rho).
struct CorrectionWeights {
  std::vector<double> omega_rho;
  std::vector<double> omega_u;
  std::vector<double> theta_m;
  std::vector<double> theta_q2;
};

/// int_K rho phi_sV / |C_sV| for the local kinematic dofs of one element.
std::vector<double> element_density_weights(const SpaceLayout& layout, int cell,
                                            std::span<const double> rho);

/// Fills omega_rho (from rho^{n+1}) and omega_u (from u^n). Throws
/// PositivityError if some omega_rho is not strictly positive.
void compute_momentum_weights(const SpaceLayout& layout, std::span<const double> rho_new,
                              std::span<const double> u_old, CorrectionWeights& w);

/// Fills theta_m and theta_q2; needs u^{n+1}.
void compute_energy_weights(const SpaceLayout& layout, std::span<const double> rho_old,
                            std::span<const double> u_old, std::span<const double> rho_new,
                            std::span<const double> u_new, CorrectionWeights& w);

/// Constant r^u added to every velocity residual of the element so that
///   sum_sV omega_rho Psi~ + sum_sE omega_u Phi^rho = F^m_K.
double momentum_correction(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                           std::span<const double> psi, std::span<const double> phi_rho,
                           double target);

/// Constant r^e added to every energy residual of the element so that
///   sum Phi~^e + sum theta_m Psi~ + 1/2 sum theta_q2 Phi^rho = F^E_K.
double energy_correction(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                         std::span<const double> phi_e, std::span<const double> psi_tilde,
                         std::span<const double> phi_rho, double target);

/// |lhs - F| / scale of the momentum and energy balances of one element,
/// where scale is the sum of the absolute values of all terms involved plus
/// the face-flux magnitudes the target was formed from.
double momentum_balance_residue(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                                std::span<const double> psi, std::span<const double> phi_rho,
                                double target, double flux_scale = 0.0);
double energy_balance_residue(const SpaceLayout& layout, int cell, const CorrectionWeights& w,
                              std::span<const double> phi_e, std::span<const double> psi,
                              std::span<const double> phi_rho, double target,
                              double flux_scale = 0.0);

/// Maximum relative residues of the per-element identities of one step.
struct IdentityReport {
  double momentum_split = 0.0;  ///< int_K d(rho u) vs omega-weighted dof increments
  double kinetic_split = 0.0;   ///< 1/2 int_K d(rho u^2) vs theta-weighted increments
  double momentum_balance = 0.0;
  double energy_balance = 0.0;
  double max() const;
};

/// Everything an update needs to be audited afterwards.
struct StepRecord {
  double dt = 0.0;
  std::vector<double> psi;      ///< corrected velocity residuals, element-local
  std::vector<double> phi_rho;  ///< density residuals, element-local
  std::vector<double> phi_e;    ///< corrected energy residuals, element-local
  std::vector<double> target_m;  ///< F^m_K
  std::vector<double> target_e;  ///< F^E_K
  std::vector<double> scale_m;   ///< |f^m| summed over both faces, for relative residues
  std::vector<double> scale_e;
  std::vector<double> r_u;
  std::vector<double> r_e;
  CorrectionWeights weights;
};

/// Checks the algebraic splittings of d(rho u) and d(rho u^2) on every
/// element and, when the record carries weights, the two balances.
IdentityReport verify_master_identities(const StaggeredField& before, const StaggeredField& after,
                                        const StepRecord& record);

/// One CSV row per element and step.
struct CorrectionRow {
  long step = 0;
  int element = 0;
  double abs_ru = 0.0;
  double abs_re = 0.0;
  double momentum_residue = 0.0;
  double energy_residue = 0.0;
};

std::vector<CorrectionRow> correction_rows(long step, const SpaceLayout& layout,
                                           const StepRecord& record);
void write_correction_report(const std::vector<CorrectionRow>& rows, const std::string& path);
void write_correction_report(const std::vector<CorrectionRow>& rows, std::ostream& out);

}  // namespace staggered
