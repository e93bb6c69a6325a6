#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "staggered/gas.hpp"
#include "staggered/mesh.hpp"
#include "staggered/riemann.hpp"

namespace staggered {

/// Velocity stabilization: local Lax-Friedrichs (first order) or the
/// derivative-jump penalty across faces (higher order).
enum class Stabilization { llf, jump };

/// Nonlinear redistribution of element residuals.
enum class Blending { none, proc1, proc2 };

Stabilization parse_stabilization(std::string_view name);
std::string_view to_string(Stabilization s);
Blending parse_blending(std::string_view name);
std::string_view to_string(Blending b);

struct SchemeOptions {
  FluxChoice flux = FluxChoice::hllc;
  Stabilization stabilization = Stabilization::jump;
  Blending blending = Blending::none;
  double theta = 0.1;  ///< jump penalty factor
};

/// Local Bernstein coefficients of one element.
struct ElementData {
  int cell = 0;
  double h = 1.0;
  std::vector<double> rho;
  std::vector<double> e;
  std::vector<double> p;
  std::vector<double> u;
};

ElementData element_data(const StaggeredField& field, int cell, const GasModel& gas);

/// Mean value over the element of a polynomial in Bernstein form.
double element_average(std::span<const double> coeffs);

/// Wave-speed bound on an element: max |u| over velocity coefficients plus
/// the largest sound speed over the thermodynamic coefficients.
double element_wave_bound(const ElementData& el, const GasModel& gas);

/// Trace states at every face and the interface solution between them.
/// Open boundaries copy the interior trace into the ghost state.
struct FaceState {
  Primitive left;
  Primitive right;
  InterfaceSolution solution;
};

std::vector<FaceState> face_states(const StaggeredField& field, const GasModel& gas,
                                   FluxChoice choice);

/// dG mass residual: -int phi' f^rho + [f_hat^rho phi] on the element.
std::vector<double> density_residual(const ElementData& el, double mass_flux_left,
                                     double mass_flux_right);

/// Centered velocity residual divided by rho_star:
/// rho_star Psi = int phi rho u u_x - int p phi_x + [p_star phi].
std::vector<double> velocity_residual_centered(const ElementData& el, double rho_star,
                                               double p_star_left, double p_star_right);

/// int phi (u e_x + (e + p) u_x) on the element.
std::vector<double> energy_residual(const ElementData& el);

/// alpha (v_sigma - mean(v)); sums to zero over the element.
std::vector<double> llf_dissipation(std::span<const double> dofs, double alpha);

/// Derivative-jump penalty at one interior face:
/// J_sigma = coeff * [d phi_sigma/dx] [du/dx] with coeff = theta beta h^2.
/// Returns contributions for the local dofs of the left and the right element.
/// The vertex shared by both elements receives half of its face value in each
/// element, so that summed over the face the penalty tests [du/dx] once.
struct JumpContribution {
  std::vector<double> left;
  std::vector<double> right;
};
JumpContribution jump_stabilization(const ElementData& left, const ElementData& right,
                                    double theta, double beta);

/// Procedure 1: keep the element total, redistribute with non-negative
/// weights x_sigma = max(Phi_sigma / Phi, 0). Equal split when every weight
/// vanishes; all zero when the total vanishes.
void blend_procedure1(std::span<double> residuals);

/// Procedure 2: LLF terms on density and energy, then Procedure 1 on the
/// three residual sets.
void blend_procedure2(std::span<double> rho_res, std::span<double> u_res, std::span<double> e_res,
                      std::span<const double> rho, std::span<const double> e, double alpha);

/// All element residuals of a field, element-local storage (stride = local
/// dof count), plus the face solutions they were built from.
struct SpatialResiduals {
  int thermo_stride = 1;
  int kinematic_stride = 2;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> e;
  std::vector<FaceState> faces;
  std::vector<double> alpha;     ///< per-element wave bound
  std::vector<double> rho_star;  ///< per-element density used to scale the velocity residual

  std::span<double> rho_cell(int k);
  std::span<double> u_cell(int k);
  std::span<double> e_cell(int k);
  std::span<const double> rho_cell(int k) const;
  std::span<const double> u_cell(int k) const;
  std::span<const double> e_cell(int k) const;

  /// f_hat(right face) - f_hat(left face) for element k.
  Flux boundary_flux(const SpaceLayout& layout, int k) const;
};

/// Evaluates every residual of the scheme on `field`. When `rho_star` is
/// non-empty it replaces the element-average density of `field` in the
/// velocity residual.
SpatialResiduals assemble_residuals(const StaggeredField& field, const GasModel& gas,
                                    const SchemeOptions& options,
                                    std::span<const double> rho_star = {});

/// 0.5 (a + b) for residuals and face fluxes.
SpatialResiduals half_sum(const SpatialResiduals& a, const SpatialResiduals& b);

}  // namespace staggered
