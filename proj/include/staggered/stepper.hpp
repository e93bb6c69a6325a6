#pragma once

#include <string_view>

#include "staggered/correction.hpp"
#include "staggered/residuals.hpp"

namespace staggered {

enum class TimeScheme { euler, dec2 };

TimeScheme parse_time_scheme(std::string_view name);
std::string_view to_string(TimeScheme s);

struct StepperOptions {
  SchemeOptions scheme;
  TimeScheme time = TimeScheme::dec2;
  int dec_sweeps = 2;  ///< passes of the deferred correction
  bool correction = true;
  int max_halvings = 5;
};

/// cfl * min_K h_K / alpha_K, clipped so that t + dt does not pass t_final.
/// Falls back to dt_max when every wave bound vanishes.
double compute_dt(const StaggeredField& field, const GasModel& gas, double cfl, double t,
                  double t_final, double dt_max);

struct StepResult {
  StaggeredField state;
  StepRecord record;
  Flux outflow;  ///< dt * (f_hat(last face) - f_hat(first face)); zero when periodic
};

/// Lumped update from `old` with the given residuals, in the order density,
/// velocity, internal energy. With `correct` the per-element constants r^u
/// and r^e are computed against the face fluxes stored in `res`.
/// Throws PositivityError when a weight, density or energy coefficient is
/// not positive and BlowUpError when a coefficient is not finite.
StepResult apply_update(const StaggeredField& old, const SpatialResiduals& res, double dt, bool correct);

StepResult euler_step(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                      double dt);

/// Deferred correction: a forward Euler prediction followed by passes - 1
/// corrections with the residuals 1/2 (R(U^n) + R(U^(k-1))) plus the
/// difference between the consistent and the lumped mass applied to
/// U^(k-1) - U^n. Each stage scales its velocity residual with its own
/// element-average density. One pass is exactly euler_step. The mass
/// iteration converges slowly for Bernstein P2, so second order in time
/// needs more than two passes.
StepResult dec_step(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                    double dt, int passes = 2);

struct AdvanceResult {
  StepResult step;
  double dt = 0.0;  ///< the step actually taken
  int halvings = 0;
};

/// One step of the configured scheme; on a positivity failure the step is
/// retried with dt/2, at most opt.max_halvings times, after which the last
/// PositivityError propagates.
AdvanceResult advance(const StaggeredField& field, const GasModel& gas, const StepperOptions& opt,
                      double dt);

}  // namespace staggered
