#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "staggered/diagnostics.hpp"
#include "staggered/reference.hpp"
#include "staggered/stepper.hpp"

namespace staggered {

/// Everything a run needs. Defaults mirror the accuracy runs: dG density,
/// centered velocity with the jump penalty, internal energy, HLLC faces.
struct RunConfig {
  std::string case_name = "sod";
  int n_cells = 100;
  int r = 1;                      ///< thermodynamic degree; velocity has degree r + 1
  bool equal_degree = false;      ///< velocity degree r as well (stability experiment only)
  FluxChoice flux = FluxChoice::hllc;
  Stabilization stabilization = Stabilization::jump;
  Blending blending = Blending::none;
  bool correction = true;
  TimeScheme time_scheme = TimeScheme::dec2;
  int dec_sweeps = 2;
  std::optional<double> cfl;      ///< case default when empty
  double theta = 0.1;
  std::optional<double> t_final;  ///< case default when empty
  double dt_max = 1e-3;
  long max_steps = 10'000'000;
  double growth_limit = 1e3;      ///< max-norm growth that counts as a blow-up
  std::string profile_path;
  std::string series_path;
  std::string summary_path;
  std::string correction_path;

  StepperOptions stepper() const;
};

/// Names accepted by apply_setting, in the order they are documented.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws ConfigError naming the key for
/// unknown keys and invalid values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// `key = value` lines, `#` starts a comment, blank lines ignored; later
/// `overrides` win over the text.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});
RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Checks the configuration against the case and the scheme preconditions.
void validate(const RunConfig& cfg);

/// Called after every accepted step.
using StepObserver = std::function<void(long step, double t, const StaggeredField& before,
                                        const StaggeredField& after, const StepRecord& record)>;

struct RunResult {
  RunResult(RunConfig c, BenchmarkCase b, StaggeredField s)
      : config(std::move(c)), bench(std::move(b)), state(std::move(s)) {}

  RunConfig config;
  BenchmarkCase bench;
  StaggeredField state;
  double t = 0.0;
  long steps = 0;
  int halvings = 0;
  ConservationLedger ledger;
  WeakBV weak_bv;
  std::optional<L1Errors> l1;
  std::optional<double> shock_position;        ///< measured
  std::optional<double> shock_position_exact;
  double min_rho = 0.0;  ///< smallest density coefficient over the run
  double min_p = 0.0;    ///< smallest pressure coefficient over the run
  double max_growth = 1.0;
  IdentityReport identities;  ///< worst values over the run (correction on)
  Summary summary;
};

/// Builds the initial field of a case on the configured layout.
StaggeredField initial_field(const RunConfig& cfg, const BenchmarkCase& bench);

/// Runs to the final time and writes the requested files. Throws BlowUpError
/// (non-finite values, growth above the limit, step limit) and
/// PositivityAbort (halving exhausted), both carrying the step and time.
RunResult run_case(const RunConfig& cfg, const StepObserver& observer = {});

/// Measured position of the right-moving shock: the rightmost crossing of
/// the level halfway between the undisturbed and the post-shock density.
std::optional<double> measure_right_shock(const BenchmarkCase& bench, const StaggeredField& field);

struct ConvergenceRow {
  int n = 0;
  L1Errors error;
  std::optional<double> order_rho, order_u, order_p;
};

/// Runs the configured case (which must have a reference) on each mesh.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& meshes);
void write_convergence(const std::vector<ConvergenceRow>& rows, std::ostream& out);

struct StabilityRow {
  FluxChoice flux = FluxChoice::hllc;
  std::string layout;  ///< K1T0, K1T1 or K2T1
  bool stable = true;
  long step = 0;       ///< failure step, or steps taken when stable
  double time = 0.0;   ///< failure time, or the reporting time
  double max_growth = 1.0;
  std::string reason;
};

struct StabilityOptions {
  int n_cells = 100;
  double t_report = 0.025;
  double cfl = 0.4;
};

/// Smooth case, forward Euler, no limiting, correction on; every flux choice
/// against K1T0, K1T1 and K2T1.
std::vector<StabilityRow> stability_matrix(const StabilityOptions& opt = {});
void write_stability(const std::vector<StabilityRow>& rows, std::ostream& out);

}  // namespace staggered
