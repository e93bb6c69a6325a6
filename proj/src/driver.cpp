#include "staggered/driver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "staggered/errors.hpp"
#include "staggered/format.hpp"

namespace staggered {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError("invalid value '" + value + "' for key '" + key + "': " + why);
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad_value(key, v, "expected an integer");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    bad_value(key, v, "expected a number");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "expected on or off");
}

template <class F>
auto enum_value(const std::string& key, const std::string& v, F parse) {
  try {
    return parse(v);
  } catch (const ArgumentError& e) {
    bad_value(key, v, e.what());
  }
}

double max_norm(const StaggeredField& f) {
  double m = 0.0;
  for (double v : f.rho) m = std::max(m, std::abs(v));
  for (double v : f.u) m = std::max(m, std::abs(v));
  for (double v : f.e) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const StaggeredField& f) {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return ok(f.rho) && ok(f.u) && ok(f.e);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string on_off(bool b) { return b ? "on" : "off"; }

}  // namespace

StepperOptions RunConfig::stepper() const {
  StepperOptions o;
  o.scheme.flux = flux;
  o.scheme.stabilization = stabilization;
  o.scheme.blending = blending;
  o.scheme.theta = theta;
  o.time = time_scheme;
  o.dec_sweeps = dec_sweeps;
  o.correction = correction;
  return o;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "case",      "n_cells",   "r",       "equal_degree", "flux",        "stabilization",
      "blending",  "correction", "time_scheme", "dec_sweeps", "cfl",     "theta",       "t_final",
      "dt_max",    "max_steps", "growth_limit", "profile", "series",      "summary",
      "correction_report"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "case") {
    try {
      find_case(v);
    } catch (const ArgumentError& e) {
      bad_value(key, v, e.what());
    }
    cfg.case_name = v;
  } else if (key == "n_cells") {
    const long n = to_long(key, v);
    if (n < 1 || n > 10'000'000) bad_value(key, v, "must be a positive cell count");
    cfg.n_cells = static_cast<int>(n);
  } else if (key == "r") {
    const long r = to_long(key, v);
    if (r != 0 && r != 1) bad_value(key, v, "thermodynamic degree must be 0 or 1");
    cfg.r = static_cast<int>(r);
  } else if (key == "equal_degree") {
    cfg.equal_degree = to_bool(key, v);
  } else if (key == "flux") {
    cfg.flux = enum_value(key, v, parse_flux_choice);
  } else if (key == "stabilization") {
    cfg.stabilization = enum_value(key, v, parse_stabilization);
  } else if (key == "blending") {
    cfg.blending = enum_value(key, v, parse_blending);
  } else if (key == "correction") {
    cfg.correction = to_bool(key, v);
  } else if (key == "time_scheme") {
    cfg.time_scheme = enum_value(key, v, parse_time_scheme);
  } else if (key == "dec_sweeps") {
    const long n = to_long(key, v);
    if (n < 1 || n > 100) bad_value(key, v, "must be between 1 and 100");
    cfg.dec_sweeps = static_cast<int>(n);
  } else if (key == "cfl") {
    const double c = to_double(key, v);
    if (!(c > 0.0)) bad_value(key, v, "must be positive");
    cfg.cfl = c;
  } else if (key == "theta") {
    const double t = to_double(key, v);
    if (t < 0.0) bad_value(key, v, "must be non-negative");
    cfg.theta = t;
  } else if (key == "t_final") {
    const double t = to_double(key, v);
    if (!(t > 0.0)) bad_value(key, v, "must be positive");
    cfg.t_final = t;
  } else if (key == "dt_max") {
    const double t = to_double(key, v);
    if (!(t > 0.0)) bad_value(key, v, "must be positive");
    cfg.dt_max = t;
  } else if (key == "max_steps") {
    const long n = to_long(key, v);
    if (n < 1) bad_value(key, v, "must be positive");
    cfg.max_steps = n;
  } else if (key == "growth_limit") {
    const double g = to_double(key, v);
    if (!(g > 1.0)) bad_value(key, v, "must exceed 1");
    cfg.growth_limit = g;
  } else if (key == "profile") {
    cfg.profile_path = v;
  } else if (key == "series") {
    cfg.series_path = v;
  } else if (key == "summary") {
    cfg.summary_path = v;
  } else if (key == "correction_report") {
    cfg.correction_path = v;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing key");
    apply_setting(cfg, key, line.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  return cfg;
}

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

void validate(const RunConfig& cfg) {
  find_case(cfg.case_name);
  if (cfg.r != 0 && cfg.r != 1) throw ConfigError("key 'r': thermodynamic degree must be 0 or 1");
  if (cfg.equal_degree && cfg.r != 1) {
    throw ConfigError("key 'equal_degree': only the K1T1 pairing (r = 1) is available");
  }
  if (cfg.n_cells < 1) throw ConfigError("key 'n_cells': must be positive");
  if (cfg.cfl && !(*cfg.cfl > 0.0)) throw ConfigError("key 'cfl': must be positive");
}

StaggeredField initial_field(const RunConfig& cfg, const BenchmarkCase& bench) {
  Mesh1D mesh = Mesh1D::uniform(bench.a, bench.b, cfg.n_cells, bench.boundary);
  auto layout = cfg.equal_degree ? build_spaces(std::move(mesh), cfg.r, cfg.r)
                                 : build_spaces(std::move(mesh), cfg.r);
  return project_initial(bench.profile(), layout, bench.gas());
}

std::optional<double> measure_right_shock(const BenchmarkCase& bench, const StaggeredField& field) {
  if (bench.reference != ReferenceKind::riemann) return std::nullopt;
  const ExactRiemannSolution sol(bench.left, bench.right, bench.gas());
  if (!sol.right_is_shock()) return std::nullopt;
  const double level = 0.5 * (bench.right.rho + sol.rho_star_right());
  const auto rows = sample_profile(field, bench.gas());
  const double x = crossing_from_right(rows, &ProfileRow::rho, level);
  if (std::isnan(x)) return std::nullopt;
  return x;
}

RunResult run_case(const RunConfig& cfg, const StepObserver& observer) {
  validate(cfg);
  const BenchmarkCase& bench = find_case(cfg.case_name);
  const GasModel gas = bench.gas();
  const double t_final = cfg.t_final.value_or(bench.t_final);
  const double cfl = cfg.cfl.value_or(bench.cfl);
  const StepperOptions opt = cfg.stepper();

  RunResult res(cfg, bench, initial_field(cfg, bench));
  StaggeredField& state = res.state;
  res.ledger.start(conservation_totals(state));
  res.min_rho = *std::min_element(state.rho.begin(), state.rho.end());
  res.min_p = gas.pressure_from_volumetric(*std::min_element(state.e.begin(), state.e.end()));
  const double norm0 = max_norm(state);

  std::vector<CorrectionRow> correction_log;
  while (res.t < t_final * (1.0 - 1e-14)) {
    if (res.steps >= cfg.max_steps) {
      throw BlowUpError("step limit reached before the final time", res.steps, res.t);
    }
    const double dt = compute_dt(state, gas, cfl, res.t, t_final, cfg.dt_max);
    auto step_once = [&] {
      try {
        return advance(state, gas, opt, dt);
      } catch (const BlowUpError& e) {
        throw BlowUpError(e.what(), res.steps + 1, res.t);
      } catch (const PositivityError& e) {
        throw PositivityAbort(std::string(e.what()) + " after " + std::to_string(opt.max_halvings) +
                                  " time-step halvings",
                              res.steps + 1, res.t);
      }
    };
    AdvanceResult adv = step_once();
    StaggeredField next = std::move(adv.step.state);
    const StepRecord& rec = adv.step.record;
    ++res.steps;
    res.halvings += adv.halvings;

    if (!all_finite(next)) throw BlowUpError("non-finite coefficients", res.steps, res.t + adv.dt);
    const double growth = norm0 > 0.0 ? max_norm(next) / norm0 : 0.0;
    res.max_growth = std::max(res.max_growth, growth);
    if (growth > cfg.growth_limit) {
      throw BlowUpError("max-norm growth " + format_double(growth) + " above limit", res.steps,
                        res.t + adv.dt);
    }

    res.weak_bv.add(state, adv.dt);
    if (cfg.correction) {
      const IdentityReport rep = verify_master_identities(state, next, rec);
      res.identities.momentum_split = std::max(res.identities.momentum_split, rep.momentum_split);
      res.identities.kinetic_split = std::max(res.identities.kinetic_split, rep.kinetic_split);
      res.identities.momentum_balance = std::max(res.identities.momentum_balance, rep.momentum_balance);
      res.identities.energy_balance = std::max(res.identities.energy_balance, rep.energy_balance);
    }
    if (!cfg.correction_path.empty()) {
      const auto rows = correction_rows(res.steps, *state.layout, rec);
      correction_log.insert(correction_log.end(), rows.begin(), rows.end());
    }
    if (observer) observer(res.steps, res.t + adv.dt, state, next, rec);

    res.t += adv.dt;
    state = std::move(next);
    res.ledger.record(res.steps, res.t, conservation_totals(state), adv.step.outflow, max_abs(rec.r_u),
                      max_abs(rec.r_e));
    res.min_rho = std::min(res.min_rho, *std::min_element(state.rho.begin(), state.rho.end()));
    res.min_p = std::min(res.min_p,
                         gas.pressure_from_volumetric(*std::min_element(state.e.begin(), state.e.end())));
  }

  if (auto ref = reference_sampler(bench, res.t)) res.l1 = l1_error(state, gas, *ref);
  res.shock_position = measure_right_shock(bench, state);
  res.shock_position_exact = exact_right_shock(bench, res.t);

  Summary& s = res.summary;
  s.emplace_back("case", bench.name);
  s.emplace_back("n_cells", std::to_string(cfg.n_cells));
  s.emplace_back("layout", "K" + std::to_string(state.layout->kinematic_degree()) + "T" +
                               std::to_string(cfg.r));
  s.emplace_back("flux", std::string(to_string(cfg.flux)));
  s.emplace_back("stabilization", std::string(to_string(cfg.stabilization)));
  s.emplace_back("blending", std::string(to_string(cfg.blending)));
  s.emplace_back("correction", on_off(cfg.correction));
  s.emplace_back("time_scheme", std::string(to_string(cfg.time_scheme)));
  s.emplace_back("dec_sweeps", std::to_string(cfg.time_scheme == TimeScheme::euler ? 1 : cfg.dec_sweeps));
  s.emplace_back("cfl", format_double(cfl));
  s.emplace_back("theta", format_double(cfg.theta));
  s.emplace_back("t_final", format_double(res.t));
  s.emplace_back("steps", std::to_string(res.steps));
  s.emplace_back("halvings", std::to_string(res.halvings));
  if (res.l1) {
    s.emplace_back("l1_rho", format_double(res.l1->rho));
    s.emplace_back("l1_u", format_double(res.l1->u));
    s.emplace_back("l1_p", format_double(res.l1->p));
  }
  if (res.shock_position_exact) {
    s.emplace_back("shock_position_exact", format_double(*res.shock_position_exact));
    if (res.shock_position) {
      const double err = std::abs(*res.shock_position - *res.shock_position_exact) /
                         (bench.b - bench.a);
      s.emplace_back("shock_position", format_double(*res.shock_position));
      s.emplace_back("shock_position_error", format_double(err));
      s.emplace_back("shock_position_flag", err <= 0.01 ? "ok" : "off");
    } else {
      s.emplace_back("shock_position_flag", "missing");
    }
  }
  s.emplace_back("mass_drift", format_double(res.ledger.mass_drift()));
  s.emplace_back("max_rel_drift_m", format_double(res.ledger.max_abs_drift_m()));
  s.emplace_back("max_rel_drift_E", format_double(res.ledger.max_abs_drift_E()));
  s.emplace_back("max_identity_residue", format_double(res.identities.max()));
  s.emplace_back("weak_bv_rho", format_double(res.weak_bv.rho()));
  s.emplace_back("weak_bv_u", format_double(res.weak_bv.u()));
  s.emplace_back("weak_bv_e", format_double(res.weak_bv.e()));
  s.emplace_back("min_rho", format_double(res.min_rho));
  s.emplace_back("min_p", format_double(res.min_p));

  if (!cfg.profile_path.empty()) write_profile(state, gas, cfg.profile_path);
  if (!cfg.series_path.empty()) write_series(res.ledger, cfg.series_path);
  if (!cfg.summary_path.empty()) write_summary(s, cfg.summary_path);
  if (!cfg.correction_path.empty()) write_correction_report(correction_log, cfg.correction_path);
  return res;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& meshes) {
  if (find_case(base.case_name).reference == ReferenceKind::none) {
    throw ConfigError("key 'case': convergence needs a case with a reference solution");
  }
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    RunConfig cfg = base;
    cfg.n_cells = n;
    cfg.profile_path.clear();
    cfg.series_path.clear();
    cfg.summary_path.clear();
    cfg.correction_path.clear();
    const RunResult r = run_case(cfg);
    ConvergenceRow row;
    row.n = n;
    row.error = *r.l1;
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      const double ratio = std::log(static_cast<double>(n) / prev.n);
      row.order_rho = std::log(prev.error.rho / row.error.rho) / ratio;
      row.order_u = std::log(prev.error.u / row.error.u) / ratio;
      row.order_p = std::log(prev.error.p / row.error.p) / ratio;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << "n,l1_rho,l1_u,l1_p,order_rho,order_u,order_p\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.error.rho) << ',' << format_double(r.error.u) << ','
        << format_double(r.error.p) << ',' << opt(r.order_rho) << ',' << opt(r.order_u) << ','
        << opt(r.order_p) << '\n';
  }
}

std::vector<StabilityRow> stability_matrix(const StabilityOptions& opt) {
  struct Pairing {
    const char* name;
    int r;
    bool equal;
  };
  const Pairing pairings[] = {{"K1T0", 0, false}, {"K1T1", 1, true}, {"K2T1", 1, false}};
  std::vector<StabilityRow> rows;
  for (FluxChoice flux : {FluxChoice::centered, FluxChoice::exact, FluxChoice::hllc}) {
    for (const Pairing& p : pairings) {
      RunConfig cfg;
      cfg.case_name = "smooth";
      cfg.n_cells = opt.n_cells;
      cfg.r = p.r;
      cfg.equal_degree = p.equal;
      cfg.flux = flux;
      cfg.stabilization = Stabilization::jump;
      cfg.blending = Blending::none;
      cfg.correction = true;
      cfg.time_scheme = TimeScheme::euler;
      cfg.cfl = opt.cfl;
      cfg.t_final = opt.t_report;

      StabilityRow row;
      row.flux = flux;
      row.layout = p.name;
      try {
        const RunResult r = run_case(cfg);
        row.step = r.steps;
        row.time = r.t;
        row.max_growth = r.max_growth;
        row.reason = "completed";
      } catch (const BlowUpError& e) {
        row.stable = false;
        row.step = e.step();
        row.time = e.time();
        row.reason = e.what();
      } catch (const PositivityAbort& e) {
        row.stable = false;
        row.step = e.step();
        row.time = e.time();
        row.reason = e.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_stability(const std::vector<StabilityRow>& rows, std::ostream& out) {
  out << "flux,layout,outcome,step,time,max_growth\n";
  for (const auto& r : rows) {
    out << to_string(r.flux) << ',' << r.layout << ',' << (r.stable ? "stable" : "blowup") << ','
        << r.step << ',' << format_double(r.time) << ',' << format_double(r.max_growth) << '\n';
  }
}

}  // namespace staggered
