#include "staggered/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "staggered/basis.hpp"
#include "staggered/errors.hpp"
#include "staggered/format.hpp"

namespace staggered {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

double spread(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += std::abs(x - mean);
  return s;
}

}  // namespace

Totals conservation_totals(const StaggeredField& field) {
  const SpaceLayout& layout = *field.layout;
  const auto& q = basis::element_rule();
  Totals t;
  for (int k = 0; k < layout.cells(); ++k) {
    const double h = layout.mesh().h(k);
    const auto r = field.rho_cell(k);
    const auto e = field.e_cell(k);
    const auto u = field.u_cell(k);
    for (std::size_t g = 0; g < q.size(); ++g) {
      const double l = q.points[g];
      const double w = h * q.weights[g];
      const double rho = basis::bezier_value(r, l);
      const double vel = basis::bezier_value(u, l);
      t.mass += w * rho;
      t.momentum += w * rho * vel;
      t.energy += w * (basis::bezier_value(e, l) + 0.5 * rho * vel * vel);
    }
  }
  return t;
}

void ConservationLedger::start(const Totals& initial) {
  initial_ = initial;
  outflow_ = {};
  mass_drift_ = 0.0;
  entries_.clear();
}

void ConservationLedger::record(long step, double t, const Totals& totals, const Flux& outflow,
                                double max_ru, double max_re) {
  outflow_ += outflow;
  const double scale_m = std::sqrt(2.0 * std::abs(initial_.mass * initial_.energy));
  const double scale_e = std::abs(initial_.energy);
  LedgerEntry e;
  e.step = step;
  e.t = t;
  e.totals = totals;
  e.rel_drift_m = (totals.momentum - initial_.momentum + outflow_.momentum) / scale_m;
  e.rel_drift_E = (totals.energy - initial_.energy + outflow_.energy) / scale_e;
  e.max_ru = max_ru;
  e.max_re = max_re;
  mass_drift_ = (totals.mass - initial_.mass + outflow_.mass) / std::abs(initial_.mass);
  entries_.push_back(e);
}

double ConservationLedger::max_abs_drift_m() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.rel_drift_m));
  return m;
}

double ConservationLedger::max_abs_drift_E() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.rel_drift_E));
  return m;
}

double ConservationLedger::mass_drift() const { return mass_drift_; }

void WeakBV::add(const StaggeredField& field, double dt) {
  const SpaceLayout& layout = *field.layout;
  for (int k = 0; k < layout.cells(); ++k) {
    const double w = dt * layout.mesh().h(k);
    rho_ += w * spread(field.rho_cell(k));
    e_ += w * spread(field.e_cell(k));
    const auto u = field.u_cell(k);
    u_ += w * spread(u);
  }
}

std::vector<ProfileRow> sample_profile(const StaggeredField& field, const GasModel& gas, int n_samples) {
  const Mesh1D& mesh = field.layout->mesh();
  const double dx = mesh.length() / n_samples;
  std::vector<ProfileRow> rows;
  rows.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double x = mesh.left() + (i + 0.5) * dx;
    const double rho = eval_field(field, Variable::density, x);
    const double ev = eval_field(field, Variable::energy, x);
    rows.push_back({x, rho, eval_field(field, Variable::velocity, x), gas.pressure_from_volumetric(ev),
                    ev / rho});
  }
  return rows;
}

void write_profile(const std::vector<ProfileRow>& rows, std::ostream& out) {
  out << "x,rho,u,p,e\n";
  for (const auto& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.rho) << ',' << format_double(r.u) << ','
        << format_double(r.p) << ',' << format_double(r.e) << '\n';
  }
}

void write_profile(const StaggeredField& field, const GasModel& gas, const std::string& path,
                   int n_samples) {
  auto out = open_out(path);
  write_profile(sample_profile(field, gas, n_samples), out);
  finish(out, path);
}

std::vector<ProfileRow> read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  std::getline(in, line);
  std::vector<ProfileRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[5];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 5; ++i) {
      const auto res = std::from_chars(p, end, v[i]);
      if (res.ec != std::errc()) throw IoError("malformed profile row in '" + path + "'");
      p = res.ptr + (res.ptr < end ? 1 : 0);
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  return rows;
}

void write_series(const ConservationLedger& ledger, std::ostream& out) {
  out << "step,t,mass,momentum,energy,rel_drift_m,rel_drift_E,max_ru,max_re\n";
  for (const auto& e : ledger.entries()) {
    out << e.step << ',' << format_double(e.t) << ',' << format_double(e.totals.mass) << ','
        << format_double(e.totals.momentum) << ',' << format_double(e.totals.energy) << ','
        << format_double(e.rel_drift_m) << ',' << format_double(e.rel_drift_E) << ','
        << format_double(e.max_ru) << ',' << format_double(e.max_re) << '\n';
  }
}

void write_series(const ConservationLedger& ledger, const std::string& path) {
  auto out = open_out(path);
  write_series(ledger, out);
  finish(out, path);
}

void write_summary(const Summary& summary, std::ostream& out) {
  out << "quantity,value\n";
  for (const auto& [k, v] : summary) out << k << ',' << v << '\n';
}

void write_summary(const Summary& summary, const std::string& path) {
  auto out = open_out(path);
  write_summary(summary, out);
  finish(out, path);
}

double crossing_from_right(const std::vector<ProfileRow>& rows, double ProfileRow::*field, double level) {
  for (std::size_t i = rows.size(); i-- > 1;) {
    const double a = rows[i - 1].*field - level;
    const double b = rows[i].*field - level;
    if ((a >= 0.0) != (b >= 0.0)) {
      const double s = a / (a - b);
      return rows[i - 1].x + s * (rows[i].x - rows[i - 1].x);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> steep_gradient_locations(const std::vector<ProfileRow>& rows,
                                             double ProfileRow::*field, double fraction,
                                             double min_gap) {
  std::vector<double> grad(rows.size() > 1 ? rows.size() - 1 : 0);
  double gmax = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = std::abs(rows[i + 1].*field - rows[i].*field) / (rows[i + 1].x - rows[i].x);
    gmax = std::max(gmax, grad[i]);
  }
  std::vector<double> centers;
  double wsum = 0.0, xsum = 0.0, last_x = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!(grad[i] > fraction * gmax)) continue;
    const double x = 0.5 * (rows[i].x + rows[i + 1].x);
    if (wsum > 0.0 && x - last_x > min_gap) {
      centers.push_back(xsum / wsum);
      wsum = xsum = 0.0;
    }
    wsum += grad[i];
    xsum += grad[i] * x;
    last_x = x;
  }
  if (wsum > 0.0) centers.push_back(xsum / wsum);
  return centers;
}

}  // namespace staggered
