#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "staggered/gas.hpp"
#include "staggered/mesh.hpp"

namespace staggered {

struct Totals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

/// Exact integrals of rho, rho u and E = e + rho u^2 / 2 over the domain.
Totals conservation_totals(const StaggeredField& field);

struct LedgerEntry {
  long step = 0;
  double t = 0.0;
  Totals totals;
  double rel_drift_m = 0.0;
  double rel_drift_E = 0.0;
  double max_ru = 0.0;
  double max_re = 0.0;
};

/// Time series of the conserved totals. Drifts compare the change of a total
/// with what left through the boundaries:
///   drift = (Q(t) - Q(0) + outflow) / scale
/// where scale is |E(0)| for energy and sqrt(2 M(0) E(0)) for momentum (the
/// initial momentum may vanish).
class ConservationLedger {
 public:
  void start(const Totals& initial);
  void record(long step, double t, const Totals& totals, const Flux& outflow, double max_ru,
              double max_re);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  const Totals& initial() const { return initial_; }
  const Flux& accumulated_outflow() const { return outflow_; }
  double max_abs_drift_m() const;
  double max_abs_drift_E() const;
  double mass_drift() const;  ///< latest, scaled by the initial mass

 private:
  Totals initial_;
  Flux outflow_;
  double mass_drift_ = 0.0;
  std::vector<LedgerEntry> entries_;
};

/// sum_n dt_n sum_K |K| sum_sigma |v_sigma - mean_K v| for rho, u and e.
class WeakBV {
 public:
  void add(const StaggeredField& field, double dt);
  double rho() const { return rho_; }
  double u() const { return u_; }
  double e() const { return e_; }

 private:
  double rho_ = 0.0, u_ = 0.0, e_ = 0.0;
};

/// One sampled point of a profile; e is the specific internal energy.
struct ProfileRow {
  double x, rho, u, p, e;
};

/// Samples at the midpoints of n equal subintervals of the domain.
std::vector<ProfileRow> sample_profile(const StaggeredField& field, const GasModel& gas,
                                       int n_samples = 1000);

void write_profile(const StaggeredField& field, const GasModel& gas, const std::string& path,
                   int n_samples = 1000);
void write_profile(const std::vector<ProfileRow>& rows, std::ostream& out);
std::vector<ProfileRow> read_profile(const std::string& path);

void write_series(const ConservationLedger& ledger, const std::string& path);
void write_series(const ConservationLedger& ledger, std::ostream& out);

/// Ordered (quantity, value) pairs written as a two-column CSV.
using Summary = std::vector<std::pair<std::string, std::string>>;
void write_summary(const Summary& summary, const std::string& path);
void write_summary(const Summary& summary, std::ostream& out);

/// Rightmost point where the sampled values cross `level`, scanning from the
/// right end; linear interpolation between samples. Returns NaN if none.
double crossing_from_right(const std::vector<ProfileRow>& rows, double ProfileRow::*field,
                           double level);

/// Centers of the clusters of samples whose |dv/dx| exceeds
/// fraction * max |dv/dx|; samples closer than min_gap belong to one cluster.
std::vector<double> steep_gradient_locations(const std::vector<ProfileRow>& rows,
                                             double ProfileRow::*field, double fraction,
                                             double min_gap);

}  // namespace staggered
