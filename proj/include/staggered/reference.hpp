#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "staggered/gas.hpp"
#include "staggered/mesh.hpp"

namespace staggered {

enum class ReferenceKind { riemann, isentropic, none };

std::string_view to_string(ReferenceKind k);

/// Named initial-value problem with its run parameters.
struct BenchmarkCase {
  std::string name;
  Primitive left;   ///< two-state data (riemann cases)
  Primitive right;
  double x0 = 0.5;  ///< initial discontinuity
  double a = 0.0;   ///< domain [a, b]
  double b = 1.0;
  double t_final = 0.1;
  double cfl = 0.4;
  double gamma = 1.4;
  Boundary boundary = Boundary::transmissive;
  ReferenceKind reference = ReferenceKind::riemann;

  GasModel gas() const { return GasModel(gamma); }
  PrimitiveProfile profile() const;
};

/// sod, strong, one23, severe, smooth.
const std::vector<BenchmarkCase>& builtin_cases();
/// Throws ArgumentError on an unknown name.
const BenchmarkCase& find_case(const std::string& name);

/// Initial density of the smooth case, 1 + 0.9 sin(2 pi x).
double smooth_density(double x);

struct RiemannSample {
  Primitive state;
  bool vacuum = false;  ///< inside a vacuum region; state is the limit rho = p = 0
};

/// Exact self-similar solution of a two-state case at (x, t), t > 0.
/// Vacuum-generating data is sampled with the two rarefactions that bound
/// the vacuum.
RiemannSample sample_riemann(const BenchmarkCase& c, double x, double t);

struct IsentropicState {
  double rho = 0.0;
  double u = 0.0;
  double x1 = 0.0;  ///< foot of the characteristic x = x1 - sqrt(3) rho0(x1) t
  double x2 = 0.0;  ///< foot of the characteristic x = x2 + sqrt(3) rho0(x2) t
};

/// Characteristics solution of the gamma = 3 isentropic problem with
/// periodic initial density rho0 of the given period. Throws
/// ConvergenceError once the characteristics have crossed.
IsentropicState isentropic_exact(double x, double t, const std::function<double(double)>& rho0,
                                 double period, double gamma = 3.0);

/// Reference primitive state of a case at time t (riemann or isentropic).
using ReferenceSampler = std::function<Primitive(double x)>;
std::optional<ReferenceSampler> reference_sampler(const BenchmarkCase& c, double t);

struct L1Errors {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// Composite-midpoint L1 norm of (field - reference) with n_samples points.
L1Errors l1_error(const StaggeredField& field, const GasModel& gas, const ReferenceSampler& ref,
                  int n_samples = 1000);

/// Position of the right-moving shock of a riemann case at time t, if any.
std::optional<double> exact_right_shock(const BenchmarkCase& c, double t);

}  // namespace staggered
