#pragma once

// Reference computations written independently of the library: they share
// no code with src/ and are used to cross-check it.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Gauss-Legendre nodes and weights on [0,1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

// int_0^1 f with a 20-point rule (exact to degree 39).
inline double integrate01(const std::function<double(double)>& f) {
  static const auto rule = gauss_legendre(20);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.first.size(); ++i) s += rule.second[i] * f(rule.first[i]);
  return s;
}

// Bernstein polynomial from the de Casteljau recursion.
inline double casteljau(std::vector<double> c, double t) {
  for (std::size_t r = 1; r < c.size(); ++r) {
    for (std::size_t i = 0; i + r < c.size(); ++i) c[i] = (1.0 - t) * c[i] + t * c[i + 1];
  }
  return c.empty() ? 0.0 : c[0];
}

// d/dt of the Bernstein polynomial: degree * sum (c_{i+1} - c_i) B^{d-1}_i.
inline double casteljau_derivative(const std::vector<double>& c, double t) {
  if (c.size() < 2) return 0.0;
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) d[i] = static_cast<double>(d.size()) * (c[i + 1] - c[i]);
  return casteljau(d, t);
}

// Single basis function B_i^d via the same recursion on a unit vector.
inline double bernstein(int degree, int i, double t) {
  std::vector<double> c(static_cast<std::size_t>(degree + 1), 0.0);
  c[static_cast<std::size_t>(i)] = 1.0;
  return casteljau(c, t);
}
inline double bernstein_derivative(int degree, int i, double t) {
  std::vector<double> c(static_cast<std::size_t>(degree + 1), 0.0);
  c[static_cast<std::size_t>(i)] = 1.0;
  return casteljau_derivative(c, t);
}

inline std::vector<double> random_coeffs(std::mt19937& rng, int degree, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> c(static_cast<std::size_t>(degree + 1));
  for (double& v : c) v = d(rng);
  return c;
}

// Ideal-gas Riemann star state by plain bisection on the pressure function.
struct StarState {
  double p, u, rho_left, rho_right;
};

inline StarState riemann_bisection(double rl, double ul, double pl, double rr, double ur, double pr,
                                   double g) {
  auto f = [g](double p, double rho, double pk) {
    const double c = std::sqrt(g * pk / rho);
    if (p > pk) {
      const double a = 2.0 / ((g + 1.0) * rho);
      const double b = (g - 1.0) / (g + 1.0) * pk;
      return (p - pk) * std::sqrt(a / (p + b));
    }
    return 2.0 * c / (g - 1.0) * (std::pow(p / pk, (g - 1.0) / (2.0 * g)) - 1.0);
  };
  auto total = [&](double p) { return f(p, rl, pl) + f(p, rr, pr) + (ur - ul); };
  double lo = 1e-14, hi = 10.0 * std::max(pl, pr) + 10.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) > 0.0 ? hi : lo) = mid;
  }
  const double p = 0.5 * (lo + hi);
  const double u = 0.5 * (ul + ur) + 0.5 * (f(p, rr, pr) - f(p, rl, pl));
  auto rho_star = [g, p](double rho, double pk) {
    if (p > pk) {
      const double q = (g - 1.0) / (g + 1.0);
      return rho * (p / pk + q) / (q * p / pk + 1.0);
    }
    return rho * std::pow(p / pk, 1.0 / g);
  };
  return {p, u, rho_star(rl, pl), rho_star(rr, pr)};
}

}  // namespace oracle
