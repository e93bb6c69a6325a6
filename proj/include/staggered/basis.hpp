#pragma once

#include <span>
#include <vector>

namespace staggered::basis {

/// Highest Bernstein degree supported on the reference interval.
inline constexpr int kMaxDegree = 2;

/// Bernstein-Bezier polynomial B_index^degree on [0,1] with lambda the
/// barycentric coordinate of the right vertex (lambda_1 = 1 - lambda,
/// lambda_2 = lambda).
double eval(int degree, int index, double lambda);

/// d/dlambda of eval(). Physical derivatives need an extra 1/h factor.
double derivative(int degree, int index, double lambda);

/// Exact integrals of the basis functions over an element of length h.
/// Bernstein functions of degree d all integrate to h/(d+1).
std::vector<double> lumped_mass(int degree, double h);

/// Value of sum_i coeffs[i] B_i(lambda) with degree = coeffs.size() - 1.
double bezier_value(std::span<const double> coeffs, double lambda);
double bezier_derivative(std::span<const double> coeffs, double lambda);

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// n-point rule, exact for polynomials of degree <= 2n-1. Supported n: 1..5.
const QuadratureRule& gauss_rule(int n);

/// Rule used for every element integral of the scheme. Five points integrate
/// degree 9 exactly, which covers every product appearing in the residuals
/// and correction weights for thermodynamic degree <= 1.
const QuadratureRule& element_rule();

}  // namespace staggered::basis
