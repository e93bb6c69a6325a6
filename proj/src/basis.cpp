#include "staggered/basis.hpp"

#include <array>
#include <cmath>
#include <string>

#include "staggered/errors.hpp"

namespace staggered::basis {
namespace {

[[noreturn, gnu::noinline]] void fail(int degree, int index) {
  if (degree < 0 || degree > kMaxDegree) {
    throw ArgumentError("unsupported Bernstein degree " + std::to_string(degree));
  }
  throw ArgumentError("basis index " + std::to_string(index) + " out of range for degree " +
                      std::to_string(degree));
}

inline void check(int degree, int index) {
  if (degree < 0 || degree > kMaxDegree || index < 0 || index > degree) [[unlikely]] {
    fail(degree, index);
  }
}

// Unchecked kernels; the public entry points validate once.
inline double eval_raw(int degree, int index, double lambda) {
  const double l1 = 1.0 - lambda;
  const double l2 = lambda;
  switch (degree) {
    case 0:
      return 1.0;
    case 1:
      return index == 0 ? l1 : l2;
    default:
      if (index == 0) return l1 * l1;
      if (index == 1) return 2.0 * l1 * l2;
      return l2 * l2;
  }
}

inline double derivative_raw(int degree, int index, double lambda) {
  switch (degree) {
    case 0:
      return 0.0;
    case 1:
      return index == 0 ? -1.0 : 1.0;
    default:
      if (index == 0) return -2.0 * (1.0 - lambda);
      if (index == 1) return 2.0 - 4.0 * lambda;
      return 2.0 * lambda;
  }
}

QuadratureRule mapped(std::initializer_list<double> nodes, std::initializer_list<double> weights) {
  QuadratureRule rule;
  for (double x : nodes) rule.points.push_back(0.5 * (1.0 + x));
  for (double w : weights) rule.weights.push_back(0.5 * w);
  return rule;
}

std::array<QuadratureRule, 5> make_rules() {
  const double s3 = std::sqrt(3.0);
  const double s35 = std::sqrt(3.0 / 5.0);
  const double a4 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double b4 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double wa4 = (18.0 + std::sqrt(30.0)) / 36.0;
  const double wb4 = (18.0 - std::sqrt(30.0)) / 36.0;
  const double a5 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double b5 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double wa5 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double wb5 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  return {
      mapped({0.0}, {2.0}),
      mapped({-1.0 / s3, 1.0 / s3}, {1.0, 1.0}),
      mapped({-s35, 0.0, s35}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}),
      mapped({-b4, -a4, a4, b4}, {wb4, wa4, wa4, wb4}),
      mapped({-b5, -a5, 0.0, a5, b5}, {wb5, wa5, 128.0 / 225.0, wa5, wb5}),
  };
}

}  // namespace

double eval(int degree, int index, double lambda) {
  check(degree, index);
  return eval_raw(degree, index, lambda);
}

double derivative(int degree, int index, double lambda) {
  check(degree, index);
  return derivative_raw(degree, index, lambda);
}

std::vector<double> lumped_mass(int degree, double h) {
  check(degree, 0);
  if (!(h > 0.0)) throw ArgumentError("element length must be positive");
  return std::vector<double>(static_cast<std::size_t>(degree + 1), h / (degree + 1));
}

double bezier_value(std::span<const double> coeffs, double lambda) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  check(degree, 0);
  double v = 0.0;
  for (int i = 0; i <= degree; ++i) v += coeffs[i] * eval_raw(degree, i, lambda);
  return v;
}

double bezier_derivative(std::span<const double> coeffs, double lambda) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  check(degree, 0);
  double v = 0.0;
  for (int i = 0; i <= degree; ++i) v += coeffs[i] * derivative_raw(degree, i, lambda);
  return v;
}

const QuadratureRule& gauss_rule(int n) {
  static const std::array<QuadratureRule, 5> rules = make_rules();
  if (n < 1 || n > 5) throw ArgumentError("unsupported Gauss rule size " + std::to_string(n));
  return rules[static_cast<std::size_t>(n - 1)];
}

const QuadratureRule& element_rule() { return gauss_rule(5); }

}  // namespace staggered::basis
