#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tac/qseries.hpp"
#include "tac/theta.hpp"

namespace tac {

using Complex = std::complex<double>;

/// Truncated product formula for the given theta function.
/// Throws std::domain_error when Im(tau) <= 0 or terms < 1.
Complex numeric_theta(Complex v, Complex tau, ThetaKind kind, int terms = 40);

/// Derivative in v of the same truncated product.
Complex numeric_theta_derivative(Complex v, Complex tau, ThetaKind kind, int terms = 40);

/// delta_level(tau) and epsilon_level(tau) from numeric theta constants.
Complex numeric_delta(int level, Complex tau, int terms = 40);
Complex numeric_epsilon(int level, Complex tau, int terms = 40);

/// q^(1/2) = exp(pi i tau).
Complex sqrt_q(Complex tau);

/// |a - b| <= tol * max(1, |a|, |b|).
bool numerically_equal(Complex a, Complex b, double tol);

struct NumericComparison {
  std::string law;
  Complex tau;
  Complex lhs;
  Complex rhs;
  double error = 0;  // scaled as in numerically_equal
  bool ok = false;
};

/// Every transformation law for theta, its derivative, theta'(0) and the
/// delta/epsilon forms, at each sample tau.
std::vector<NumericComparison> numeric_transformation_suite(const std::vector<Complex>& taus, Complex v,
                                                            double tol, int terms = 40);

/// Formal expansions (theta constants, theta'(0), delta, epsilon) evaluated at
/// exp(2 pi i tau) against the direct products.
std::vector<NumericComparison> formal_numeric_crosscheck(Complex tau, HalfInt order, double tol, int terms = 40);

}  // namespace tac
