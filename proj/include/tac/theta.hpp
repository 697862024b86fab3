#pragma once

#include <string>

#include "tac/graded_poly.hpp"
#include "tac/qseries.hpp"

namespace tac {

/// Labels follow the source convention: `Theta` carries sin, `Theta1` cos,
/// `Theta2`/`Theta3` are the half-period products with minus/plus signs.
enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

enum class RatioRole {
  RootKernel,    // x theta'(0) / theta(x)
  Ratio,         // theta_i(x) / theta_i(0)
  InverseRatio,  // theta_i(0) / theta_i(x)
  EulerKernel,   // pi i theta(u) / theta'(0)
};

std::string to_string(ThetaKind kind);
std::string to_string(RatioRole role);

/// Power series in the normalized variable a = 2 pi i x whose coefficients are
/// rational q-series. `normalization` records which constants were cancelled.
struct ThetaExpansion {
  ThetaKind kind = ThetaKind::Theta;
  QPowerSeries series;
  std::string normalization;
};

/// Theta constants with the common prefactor removed:
///   Theta1 -> prod (1-q^j)(1+q^j)^2        (true value times 1/(2 q^(1/8)))
///   Theta2 -> prod (1-q^j)(1-q^(j-1/2))^2
///   Theta3 -> prod (1-q^j)(1+q^(j-1/2))^2
/// Theta itself vanishes at the origin and is rejected.
RatSeries theta_constant(ThetaKind kind, HalfInt order);

/// theta'(0) / (2 pi q^(1/8)) = prod (1-q^j)^3.
RatSeries theta_prime_constant(HalfInt order);

/// Normalized ratios through a^precision, q-series known through `order`.
/// RootKernel and EulerKernel require kind == Theta; the ratio roles require
/// one of Theta1..Theta3.
ThetaExpansion normalized_ratio(ThetaKind kind, RatioRole role, int precision, HalfInt order);

/// d/da log(RootKernel * Ratio_i): the odd, regular kernel
/// 1/a - theta'(a)/theta(a) + theta_i'(a)/theta_i(a) in normalized form.
ThetaExpansion log_derivative_kernel(ThetaKind kind, int precision, HalfInt order);

struct ModularPair {
  int level = 1;
  RatSeries delta;
  RatSeries epsilon;
};

/// delta_i / epsilon_i assembled from the theta constants. theta_1^4 carries
/// the exact factor 16 q^(1/2) from its prefactor, so everything stays on the
/// q^(1/2) lattice.
ModularPair modular_pair(int level, HalfInt order);

/// Residual of prod(1-q^j)^3 - theta1 * theta2 * theta3 in normalized form.
RatSeries jacobi_identity_residual(HalfInt order);

}  // namespace tac
