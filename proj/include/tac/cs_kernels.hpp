#pragma once

#include <string>

#include "tac/charforms.hpp"

namespace tac {

/// The three transgressed families on a (2d-1)-manifold.
enum class CSKind { L, W, WPrimed };

std::string to_string(CSKind k);

/// Theta function whose ratio enters the family: theta1 for L, theta2 for W,
/// theta3 for W'.
ThetaKind theta_of(CSKind k);

/// Value = rational part * (sqrt2 ? sqrt(2) : 1). The half-integral powers of
/// 2 in odd dimension are kept symbolic this way.
struct PhiForm {
  CSKind kind = CSKind::W;
  SeparatedForm form;
  bool sqrt2 = false;
};

/// Exponent of the xi0 twist, 2n + (1 - (-1)^d)/2.
int odd_twist_multiplicity(int d, int n);

/// Modular weight d - m0 of the transgressed forms.
int odd_weight(int d, int n);

/// The closed prefactor form in normalized variables over d-1 roots (the
/// zero root contributes 1). L carries 2^(d-1) * sqrt(2).
PhiForm phi_form(CSKind kind, int d, int n, HalfInt order);

/// The same prefactor from L-hat / A-hat, the hyperbolic c0 factor and the
/// Chern character of the Theta1/Theta2/Theta3 bundle without xi.
PhiForm phi_form_direct(CSKind kind, int d, int n, HalfInt order);

/// Base form, trace kernel and the odd generator standing for the integrated
/// trace. The common 1/(8 pi^2) and 2 pi i factors are dropped; the sqrt(2)
/// of the L family combines with the one in its base form.
struct CSKernel {
  CSKind kind = CSKind::W;
  SeparatedForm base_form;
  ThetaExpansion kernel;
  Rational scale{1};
};

CSKernel cs_kernel(CSKind kind, int d, int n, HalfInt order);

/// base * scale * kernel(y) * s expanded in RingConfig::odd(d); linear in s.
PolySeries cs_form(CSKind kind, int d, int n, HalfInt order);

}  // namespace tac
