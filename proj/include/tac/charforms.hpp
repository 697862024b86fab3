#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tac/graded_poly.hpp"
#include "tac/theta.hpp"

namespace tac {

/// Integer combination of the formal bundle atoms. Atoms: the complexified
/// tangent bundle (roots +-a_j, plus a zero root in odd dimension), xi0
/// (roots +-c0), xi (roots +-c) and the trivial line.
struct VirtualBundle {
  int tangent = 0;
  int xi0 = 0;
  int xi = 0;
  int trivial = 0;

  static VirtualBundle tangent_bundle() { return {1, 0, 0, 0}; }
  static VirtualBundle xi0_bundle() { return {0, 1, 0, 0}; }
  static VirtualBundle xi_bundle() { return {0, 0, 1, 0}; }
  static VirtualBundle trivial_bundle(int rank) { return {0, 0, 0, rank}; }

  int rank(const RingConfig& cfg) const;
  /// E - rank(E).
  VirtualBundle reduced(const RingConfig& cfg) const;

  VirtualBundle operator+(const VirtualBundle& o) const {
    return {tangent + o.tangent, xi0 + o.xi0, xi + o.xi, trivial + o.trivial};
  }
  VirtualBundle operator-(const VirtualBundle& o) const { return *this + o.times(-1); }
  VirtualBundle times(int k) const { return {k * tangent, k * xi0, k * xi, k * trivial}; }
  friend bool operator==(const VirtualBundle&, const VirtualBundle&) = default;
};

/// Number of tangent roots that are identically zero (one in odd dimension).
int zero_roots(const RingConfig& cfg);

/// Chern character of a virtual bundle as a ring element.
GradedPoly ch(const VirtualBundle& b, const RingConfig& cfg);

/// ch(lambda_t(b)) with t = sign * q^exponent, computed by brute force in the
/// ring. Negative multiplicities use the series inverse.
PolySeries ch_lambda(const VirtualBundle& b, int sign, HalfInt exponent, const RingConfig& cfg, HalfInt order);

/// ch(S_t(b)) = 1 / ch(lambda_{-t}(b)).
PolySeries ch_symmetric(const VirtualBundle& b, int sign, HalfInt exponent, const RingConfig& cfg, HalfInt order);

enum class ThetaVariant { Theta1, Theta2, Theta3, Theta1Primed, Theta2Primed };

std::string to_string(ThetaVariant v);

/// Which twisted loop-space bundle to expand.
///  Theta1/Theta2:       (T, m0 xi0, xi)      or (T, m0 xi0, C^2) without xi
///  Theta3:              (T, m0 xi0), no xi slot
///  Theta1/2 Primed:     (T + xi, m0 xi0, xi) or (T + xi, m0 xi0, C^2)
struct ThetaBundleSpec {
  ThetaVariant variant = ThetaVariant::Theta2;
  int m0 = 0;
  bool with_xi = true;
};

/// One infinite family of operations: op_{t_k}(arg) for k >= 1 with
/// t_k = sign * q^k (integer) or sign * q^(k-1/2) (half).
struct BundleSlot {
  bool symmetric = false;  // S_t instead of lambda_t
  int sign = 1;
  bool half = false;
  VirtualBundle arg;
};

std::vector<BundleSlot> theta_bundle_slots(const ThetaBundleSpec& spec, const RingConfig& cfg);

/// The q^(1/2) coefficient of the bundle as a virtual bundle: every slot
/// whose first exponent is 1/2 contributes sign * arg.
VirtualBundle first_half_coefficient(const ThetaBundleSpec& spec, const RingConfig& cfg);

/// Full Chern-character q-series of the bundle by direct multiplication in the
/// ring. Cost grows quickly with d; meant for small rings and as an oracle.
PolySeries ch_theta_bundle(const ThetaBundleSpec& spec, const RingConfig& cfg, HalfInt order);

/// A product of one-variable series: scalar * prod_j root(a_j) * euler0(c0) *
/// euler(c) [* trace(y) * s]. Every characteristic form used here factors
/// this way, which keeps the q-series arithmetic one-dimensional until the
/// final expansion.
struct SeparatedForm {
  RatSeries scalar;
  QPowerSeries root;
  QPowerSeries euler0;
  QPowerSeries euler;
  std::optional<QPowerSeries> trace;

  static SeparatedForm one(int precision, HalfInt order);

  int precision() const;
  HalfInt order() const;

  SeparatedForm operator*(const SeparatedForm& o) const;
  SeparatedForm scaled(const Rational& k) const;

  /// Multiplies out in the ring; the trace factor, when present, is followed
  /// by the odd generator s.
  PolySeries expand(const RingConfig& cfg) const;
};

/// Direct K-theory expansion of a Theta bundle, per variable. The root and
/// c0 factors come from exp-series products of the lambda/S operations; the
/// ring path `ch_theta_bundle` multiplies the same operations out in full.
SeparatedForm theta_bundle_factors(const ThetaBundleSpec& spec, int precision, HalfInt order);

/// A-hat = prod (a/2)/sinh(a/2); L-hat = prod a/tanh(a/2).
GradedPoly a_hat(const RingConfig& cfg);
GradedPoly l_hat(const RingConfig& cfg);

enum class QFormKind { Q1, Q2, Q1Primed, Q2Primed };

std::string to_string(QFormKind k);

/// Exponent of the xi0 twist: 2n + (1 - (-1)^d)/2, or 2n + (1 + (-1)^d)/2 for
/// the primed forms.
int twist_multiplicity(QFormKind kind, int d, int n);

/// Throws std::invalid_argument naming the violated inequality.
void require_hypothesis(QFormKind kind, int d, int n);

struct QFormOptions {
  bool with_xi = true;
  bool check_hypothesis = true;
};

/// Q-form assembled from normalized theta ratios (all pi-powers cancelled).
SeparatedForm q_form_theta(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts = {});

/// The same Q-form built from A-hat / L-hat, hyperbolic factors and the
/// Chern character of the Theta bundles.
SeparatedForm q_form_direct(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts = {});

/// Convenience: expanded theta-path Q-form in the even ring of dimension 2d.
PolySeries q_form(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts = {});

}  // namespace tac
