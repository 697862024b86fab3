#include "tac/cs_kernels.hpp"

#include <stdexcept>

namespace tac {

std::string to_string(CSKind k) {
  switch (k) {
    case CSKind::L: return "L";
    case CSKind::W: return "W";
    case CSKind::WPrimed: return "W'";
  }
  return "?";
}

ThetaKind theta_of(CSKind k) {
  switch (k) {
    case CSKind::L: return ThetaKind::Theta1;
    case CSKind::W: return ThetaKind::Theta2;
    case CSKind::WPrimed: return ThetaKind::Theta3;
  }
  throw std::invalid_argument("unknown transgressed family");
}

int odd_twist_multiplicity(int d, int n) { return 2 * n + (d % 2 == 0 ? 0 : 1); }

int odd_weight(int d, int n) { return d - odd_twist_multiplicity(d, n); }

PhiForm phi_form(CSKind kind, int d, int n, HalfInt order) {
  if (d < 2 || n < 0) throw std::invalid_argument("transgressed forms need d >= 2 and n >= 0");
  if (odd_weight(d, n) <= 0)
    throw std::invalid_argument("weight d - (2n + (1-(-1)^d)/2) must be positive, got " +
                                std::to_string(odd_weight(d, n)));
  const int p = d;
  const ThetaKind tk = theta_of(kind);
  QPowerSeries rk = normalized_ratio(ThetaKind::Theta, RatioRole::RootKernel, p, order).series;
  QPowerSeries ek = normalized_ratio(ThetaKind::Theta, RatioRole::EulerKernel, p, order).series;
  QPowerSeries r = normalized_ratio(tk, RatioRole::Ratio, p, order).series;
  QPowerSeries inv = normalized_ratio(tk, RatioRole::InverseRatio, p, order).series;

  PhiForm out;
  out.kind = kind;
  out.form = SeparatedForm::one(p, order);
  out.form.root = rk * r;
  out.form.euler0 = (ek * inv).pow(odd_twist_multiplicity(d, n));
  if (kind == CSKind::L) {
    out.form = out.form.scaled(pow2(d - 1));
    out.sqrt2 = true;
  }
  return out;
}

PhiForm phi_form_direct(CSKind kind, int d, int n, HalfInt order) {
  const int m0 = odd_twist_multiplicity(d, n);
  if (d < 2 || n < 0 || odd_weight(d, n) <= 0) throw std::invalid_argument("invalid (d, n) for the transgressed forms");
  const int p = d;
  auto lifted = [&](const ScalarSeries& f) { return lift(f, order); };
  ThetaVariant variant = kind == CSKind::L ? ThetaVariant::Theta1
                         : kind == CSKind::W ? ThetaVariant::Theta2
                                              : ThetaVariant::Theta3;
  SeparatedForm bundle = theta_bundle_factors({variant, m0, false}, p, order);
  PhiForm out;
  out.kind = kind;
  out.form = SeparatedForm::one(p, order);
  if (kind == CSKind::L) {
    // The zero root contributes (x / tanh(x/2))^(1/2) -> sqrt(2).
    out.form.root = lifted(series::x_over_tanh_half(p)) * bundle.root;
    out.form.euler0 = lifted(series::tanh_half(p)).pow(m0) * bundle.euler0;
    out.sqrt2 = true;
  } else {
    out.form.root = lifted(series::half_over_sinh_half(p)) * bundle.root;
    out.form.euler0 = lifted(series::sinh(p, Rational(1, 2))).pow(m0) * bundle.euler0;
  }
  return out;
}

CSKernel cs_kernel(CSKind kind, int d, int n, HalfInt order) {
  PhiForm phi = phi_form(kind, d, n, order);
  CSKernel k;
  k.kind = kind;
  k.base_form = phi.form;
  k.kernel = log_derivative_kernel(theta_of(kind), d, order);
  // sqrt(2) * sqrt(2) from the L prefactor and its transgression constant.
  k.scale = phi.sqrt2 ? Rational(2) : Rational(1);
  return k;
}

PolySeries cs_form(CSKind kind, int d, int n, HalfInt order) {
  CSKernel k = cs_kernel(kind, d, n, order);
  SeparatedForm f = k.base_form.scaled(k.scale);
  f.trace = k.kernel.series;
  return f.expand(RingConfig::odd(d));
}

}  // namespace tac
