#include "tac/theta.hpp"

#include <stdexcept>

namespace tac {

namespace {

constexpr HalfInt kHalf = HalfInt::from_twice(1);

// 1 + sign * q^e
RatSeries binomial(HalfInt e, int sign, HalfInt order) {
  RatSeries s = RatSeries::one(order);
  s.add_to(e, Rational(sign));
  return s;
}

// Exponents j (integer) or j - 1/2 (half) for j >= 1, up to the order.
template <class F>
void for_each_exponent(bool half, HalfInt order, F&& f) {
  for (int j = 1;; ++j) {
    HalfInt e = half ? HalfInt::from_twice(2 * j - 1) : HalfInt::integer(j);
    if (e > order) break;
    f(e);
  }
}

// (1 - s e^a q^e)(1 - s e^-a q^e) / (1 - s q^e)^2 as a power series in a.
// Numerator is (1 - s q^e)^2 - 2 s q^e (cosh a - 1).
QPowerSeries normalized_pair(HalfInt e, int sign, int precision, HalfInt order) {
  RatSeries base = binomial(e, -sign, order);
  RatSeries inv_sq = (base * base).inverse();
  RatSeries lead = RatSeries::monomial(order, e, Rational(-2 * sign)) * inv_sq;
  QPowerSeries r = QPowerSeries::one(precision, RatSeries(order));
  ScalarSeries ch = series::cosh(precision);
  for (int p = 2; p <= precision; p += 2) r.at(p) = times_rational(lead, ch[p]);
  return r;
}

QPowerSeries product_of_pairs(bool half, int sign, int precision, HalfInt order) {
  QPowerSeries r = QPowerSeries::one(precision, RatSeries(order));
  for_each_exponent(half, order, [&](HalfInt e) { r *= normalized_pair(e, sign, precision, order); });
  return r;
}

const char* kPrefactorNote =
    "variable a = 2 pi i x; common factor 2 q^(1/8) and the pi of theta'(0) cancelled";

}  // namespace

std::string to_string(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::Theta: return "theta";
    case ThetaKind::Theta1: return "theta1";
    case ThetaKind::Theta2: return "theta2";
    case ThetaKind::Theta3: return "theta3";
  }
  return "?";
}

std::string to_string(RatioRole role) {
  switch (role) {
    case RatioRole::RootKernel: return "root-kernel";
    case RatioRole::Ratio: return "ratio";
    case RatioRole::InverseRatio: return "inverse-ratio";
    case RatioRole::EulerKernel: return "euler-kernel";
  }
  return "?";
}

RatSeries theta_constant(ThetaKind kind, HalfInt order) {
  if (kind == ThetaKind::Theta) throw std::invalid_argument("theta vanishes at v = 0; use theta_prime_constant");
  RatSeries r = RatSeries::one(order);
  for_each_exponent(false, order, [&](HalfInt e) { r *= binomial(e, -1, order); });
  bool half = kind != ThetaKind::Theta1;
  int sign = kind == ThetaKind::Theta2 ? -1 : 1;
  for_each_exponent(half, order, [&](HalfInt e) {
    RatSeries f = binomial(e, sign, order);
    r *= f * f;
  });
  return r;
}

RatSeries theta_prime_constant(HalfInt order) {
  RatSeries r = RatSeries::one(order);
  for_each_exponent(false, order, [&](HalfInt e) { r *= binomial(e, -1, order).pow(3); });
  return r;
}

ThetaExpansion normalized_ratio(ThetaKind kind, RatioRole role, int precision, HalfInt order) {
  ThetaExpansion out;
  out.kind = kind;
  out.normalization = kPrefactorNote;
  const bool kernel_role = role == RatioRole::RootKernel || role == RatioRole::EulerKernel;
  if (kernel_role != (kind == ThetaKind::Theta))
    throw std::invalid_argument("role " + to_string(role) + " is not defined for " + to_string(kind));

  switch (role) {
    case RatioRole::RootKernel:
      out.series = lift(series::half_over_sinh_half(precision), order) *
                   product_of_pairs(false, 1, precision, order).inverse();
      break;
    case RatioRole::EulerKernel:
      out.series = lift(series::sinh(precision, Rational(1, 2)), order) * product_of_pairs(false, 1, precision, order);
      break;
    case RatioRole::Ratio:
    case RatioRole::InverseRatio: {
      QPowerSeries r;
      if (kind == ThetaKind::Theta1) {
        r = lift(series::cosh(precision, Rational(1, 2)), order) * product_of_pairs(false, -1, precision, order);
      } else {
        r = product_of_pairs(true, kind == ThetaKind::Theta2 ? 1 : -1, precision, order);
      }
      out.series = role == RatioRole::Ratio ? r : r.inverse();
      break;
    }
  }
  return out;
}

ThetaExpansion log_derivative_kernel(ThetaKind kind, int precision, HalfInt order) {
  if (kind == ThetaKind::Theta) throw std::invalid_argument("log-derivative kernel needs theta1, theta2 or theta3");
  QPowerSeries f = normalized_ratio(ThetaKind::Theta, RatioRole::RootKernel, precision + 1, order).series *
                   normalized_ratio(kind, RatioRole::Ratio, precision + 1, order).series;
  ThetaExpansion out;
  out.kind = kind;
  out.normalization = std::string(kPrefactorNote) + "; derivative taken in a";
  out.series = f.derivative() * f.truncated(precision).inverse();
  return out;
}

ModularPair modular_pair(int level, HalfInt order) {
  RatSeries t1 = theta_constant(ThetaKind::Theta1, order).pow(4);
  RatSeries t2 = theta_constant(ThetaKind::Theta2, order).pow(4);
  RatSeries t3 = theta_constant(ThetaKind::Theta3, order).pow(4);
  // theta1^4 = 16 q^(1/2) t1
  RatSeries th1 = times_rational(t1.shifted(kHalf).truncated(order), Rational(16));
  ModularPair mp;
  mp.level = level;
  switch (level) {
    case 1:
      mp.delta = times_rational(t2 + t3, Rational(1, 8));
      mp.epsilon = times_rational(t2 * t3, Rational(1, 16));
      break;
    case 2:
      mp.delta = times_rational(th1 + t3, Rational(-1, 8));
      mp.epsilon = times_rational(th1 * t3, Rational(1, 16));
      break;
    case 3:
      mp.delta = times_rational(th1 - t2, Rational(1, 8));
      mp.epsilon = times_rational(th1 * t2, Rational(-1, 16));
      break;
    default:
      throw std::invalid_argument("modular pair level must be 1, 2 or 3");
  }
  return mp;
}

RatSeries jacobi_identity_residual(HalfInt order) {
  return theta_prime_constant(order) - theta_constant(ThetaKind::Theta1, order) *
                                           theta_constant(ThetaKind::Theta2, order) *
                                           theta_constant(ThetaKind::Theta3, order);
}

}  // namespace tac
