#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tac/qseries.hpp"
#include "tac/rational.hpp"

namespace tac {

/// Truncated univariate power series sum_{p=0}^{n} c_p x^p over a coefficient
/// ring T. Dense storage; `zero` is the ring's zero prototype.
template <class T>
class PowerSeries {
 public:
  PowerSeries() = default;
  /// Zero series known through x^n.
  PowerSeries(int n, T zero) : zero_(std::move(zero)), coeffs_(static_cast<std::size_t>(n + 1), zero_) {
    if (n < 0) throw std::invalid_argument("PowerSeries length must be non-negative");
  }

  static PowerSeries one(int n, T zero) {
    PowerSeries s(n, zero);
    s.coeffs_[0] = one_like(s.zero_);
    return s;
  }
  /// The series x (the variable itself).
  static PowerSeries variable(int n, T zero) {
    PowerSeries s(n, zero);
    if (n >= 1) s.coeffs_[1] = one_like(s.zero_);
    return s;
  }

  int precision() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& zero() const { return zero_; }
  const T& operator[](int p) const { return p <= precision() ? coeffs_[static_cast<std::size_t>(p)] : zero_; }
  T& at(int p) { return coeffs_.at(static_cast<std::size_t>(p)); }
  const std::vector<T>& coefficients() const { return coeffs_; }

  /// Lowest power with a nonzero coefficient, or precision()+1 for zero.
  int valuation() const {
    for (int p = 0; p <= precision(); ++p)
      if (!detail::coeff_is_zero(coeffs_[static_cast<std::size_t>(p)])) return p;
    return precision() + 1;
  }

  PowerSeries truncated(int n) const {
    PowerSeries r(std::min(n, precision()), zero_);
    for (int p = 0; p <= r.precision(); ++p) r.at(p) = (*this)[p];
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    PowerSeries<U> r(precision(), f(zero_));
    for (int p = 0; p <= precision(); ++p) r.at(p) = f((*this)[p]);
    return r;
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    shrink_to(o.precision());
    for (int p = 0; p <= precision(); ++p) at(p) += o[p];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    shrink_to(o.precision());
    for (int p = 0; p <= precision(); ++p) at(p) -= o[p];
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator-(const PowerSeries& a) {
    PowerSeries r(a.precision(), a.zero_);
    for (int p = 0; p <= a.precision(); ++p) r.at(p) = -a[p];
    return r;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.precision(), b.precision());
    PowerSeries r(n, a.zero_);
    for (int i = 0; i <= n; ++i) {
      if (detail::coeff_is_zero(a[i])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (detail::coeff_is_zero(b[j])) continue;
        r.at(i + j) += a[i] * b[j];
      }
    }
    return r;
  }
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

  PowerSeries scaled(const T& k) const {
    PowerSeries r(precision(), zero_);
    for (int p = 0; p <= precision(); ++p) r.at(p) = (*this)[p] * k;
    return r;
  }

  PowerSeries pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    PowerSeries r = one(precision(), zero_), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k > 0) b *= b;
    }
    return r;
  }

  /// Requires a unit constant term.
  PowerSeries inverse() const {
    T c0_inv = invert_unit(coeffs_.front());
    int n = precision();
    PowerSeries r(n, zero_);
    r.at(0) = c0_inv;
    for (int k = 1; k <= n; ++k) {
      T acc = zero_;
      for (int j = 1; j <= k; ++j)
        if (!detail::coeff_is_zero((*this)[j])) acc += (*this)[j] * r[k - j];
      r.at(k) = -(acc * c0_inv);
    }
    return r;
  }

  /// Divides by x^k. The low coefficients must vanish; precision drops by k.
  PowerSeries divided_by_power(int k) const {
    if (valuation() < k) throw NotAUnit("series is not divisible by x^" + std::to_string(k));
    PowerSeries r(precision() - k, zero_);
    for (int p = 0; p <= r.precision(); ++p) r.at(p) = (*this)[p + k];
    return r;
  }

  /// this / other where both may vanish at x = 0; the quotient must be
  /// regular. Precision drops by the valuation of `other`.
  PowerSeries divided_by(const PowerSeries& other) const {
    int v = other.valuation();
    return divided_by_power(v) * other.divided_by_power(v).inverse();
  }

  PowerSeries derivative() const {
    int n = std::max(precision() - 1, 0);
    PowerSeries r(n, zero_);
    for (int p = 1; p <= precision(); ++p) r.at(p - 1) = times_rational((*this)[p], Rational(p));
    return r;
  }

  /// f(-x).
  PowerSeries reflected() const {
    PowerSeries r = *this;
    for (int p = 1; p <= precision(); p += 2) r.at(p) = -r[p];
    return r;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void shrink_to(int n) {
    if (n < precision()) coeffs_.resize(static_cast<std::size_t>(n + 1));
  }

  T zero_{};
  std::vector<T> coeffs_;
};

using ScalarSeries = PowerSeries<Rational>;

/// Elementary rational power series used throughout, all known through x^n.
namespace series {

/// exp(k x)
ScalarSeries exp(int n, const Rational& k = 1);
/// sinh(k x), cosh(k x)
ScalarSeries sinh(int n, const Rational& k = 1);
ScalarSeries cosh(int n, const Rational& k = 1);
/// (x/2)/sinh(x/2)
ScalarSeries half_over_sinh_half(int n);
/// x/tanh(x/2)
ScalarSeries x_over_tanh_half(int n);
/// tanh(x/2)
ScalarSeries tanh_half(int n);

}  // namespace series

}  // namespace tac
