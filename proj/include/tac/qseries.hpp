#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tac/rational.hpp"

namespace tac {

/// Asked for a coefficient past the truncation order: the value is unknown,
/// which is different from zero.
class BeyondTruncation : public std::out_of_range {
 public:
  explicit BeyondTruncation(const std::string& what) : std::out_of_range(what) {}
};

/// The lowest coefficient of a series (or a polynomial constant term) cannot
/// be inverted.
class NotAUnit : public std::domain_error {
 public:
  explicit NotAUnit(const std::string& what) : std::domain_error(what) {}
};

// Coefficient-ring hooks for Rational. GradedPoly supplies its own overloads.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational invert_unit(const Rational& r) {
  if (r.is_zero()) throw NotAUnit("zero rational is not invertible");
  return r.inverse();
}

namespace detail {
// Unqualified call so overloads declared after this header are found by ADL.
template <class T>
bool coeff_is_zero(const T& v) {
  return is_zero(v);
}
}  // namespace detail

/// Truncated series in q^(1/2): sum of c_k q^(k/2) for k <= order.
///
/// `zero` is a prototype of the coefficient ring's zero; it carries whatever
/// context the ring needs (GradedPoly keeps its RingConfig there).
template <class T>
class QSeries {
 public:
  using Map = std::map<HalfInt, T>;

  QSeries() = default;
  explicit QSeries(HalfInt order, T zero = T()) : order_(order), zero_(std::move(zero)) {}

  static QSeries constant(HalfInt order, T value, T zero = T()) {
    QSeries s(order, std::move(zero));
    s.set(HalfInt{}, std::move(value));
    return s;
  }
  static QSeries one(HalfInt order, T zero = T()) {
    T unit = one_like(zero);
    return constant(order, std::move(unit), std::move(zero));
  }
  /// c * q^(e), or the zero series when e exceeds the order.
  static QSeries monomial(HalfInt order, HalfInt e, T c, T zero = T()) {
    QSeries s(order, std::move(zero));
    s.set(e, std::move(c));
    return s;
  }

  HalfInt order() const { return order_; }
  const T& zero() const { return zero_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest exponent carrying a nonzero coefficient. Throws on the zero series.
  HalfInt valuation() const {
    if (terms_.empty()) throw std::domain_error("valuation of the zero series");
    return terms_.begin()->first;
  }

  const T& coefficient(HalfInt k) const {
    if (k > order_)
      throw BeyondTruncation("coefficient q^" + k.to_string() + " requested beyond truncation order " +
                             order_.to_string());
    auto it = terms_.find(k);
    return it == terms_.end() ? zero_ : it->second;
  }

  /// Sets a coefficient; exponents past the order are dropped, zeros erased.
  void set(HalfInt k, T value) {
    if (k > order_) return;
    if (detail::coeff_is_zero(value)) {
      terms_.erase(k);
    } else {
      terms_.insert_or_assign(k, std::move(value));
    }
  }

  void add_to(HalfInt k, const T& value) {
    if (k > order_ || detail::coeff_is_zero(value)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, value);
      return;
    }
    it->second += value;
    if (detail::coeff_is_zero(it->second)) terms_.erase(it);
  }

  QSeries truncated(HalfInt order) const {
    QSeries r(std::min(order, order_), zero_);
    for (const auto& [k, c] : terms_)
      if (k <= r.order_) r.terms_.emplace(k, c);
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    QSeries<U> r(order_, f(zero_));
    for (const auto& [k, c] : terms_) r.set(k, f(c));
    return r;
  }

  QSeries& operator+=(const QSeries& o) {
    shrink_to(o.order_);
    for (const auto& [k, c] : o.terms_) add_to(k, c);
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    shrink_to(o.order_);
    for (const auto& [k, c] : o.terms_) add_to(k, -c);
    return *this;
  }
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator-(const QSeries& a) {
    QSeries r(a.order_, a.zero_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.order_, b.order_), a.zero_);
    for (const auto& [i, x] : a.terms_) {
      for (const auto& [j, y] : b.terms_) {
        if (i + j > r.order_) break;
        r.add_to(i + j, x * y);
      }
    }
    return r;
  }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  /// Multiplies every coefficient by a ring element.
  QSeries scaled(const T& k) const {
    QSeries r(order_, zero_);
    for (const auto& [e, c] : terms_) r.set(e, c * k);
    return r;
  }

  /// Multiplies by q^(e) (e may be negative); the order shifts along.
  QSeries shifted(HalfInt e) const {
    QSeries r(order_ + e, zero_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k + e, c);
    return r;
  }

  QSeries pow(int k) const {
    if (k < 0) throw std::invalid_argument("QSeries::pow needs a non-negative exponent");
    QSeries r = one(order_, zero_);
    QSeries b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k > 0) b *= b;
    }
    return r;
  }

  /// Multiplicative inverse. The lowest coefficient must be a unit of the
  /// coefficient ring. A series of valuation v known through order N yields
  /// an inverse known through N - 2v.
  QSeries inverse() const {
    if (terms_.empty()) throw NotAUnit("inverse of the zero series");
    HalfInt v = terms_.begin()->first;
    HalfInt out_order = order_ - v - v;
    T lead_inv = invert_unit(terms_.begin()->second);
    // Normalized series u = s / (lead * q^v) = 1 + (higher terms).
    std::vector<std::pair<HalfInt, T>> rest;
    for (const auto& [k, c] : terms_)
      if (k != v) rest.emplace_back(k - v, c * lead_inv);
    HalfInt rel_order = order_ - v;
    // Inverse of u by the recurrence w_k = -sum_{j>0} u_j w_{k-j}.
    std::map<HalfInt, T> known;
    known.emplace(HalfInt{}, one_like(zero_));
    for (int t = 1; HalfInt::from_twice(t) <= rel_order; ++t) {
      HalfInt k = HalfInt::from_twice(t);
      T acc = zero_;
      for (const auto& [j, uj] : rest) {
        if (j > k) break;
        auto it = known.find(k - j);
        if (it != known.end()) acc += uj * it->second;
      }
      if (!detail::coeff_is_zero(acc)) known.emplace(k, -acc);
    }
    QSeries r(out_order, zero_);
    for (auto& [k, c] : known) r.set(k - v, c * lead_inv);
    return r;
  }

  /// Image under tau -> tau + 1, i.e. q^(1/2) -> -q^(1/2).
  QSeries under_unit_shift() const {
    QSeries r(order_, zero_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, (k.twice() % 2 == 0) ? c : -c);
    return r;
  }

  /// Compares coefficients through the smaller of the two orders.
  bool agrees_with(const QSeries& o) const {
    HalfInt n = std::min(order_, o.order_);
    auto lhs = truncated(n), rhs = o.truncated(n);
    return lhs.terms_ == rhs.terms_;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  void shrink_to(HalfInt order) {
    if (order >= order_) return;
    order_ = order;
    terms_.erase(terms_.upper_bound(order_), terms_.end());
  }

  HalfInt order_{};
  T zero_{};
  Map terms_;
};

using RatSeries = QSeries<Rational>;

inline Rational times_rational(const Rational& a, const Rational& k) { return a * k; }

// Hooks that let a QSeries itself serve as a coefficient ring.
template <class T>
bool is_zero(const QSeries<T>& s) {
  return s.is_zero();
}
template <class T>
QSeries<T> one_like(const QSeries<T>& zero) {
  return QSeries<T>::one(zero.order(), zero.zero());
}
template <class T>
QSeries<T> invert_unit(const QSeries<T>& s) {
  return s.inverse();
}
template <class T>
QSeries<T> times_rational(const QSeries<T>& s, const Rational& k) {
  return s.map_coefficients([&](const T& c) { return times_rational(c, k); });
}

/// Evaluates a rational series at a numeric value of q^(1/2).
inline std::complex<double> evaluate(const RatSeries& s, std::complex<double> sqrt_q) {
  std::complex<double> sum = 0;
  for (const auto& [k, c] : s.terms()) sum += c.to_double() * std::pow(sqrt_q, k.twice());
  return sum;
}

}  // namespace tac
