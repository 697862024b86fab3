#include "tac/power_series.hpp"

namespace tac::series {

namespace {

Rational factorial(int p) {
  Rational r(1);
  for (int i = 2; i <= p; ++i) r *= Rational(i);
  return r;
}

}  // namespace

ScalarSeries exp(int n, const Rational& k) {
  ScalarSeries s(n, Rational());
  for (int p = 0; p <= n; ++p) s.at(p) = k.pow(p) / factorial(p);
  return s;
}

ScalarSeries sinh(int n, const Rational& k) {
  ScalarSeries s(n, Rational());
  for (int p = 1; p <= n; p += 2) s.at(p) = k.pow(p) / factorial(p);
  return s;
}

ScalarSeries cosh(int n, const Rational& k) {
  ScalarSeries s(n, Rational());
  for (int p = 0; p <= n; p += 2) s.at(p) = k.pow(p) / factorial(p);
  return s;
}

ScalarSeries half_over_sinh_half(int n) {
  // sinh(x/2)/(x/2) = sum (x/2)^(2m) / (2m+1)!
  ScalarSeries s(n, Rational());
  for (int p = 0; p <= n; p += 2) s.at(p) = Rational(1, 2).pow(p) / factorial(p + 1);
  return s.inverse();
}

ScalarSeries x_over_tanh_half(int n) { return (half_over_sinh_half(n) * cosh(n, Rational(1, 2))).scaled(2); }

ScalarSeries tanh_half(int n) { return sinh(n, Rational(1, 2)) * cosh(n, Rational(1, 2)).inverse(); }

}  // namespace tac::series
