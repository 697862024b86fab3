#include "tac/rational.hpp"

#include <cctype>

namespace tac {

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("not a rational: " + s);
    return Rational(mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational: " + s);
  mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
  if (d == 0) throw DivisionByZero();
  return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  value_ /= o.value_;
  return *this;
}

Rational Rational::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  mpq_class r(1), b(value_);
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return Rational(r);
}

Rational pow2(int k) { return Rational(2).pow(k); }

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace tac
