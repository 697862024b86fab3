#include "tac/theta_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tac {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

void require_upper_half(Complex tau, int terms) {
  if (!(tau.imag() > 0)) throw std::domain_error("tau must lie in the upper half plane");
  if (terms < 1) throw std::domain_error("need at least one product term");
}

struct Shape {
  int sign;   // +1 for (1 + w t), -1 for (1 - w t)
  bool half;  // t = q^(j-1/2) instead of q^j
  bool sine;  // prefactor 2 q^(1/8) sin(pi v)
  bool cosine;
};

Shape shape_of(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::Theta: return {-1, false, true, false};
    case ThetaKind::Theta1: return {1, false, false, true};
    case ThetaKind::Theta2: return {-1, true, false, false};
    case ThetaKind::Theta3: return {1, true, false, false};
  }
  throw std::invalid_argument("unknown theta kind");
}

// Returns the value and the v-derivative of the product together.
std::pair<Complex, Complex> evaluate_with_derivative(Complex v, Complex tau, ThetaKind kind, int terms) {
  require_upper_half(tau, terms);
  Shape sh = shape_of(kind);
  Complex q = std::exp(2.0 * kPi * kI * tau);
  Complex rq = std::exp(kPi * kI * tau);
  Complex w = std::exp(2.0 * kPi * kI * v);
  Complex winv = 1.0 / w;
  double s = sh.sign;
  Complex prod = 1.0, logd = 0.0;
  Complex qj = 1.0;
  for (int j = 1; j <= terms; ++j) {
    qj *= q;
    Complex t = sh.half ? qj / rq : qj;
    Complex g1 = 1.0 + s * w * t, g2 = 1.0 + s * winv * t;
    prod *= (1.0 - qj) * g1 * g2;
    logd += 2.0 * kPi * kI * s * (w * t / g1 - winv * t / g2);
  }
  Complex f0 = 1.0, f0d = 0.0;
  if (sh.sine || sh.cosine) {
    Complex pre = 2.0 * std::exp(kPi * kI * tau / 4.0);
    if (sh.sine) {
      f0 = pre * std::sin(kPi * v);
      f0d = pre * kPi * std::cos(kPi * v);
    } else {
      f0 = pre * std::cos(kPi * v);
      f0d = -pre * kPi * std::sin(kPi * v);
    }
  }
  return {f0 * prod, f0d * prod + f0 * prod * logd};
}

Complex theta_const(ThetaKind k, Complex tau, int terms) { return numeric_theta(0.0, tau, k, terms); }

NumericComparison compare(std::string law, Complex tau, Complex lhs, Complex rhs, double tol) {
  NumericComparison c;
  c.law = std::move(law);
  c.tau = tau;
  c.lhs = lhs;
  c.rhs = rhs;
  c.error = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  c.ok = c.error <= tol;
  return c;
}

Complex evaluate_power_series(const QPowerSeries& f, Complex a, Complex half_q) {
  Complex sum = 0, ap = 1;
  for (int p = 0; p <= f.precision(); ++p) {
    sum += evaluate(f[p], half_q) * ap;
    ap *= a;
  }
  return sum;
}

}  // namespace

Complex numeric_theta(Complex v, Complex tau, ThetaKind kind, int terms) {
  return evaluate_with_derivative(v, tau, kind, terms).first;
}

Complex numeric_theta_derivative(Complex v, Complex tau, ThetaKind kind, int terms) {
  return evaluate_with_derivative(v, tau, kind, terms).second;
}

Complex numeric_delta(int level, Complex tau, int terms) {
  Complex t1 = std::pow(theta_const(ThetaKind::Theta1, tau, terms), 4);
  Complex t2 = std::pow(theta_const(ThetaKind::Theta2, tau, terms), 4);
  Complex t3 = std::pow(theta_const(ThetaKind::Theta3, tau, terms), 4);
  switch (level) {
    case 1: return (t2 + t3) / 8.0;
    case 2: return -(t1 + t3) / 8.0;
    case 3: return (t1 - t2) / 8.0;
  }
  throw std::invalid_argument("modular pair level must be 1, 2 or 3");
}

Complex numeric_epsilon(int level, Complex tau, int terms) {
  Complex t1 = std::pow(theta_const(ThetaKind::Theta1, tau, terms), 4);
  Complex t2 = std::pow(theta_const(ThetaKind::Theta2, tau, terms), 4);
  Complex t3 = std::pow(theta_const(ThetaKind::Theta3, tau, terms), 4);
  switch (level) {
    case 1: return t2 * t3 / 16.0;
    case 2: return t1 * t3 / 16.0;
    case 3: return -t1 * t2 / 16.0;
  }
  throw std::invalid_argument("modular pair level must be 1, 2 or 3");
}

Complex sqrt_q(Complex tau) { return std::exp(kPi * kI * tau); }

bool numerically_equal(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<NumericComparison> numeric_transformation_suite(const std::vector<Complex>& taus, Complex v,
                                                            double tol, int terms) {
  std::vector<NumericComparison> out;
  using K = ThetaKind;
  const Complex eighth = std::exp(kPi * kI / 4.0);
  auto th = [terms](K k, Complex x, Complex t) { return numeric_theta(x, t, k, terms); };
  auto dth = [terms](K k, Complex x, Complex t) { return numeric_theta_derivative(x, t, k, terms); };

  for (Complex tau : taus) {
    const Complex s_tau = -1.0 / tau;
    const Complex root = std::sqrt(tau / kI);
    const Complex gauss = std::exp(kPi * kI * tau * v * v);
    const Complex tv = tau * v;

    // Shift tau -> tau + 1.
    out.push_back(compare("theta T", tau, th(K::Theta, v, tau + 1.0), eighth * th(K::Theta, v, tau), tol));
    out.push_back(compare("theta1 T", tau, th(K::Theta1, v, tau + 1.0), eighth * th(K::Theta1, v, tau), tol));
    out.push_back(compare("theta2 T", tau, th(K::Theta2, v, tau + 1.0), th(K::Theta3, v, tau), tol));
    out.push_back(compare("theta3 T", tau, th(K::Theta3, v, tau + 1.0), th(K::Theta2, v, tau), tol));

    // Inversion tau -> -1/tau; the images of theta1 and theta2 trade places.
    struct Inv {
      K from, to;
      Complex extra;
      const char* name;
    };
    const Inv inversions[] = {{K::Theta, K::Theta, 1.0 / kI, "theta S"},
                              {K::Theta1, K::Theta2, 1.0, "theta1 S"},
                              {K::Theta2, K::Theta1, 1.0, "theta2 S"},
                              {K::Theta3, K::Theta3, 1.0, "theta3 S"}};
    for (const Inv& inv : inversions)
      out.push_back(compare(inv.name, tau, th(inv.from, v, s_tau), inv.extra * root * gauss * th(inv.to, tv, tau), tol));

    // Derivatives.
    out.push_back(compare("theta' T", tau, dth(K::Theta, v, tau + 1.0), eighth * dth(K::Theta, v, tau), tol));
    out.push_back(compare("theta1' T", tau, dth(K::Theta1, v, tau + 1.0), eighth * dth(K::Theta1, v, tau), tol));
    out.push_back(compare("theta2' T", tau, dth(K::Theta2, v, tau + 1.0), dth(K::Theta3, v, tau), tol));
    out.push_back(compare("theta3' T", tau, dth(K::Theta3, v, tau + 1.0), dth(K::Theta2, v, tau), tol));
    for (const Inv& inv : inversions) {
      Complex rhs = inv.extra * root * gauss *
                    (2.0 * kPi * kI * tau * v * th(inv.to, tv, tau) + tau * dth(inv.to, tv, tau));
      out.push_back(compare(std::string(inv.name).insert(std::string(inv.name).find(' '), "'"), tau,
                            dth(inv.from, v, s_tau), rhs, tol));
    }
    out.push_back(compare("theta'(0) S", tau, dth(K::Theta, 0.0, s_tau),
                          (1.0 / kI) * root * tau * dth(K::Theta, 0.0, tau), tol));

    // Weight 2 and 4 forms.
    out.push_back(compare("delta2 S", tau, numeric_delta(2, s_tau, terms), tau * tau * numeric_delta(1, tau, terms), tol));
    out.push_back(compare("epsilon2 S", tau, numeric_epsilon(2, s_tau, terms),
                          std::pow(tau, 4) * numeric_epsilon(1, tau, terms), tol));
    out.push_back(compare("delta2 T", tau, numeric_delta(2, tau + 1.0, terms), numeric_delta(3, tau, terms), tol));
    out.push_back(compare("epsilon2 T", tau, numeric_epsilon(2, tau + 1.0, terms), numeric_epsilon(3, tau, terms), tol));
  }
  return out;
}

std::vector<NumericComparison> formal_numeric_crosscheck(Complex tau, HalfInt order, double tol, int terms) {
  std::vector<NumericComparison> out;
  using K = ThetaKind;
  const Complex hq = sqrt_q(tau);
  const Complex pre = 2.0 * std::exp(kPi * kI * tau / 4.0);

  out.push_back(compare("theta1 constant", tau, pre * evaluate(theta_constant(K::Theta1, order), hq),
                        numeric_theta(0.0, tau, K::Theta1, terms), tol));
  out.push_back(compare("theta2 constant", tau, evaluate(theta_constant(K::Theta2, order), hq),
                        numeric_theta(0.0, tau, K::Theta2, terms), tol));
  out.push_back(compare("theta3 constant", tau, evaluate(theta_constant(K::Theta3, order), hq),
                        numeric_theta(0.0, tau, K::Theta3, terms), tol));
  out.push_back(compare("theta'(0)", tau, kPi * pre * evaluate(theta_prime_constant(order), hq),
                        numeric_theta_derivative(0.0, tau, K::Theta, terms), tol));
  for (int level = 1; level <= 3; ++level) {
    ModularPair mp = modular_pair(level, order);
    out.push_back(compare("delta" + std::to_string(level), tau, evaluate(mp.delta, hq), numeric_delta(level, tau, terms), tol));
    out.push_back(compare("epsilon" + std::to_string(level), tau, evaluate(mp.epsilon, hq),
                          numeric_epsilon(level, tau, terms), tol));
  }

  // Normalized ratios at a small real x, where a = 2 pi i x.
  const double x = 0.01;
  const Complex a = 2.0 * kPi * kI * x;
  const int precision = 10;
  auto formal = [&](K k, RatioRole role) { return evaluate_power_series(normalized_ratio(k, role, precision, order).series, a, hq); };
  out.push_back(compare("root-kernel", tau, formal(K::Theta, RatioRole::RootKernel),
                        x * numeric_theta_derivative(0.0, tau, K::Theta, terms) / numeric_theta(x, tau, K::Theta, terms), tol));
  out.push_back(compare("euler-kernel", tau, formal(K::Theta, RatioRole::EulerKernel),
                        kPi * kI * numeric_theta(x, tau, K::Theta, terms) / numeric_theta_derivative(0.0, tau, K::Theta, terms),
                        tol));
  for (K k : {K::Theta1, K::Theta2, K::Theta3})
    out.push_back(compare(to_string(k) + " ratio", tau, formal(k, RatioRole::Ratio),
                          numeric_theta(x, tau, k, terms) / numeric_theta(0.0, tau, k, terms), tol));
  return out;
}

}  // namespace tac
