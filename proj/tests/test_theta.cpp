#include "doctest.h"

#include <fstream>

#include "json.hpp"
#include "tac/theta.hpp"
#include "tac/theta_numeric.hpp"

using namespace tac;

namespace {

const HalfInt kOrder = HalfInt::integer(4);

nlohmann::json load_fixture() {
  std::ifstream in(std::string(TAC_FIXTURE_DIR) + "/modular_forms.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

void check_against(const RatSeries& s, const nlohmann::json& expected) {
  REQUIRE(s.order() == kOrder);
  for (int k = 0; k <= 8; ++k) {
    CAPTURE(k);
    CHECK(s.coefficient(HalfInt::from_twice(k)) == Rational::parse(expected.at(k).get<std::string>()));
  }
}

}  // namespace

TEST_CASE("theta constants and modular forms match golden values") {
  auto fx = load_fixture();
  check_against(theta_constant(ThetaKind::Theta1, kOrder), fx["theta1_normalized"]);
  check_against(theta_constant(ThetaKind::Theta2, kOrder), fx["theta2_normalized"]);
  check_against(theta_constant(ThetaKind::Theta3, kOrder), fx["theta3_normalized"]);
  for (int level = 1; level <= 3; ++level) {
    CAPTURE(level);
    ModularPair mp = modular_pair(level, kOrder);
    check_against(mp.delta, fx["delta" + std::to_string(level)]);
    check_against(mp.epsilon, fx["epsilon" + std::to_string(level)]);
  }
}

TEST_CASE("theta at the origin is rejected") {
  CHECK_THROWS_AS(theta_constant(ThetaKind::Theta, kOrder), std::invalid_argument);
  CHECK_THROWS_AS(normalized_ratio(ThetaKind::Theta1, RatioRole::RootKernel, 4, kOrder), std::invalid_argument);
}

TEST_CASE("jacobi identity residual vanishes") {
  CHECK(jacobi_identity_residual(kOrder).is_zero());
  CHECK(jacobi_identity_residual(HalfInt{}).is_zero());
  // Corrupting one factor must be detected.
  RatSeries bad = theta_prime_constant(kOrder);
  bad.add_to(HalfInt::integer(3), Rational(1));
  CHECK_FALSE((bad - theta_constant(ThetaKind::Theta1, kOrder) * theta_constant(ThetaKind::Theta2, kOrder) *
                         theta_constant(ThetaKind::Theta3, kOrder))
                  .is_zero());
}

TEST_CASE("normalized ratios reduce to hyperbolic functions at q^0") {
  const int prec = 6;
  auto q0 = [](const ThetaExpansion& e, int p) { return e.series[p].coefficient(HalfInt{}); };
  ThetaExpansion rk = normalized_ratio(ThetaKind::Theta, RatioRole::RootKernel, prec, kOrder);
  ThetaExpansion r1 = normalized_ratio(ThetaKind::Theta1, RatioRole::Ratio, prec, kOrder);
  ThetaExpansion ek = normalized_ratio(ThetaKind::Theta, RatioRole::EulerKernel, prec, kOrder);
  ScalarSeries hs = series::half_over_sinh_half(prec), ch = series::cosh(prec, Rational(1, 2)),
               sh = series::sinh(prec, Rational(1, 2));
  for (int p = 0; p <= prec; ++p) {
    CHECK(q0(rk, p) == hs[p]);
    CHECK(q0(r1, p) == ch[p]);
    CHECK(q0(ek, p) == sh[p]);
  }
}

TEST_CASE("root kernel times euler kernel is a/2") {
  const int prec = 7;
  QPowerSeries prod = normalized_ratio(ThetaKind::Theta, RatioRole::RootKernel, prec, kOrder).series *
                      normalized_ratio(ThetaKind::Theta, RatioRole::EulerKernel, prec, kOrder).series;
  for (int p = 0; p <= prec; ++p) {
    CAPTURE(p);
    if (p == 1) {
      CHECK(prod[p] == RatSeries::constant(kOrder, Rational(1, 2)));
    } else {
      CHECK(prod[p].is_zero());
    }
  }
}

TEST_CASE("parity of ratios and kernels") {
  const int prec = 7;
  for (ThetaKind k : {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
    ThetaExpansion r = normalized_ratio(k, RatioRole::Ratio, prec, kOrder);
    ThetaExpansion inv = normalized_ratio(k, RatioRole::InverseRatio, prec, kOrder);
    ThetaExpansion ker = log_derivative_kernel(k, prec, kOrder);
    for (int p = 1; p <= prec; p += 2) {
      CHECK(r.series[p].is_zero());
      CHECK(inv.series[p].is_zero());
    }
    for (int p = 0; p <= prec; p += 2) CHECK(ker.series[p].is_zero());
  }
}

TEST_CASE("log-derivative kernels at q^0") {
  ThetaExpansion k1 = log_derivative_kernel(ThetaKind::Theta1, 5, kOrder);
  ThetaExpansion k2 = log_derivative_kernel(ThetaKind::Theta2, 5, kOrder);
  // 1/a - 1/sinh a and 1/a - coth(a/2)/2
  CHECK(k1.series[1].coefficient(HalfInt{}) == Rational(1, 6));
  CHECK(k1.series[3].coefficient(HalfInt{}) == Rational(-7, 360));
  CHECK(k2.series[1].coefficient(HalfInt{}) == Rational(-1, 12));
  CHECK(k2.series[3].coefficient(HalfInt{}) == Rational(1, 720));
}

TEST_CASE("log-derivative kernel agrees with the series derivative") {
  const int prec = 6;
  QPowerSeries f = normalized_ratio(ThetaKind::Theta, RatioRole::RootKernel, prec + 1, kOrder).series *
                   normalized_ratio(ThetaKind::Theta3, RatioRole::Ratio, prec + 1, kOrder).series;
  QPowerSeries k = log_derivative_kernel(ThetaKind::Theta3, prec, kOrder).series;
  CHECK(k * f.truncated(prec) == f.derivative());
}

TEST_CASE("numeric theta basics") {
  const Complex tau(0, 2), v(0.3, 0.1);
  CHECK(std::abs(numeric_theta(0.0, tau, ThetaKind::Theta)) == doctest::Approx(0.0));
  CHECK(numerically_equal(numeric_theta(v, tau + 1.0, ThetaKind::Theta3), numeric_theta(v, tau, ThetaKind::Theta2), 1e-9));
  CHECK_THROWS_AS(numeric_theta(v, Complex(1, 0), ThetaKind::Theta), std::domain_error);
  CHECK_THROWS_AS(numeric_theta(v, Complex(1, -1), ThetaKind::Theta2), std::domain_error);
}

TEST_CASE("transformation laws hold numerically") {
  auto results = numeric_transformation_suite({Complex(0, 2), Complex(1, 1), Complex(0.5, 1.5)}, Complex(0.3, 0.1), 1e-9);
  CHECK(results.size() == 3 * 21);
  for (const auto& r : results) {
    CAPTURE(r.law);
    CAPTURE(r.error);
    CHECK(r.ok);
  }
}

TEST_CASE("formal expansions agree with numeric products") {
  for (const auto& r : formal_numeric_crosscheck(Complex(0, 2), kOrder, 1e-8)) {
    CAPTURE(r.law);
    CAPTURE(r.error);
    CHECK(r.ok);
  }
}
