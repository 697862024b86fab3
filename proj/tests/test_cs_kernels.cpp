#include "doctest.h"

#include "tac/cs_kernels.hpp"

using namespace tac;

namespace {

const HalfInt kOrder = HalfInt::integer(2);

}  // namespace

TEST_CASE("odd twist and weight") {
  CHECK(odd_twist_multiplicity(4, 1) == 2);
  CHECK(odd_twist_multiplicity(5, 0) == 1);
  CHECK(odd_weight(6, 1) == 4);
  CHECK(odd_weight(5, 0) == 4);
  CHECK(odd_weight(4, 1) == 2);
  CHECK_THROWS_AS(phi_form(CSKind::W, 4, 2, kOrder), std::invalid_argument);
  CHECK_THROWS_AS(phi_form(CSKind::L, 1, 0, kOrder), std::invalid_argument);
}

TEST_CASE("theta ratio prefactors equal the bundle expansion") {
  for (auto [d, n] : {std::pair{3, 0}, std::pair{4, 1}, std::pair{5, 0}}) {
    RingConfig cfg = RingConfig::odd(d);
    for (CSKind k : {CSKind::L, CSKind::W, CSKind::WPrimed}) {
      CAPTURE(d);
      CAPTURE(to_string(k));
      PhiForm a = phi_form(k, d, n, kOrder), b = phi_form_direct(k, d, n, kOrder);
      CHECK(a.sqrt2 == b.sqrt2);
      CHECK(a.form.expand(cfg) == b.form.expand(cfg));
    }
  }
}

TEST_CASE("W' is W under tau -> tau + 1") {
  for (auto [d, n] : {std::pair{4, 1}, std::pair{5, 0}}) {
    PolySeries w = cs_form(CSKind::W, d, n, kOrder);
    CHECK(cs_form(CSKind::WPrimed, d, n, kOrder) == w.under_unit_shift());
  }
}

TEST_CASE("transgressed forms are linear in the odd generator") {
  RingConfig cfg = RingConfig::odd(4);
  PolySeries l = cs_form(CSKind::L, 4, 1, kOrder);
  for (const auto& [k, c] : l.terms())
    for (const auto& [m, v] : c.terms()) CHECK(m.exps[static_cast<std::size_t>(cfg.var_s())] == 1);
}

TEST_CASE("weight two W at q^0 by hand") {
  // A-hat sinh(c0/2)^2 (-y/12) s in degree 4 is -c0^2 y s / 48.
  RingConfig cfg = RingConfig::odd(4);
  GradedPoly w0 = top_component(cs_form(CSKind::W, 4, 1, kOrder)).coefficient(HalfInt{});
  GradedPoly expected = (GradedPoly::variable(cfg, cfg.var_c0()).pow(2) * GradedPoly::variable(cfg, cfg.var_y()) *
                         GradedPoly::variable(cfg, cfg.var_s()))
                            .scaled(Rational(-1, 48));
  CHECK(w0 == expected);
}

TEST_CASE("kernel scale of the L family") {
  CHECK(cs_kernel(CSKind::L, 4, 1, kOrder).scale == Rational(2));
  CHECK(cs_kernel(CSKind::W, 4, 1, kOrder).scale == Rational(1));
  CHECK(theta_of(CSKind::WPrimed) == ThetaKind::Theta3);
}
