#include "doctest.h"

#include "tac/modular_verify.hpp"

using namespace tac;

namespace {

const HalfInt kOrder = HalfInt::integer(4);

PolySeries lift_rational(const RatSeries& s, const RingConfig& cfg) {
  PolySeries out(s.order(), GradedPoly(cfg));
  for (const auto& [k, c] : s.terms()) out.set(k, GradedPoly::constant(cfg, c));
  return out;
}

Status status_of(const VerificationReport& r, const std::string& id) {
  for (const CheckResult& c : r.checks())
    if (c.check_id == id) return c.status;
  FAIL("missing check " << id);
  return Status::Fail;
}

}  // namespace

TEST_CASE("decomposing basis elements") {
  RingConfig cfg = RingConfig::even(1);
  Decomposition a = decompose(lift_rational(basis_element(2, 2, 0, kOrder), cfg), 2);
  REQUIRE(a.h.size() == 2);
  CHECK(a.residual_ok);
  CHECK(a.h[0] == GradedPoly::constant(cfg, 1));
  CHECK(a.h[1].is_zero());
  Decomposition b = decompose(lift_rational(modular_pair(2, kOrder).epsilon, cfg), 2);
  CHECK(b.residual_ok);
  CHECK(b.h[0].is_zero());
  CHECK(b.h[1] == GradedPoly::constant(cfg, 1));
}

TEST_CASE("non-modular input leaves a residual") {
  RingConfig cfg = RingConfig::even(1);
  PolySeries p = lift_rational(basis_element(2, 2, 0, kOrder), cfg);
  p.add_to(HalfInt::integer(3), GradedPoly::constant(cfg, 1));
  Decomposition d = decompose(p, 2);
  CHECK_FALSE(d.residual_ok);
  REQUIRE(d.first_mismatch.has_value());
  CHECK(*d.first_mismatch == HalfInt::integer(3));
}

TEST_CASE("solve window guard") {
  RingConfig cfg = RingConfig::even(1);
  CHECK(minimum_half_order(1) == 2);
  CHECK(minimum_half_order(3) == 4);
  PolySeries p = lift_rational(basis_element(2, 2, 0, HalfInt::from_twice(3)), cfg);
  CHECK_THROWS_AS(decompose(p, 2), BeyondTruncation);
}

TEST_CASE("level-1 constant weights") {
  // 8 delta1 = 2 + ..., epsilon1 = 1/16 + ...
  CHECK(gamma0_constant_weight(3, 0, 6) == Rational(512));
  CHECK(gamma0_constant_weight(3, 1, 6) == Rational(8));
  CHECK(gamma0_constant_weight(2, 1, 6) == Rational(4));
}

TEST_CASE("prefactor exponents and basis degrees") {
  CHECK(prefactor_exponent(false, 6, 1) == 8);
  CHECK(prefactor_exponent(false, 6, 2) == 7);
  CHECK(prefactor_exponent(false, 5, 0) == 7);
  CHECK(prefactor_exponent(false, 5, 1) == 6);
  CHECK(prefactor_exponent(true, 6, 1) == 9);
  CHECK(prefactor_exponent(true, 5, 1) == 8);
  CHECK(basis_degree(false, 6, 0) == 3);
  CHECK(basis_degree(false, 6, 2) == 1);
  CHECK(basis_degree(true, 5, 0) == 3);
}

TEST_CASE("exact linear fits") {
  RingConfig cfg = RingConfig::even(2);
  GradedPoly a = GradedPoly::variable(cfg, cfg.var_c());
  GradedPoly b = GradedPoly::variable(cfg, cfg.var_c0());
  LinearFit f = fit_combination(a.scaled(3) - b.scaled(Rational(1, 2)), {a, b});
  CHECK(f.unique);
  CHECK(f.coefficients == std::vector<Rational>{Rational(3), Rational(-1, 2)});
  CHECK_FALSE(fit_combination(a * b, {a, b}).solvable);
  LinearFit g = fit_combination(a, {a, a.scaled(2)});
  CHECK(g.solvable);
  CHECK_FALSE(g.unique);
  CHECK(g.rank == 1);
}

TEST_CASE("h0 sign law for d = 6, n = 1") {
  EvenAnalysis a = analyze_even(6, 1, kOrder);
  CHECK(a.m == 2);
  RingConfig cfg = a.cfg;
  GradedPoly x = a_hat(cfg) * apply_series(series::cosh(6, Rational(1, 2)), GradedPoly::variable(cfg, cfg.var_c())) *
                 apply_series(series::sinh(6, Rational(1, 2)), GradedPoly::variable(cfg, cfg.var_c0())).pow(2);
  CHECK(a.dec.h[0] == x.top_component());
  REQUIRE(a.tuple.has_value());
  CHECK(a.tuple->unique);
  CHECK(a.tuple->as_vector() == std::vector<Rational>{112, -4, 8, 12});
}

TEST_CASE("single-term cases") {
  for (auto [d, n, c] : {std::tuple{6, 2, -128}, std::tuple{5, 1, -64}}) {
    EvenAnalysis a = analyze_even(d, n, kOrder);
    CHECK(a.m == 1);
    CHECK(a.lhs_constant == a.dec.h[0].scaled(Rational(c) * Rational(-1)));
  }
}

TEST_CASE("even verifier statuses") {
  CHECK(verify_even(5, 0, kOrder).status == Status::Pass);
  CHECK(verify_even(6, 1, kOrder, {false, false}).status == Status::Pass);
  CHECK(verify_even(6, 1, kOrder, {true, true}).status == Status::Pass);
  CHECK_THROWS_AS(verify_even(4, 2, kOrder), std::invalid_argument);
  CHECK_THROWS_AS(verify_even(6, 1, HalfInt::integer(1)), BeyondTruncation);
}

TEST_CASE("odd weight-two case") {
  OddAnalysis a = analyze_odd(4, 1, kOrder);
  REQUIRE(a.l_over_w.has_value());
  CHECK(*a.l_over_w == Rational(16));
  RingConfig cfg = a.cfg;
  GradedPoly z0 = (GradedPoly::variable(cfg, cfg.var_c0()).pow(2) * GradedPoly::variable(cfg, cfg.var_y()) *
                   GradedPoly::variable(cfg, cfg.var_s()))
                      .scaled(Rational(1, 48));
  CHECK(a.dec.h[0] == z0);
  CHECK(verify_odd(4, 1, kOrder).status == Status::Pass);
}

TEST_CASE("odd weight-four cases") {
  for (auto [d, n, pre] : {std::tuple{6, 1, 4}, std::tuple{5, 0, 2}}) {
    OddAnalysis a = analyze_odd(d, n, kOrder);
    CHECK(a.weights[1] == Rational(pre));
    CHECK(a.weights[0] == Rational(64 * pre));
    CHECK(a.z0_is_kernel_term);
    CHECK(a.sine_kernel_is_full_argument);
    CHECK(verify_odd(d, n, kOrder).status == Status::Pass);
  }
  CHECK_THROWS_AS(analyze_odd(4, 2, kOrder), std::invalid_argument);
}

TEST_CASE("corollaries") {
  CHECK(verify_corollary("3.5", kOrder).status == Status::Pass);
  CHECK(verify_corollary("3.4", kOrder).status == Status::Pass);
  CHECK(verify_corollary("3.9", kOrder).status == Status::Pass);
  CHECK(verify_corollary("3.10", kOrder).status == Status::PaperDiscrepancy);
  CHECK(verify_corollary("4.19", kOrder).status == Status::PaperDiscrepancy);
  CHECK_THROWS_AS(verify_corollary("9.9", kOrder), std::out_of_range);
}

TEST_CASE("run_all at a small order skips the wide windows") {
  RunAllOptions opts;
  opts.order = HalfInt::integer(1);
  opts.parallel = false;
  VerificationReport r = run_all(opts);
  CHECK_FALSE(r.any_failed());
  CHECK(status_of(r, "even/d6n2") == Status::Pass);
  CHECK(status_of(r, "even/d6n0") == Status::Skipped);
  CHECK(status_of(r, "odd/d4n1") == Status::Pass);
  CHECK(status_of(r, "odd/d6n1") == Status::Skipped);
}

TEST_CASE("run_all is deterministic across scheduling") {
  RunAllOptions opts;
  opts.order = HalfInt::from_twice(4);
  nlohmann::ordered_json cfg = {{"order", 4}};
  opts.parallel = true;
  std::string a = run_all(opts).to_json(cfg).dump();
  opts.parallel = false;
  std::string b = run_all(opts).to_json(cfg).dump();
  CHECK(a == b);
}
