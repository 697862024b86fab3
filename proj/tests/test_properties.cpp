#include <random>

#include "doctest.h"

#include "tac/modular_verify.hpp"

using namespace tac;

namespace {

constexpr int kInstances = 200;

struct Gen {
  std::mt19937 rng{20240611u};

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational rational() {
    int den = uniform(1, 6);
    return Rational(uniform(-9, 9), den);
  }

  GradedPoly poly(const RingConfig& cfg, int terms) {
    GradedPoly p(cfg);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      int budget = uniform(0, cfg.cutoff);
      for (int k = 0; k < budget; ++k) {
        int v = uniform(0, cfg.num_vars() - 1);
        if (cfg.use_cs_generator && v == cfg.var_s()) continue;
        ++m.exps[static_cast<std::size_t>(v)];
      }
      p.add_term(m, rational());
    }
    return p;
  }

  RatSeries series(HalfInt order, bool unit) {
    RatSeries s(order);
    for (int t = 0; t <= order.twice(); ++t)
      if (uniform(0, 2) > 0) s.set(HalfInt::from_twice(t), rational());
    if (unit) s.set(HalfInt{}, Rational(uniform(1, 5)) * (uniform(0, 1) ? 1 : -1));
    return s;
  }
};

struct Case {
  RingConfig cfg;
  int m0;
  int m;
  PolySeries p2;
};

const std::vector<Case>& even_cases() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> out;
    for (auto [d, n] : {std::pair{5, 0}, std::pair{5, 1}, std::pair{6, 1}, std::pair{6, 2}}) {
      EvenAnalysis a = analyze_even(d, n, HalfInt::integer(4));
      out.push_back({a.cfg, a.m0, a.m, a.p2});
    }
    return out;
  }();
  return cases;
}

}  // namespace

TEST_CASE("ring laws on random elements") {
  Gen g;
  RingConfig cfg = RingConfig::even(3);
  for (int i = 0; i < kInstances; ++i) {
    GradedPoly a = g.poly(cfg, 5), b = g.poly(cfg, 5), c = g.poly(cfg, 5);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * GradedPoly::constant(cfg, 1) == a);
  }
}

TEST_CASE("odd generator stays nilpotent on random elements") {
  Gen g;
  RingConfig cfg = RingConfig::odd(3);
  GradedPoly s = GradedPoly::variable(cfg, cfg.var_s());
  for (int i = 0; i < kInstances; ++i) {
    GradedPoly a = g.poly(cfg, 4) * s, b = g.poly(cfg, 4) * s;
    CHECK((a * b).is_zero());
  }
}

TEST_CASE("q-series laws on random elements") {
  Gen g;
  const HalfInt order = HalfInt::integer(3);
  for (int i = 0; i < kInstances; ++i) {
    RatSeries a = g.series(order, false), b = g.series(order, false), c = g.series(order, false);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a.under_unit_shift().under_unit_shift() == a);
    CHECK((a * b).under_unit_shift() == a.under_unit_shift() * b.under_unit_shift());
  }
}

TEST_CASE("truncation coherence") {
  Gen g;
  RingConfig cfg = RingConfig::even(3);
  RingConfig low = cfg.with_cutoff(2);
  const HalfInt order = HalfInt::integer(3);
  for (int i = 0; i < kInstances; ++i) {
    RatSeries a = g.series(order, false), b = g.series(order, false);
    HalfInt k = HalfInt::from_twice(g.uniform(0, order.twice()));
    CHECK((a * b).truncated(k) == a.truncated(k) * b.truncated(k));
    GradedPoly p = g.poly(cfg, 5), q = g.poly(cfg, 5);
    CHECK((p * q).recast(low) == p.recast(low) * q.recast(low));
  }
}

TEST_CASE("inversion round trip") {
  Gen g;
  RingConfig cfg = RingConfig::even(3);
  const HalfInt order = HalfInt::integer(3);
  for (int i = 0; i < kInstances; ++i) {
    RatSeries a = g.series(order, true);
    CHECK(a * a.inverse() == RatSeries::one(order));
    GradedPoly p = g.poly(cfg, 5);
    p.add_term(Monomial{}, Rational(g.uniform(1, 4)) - p.constant_term());
    CHECK(p * p.inverse() == GradedPoly::constant(cfg, 1));
    ScalarSeries f(4, Rational(0));
    for (int k = 0; k <= 4; ++k) f.at(k) = g.rational();
    f.at(0) = Rational(g.uniform(1, 3));
    CHECK(f * f.inverse() == ScalarSeries::one(4, Rational(0)));
  }
}

TEST_CASE("root-permutation symmetry") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    const Case& c = even_cases()[static_cast<std::size_t>(g.uniform(0, 3))];
    int r1 = g.uniform(1, c.cfg.roots), r2 = g.uniform(1, c.cfg.roots);
    HalfInt k = HalfInt::from_twice(g.uniform(0, 8));
    const GradedPoly& coeff = c.p2.coefficient(k);
    CHECK(coeff.swapped(c.cfg.var_a(r1), c.cfg.var_a(r2)) == coeff);
  }
}

TEST_CASE("parity in roots and Euler classes") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    const Case& c = even_cases()[static_cast<std::size_t>(g.uniform(0, 3))];
    HalfInt k = HalfInt::from_twice(g.uniform(0, 8));
    const GradedPoly& coeff = c.p2.coefficient(k);
    CHECK(coeff.reflected(c.cfg.var_a(g.uniform(1, c.cfg.roots))) == coeff);
    CHECK(coeff.reflected(c.cfg.var_c()) == coeff);
    GradedPoly flipped = coeff.reflected(c.cfg.var_c0());
    CHECK(flipped == (c.m0 % 2 == 0 ? coeff : -coeff));
  }
}

TEST_CASE("h_r are stable under order increase") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    const Case& c = even_cases()[static_cast<std::size_t>(g.uniform(0, 3))];
    int lo = minimum_half_order(c.m);
    HalfInt k1 = HalfInt::from_twice(g.uniform(lo, 8));
    HalfInt k2 = HalfInt::from_twice(g.uniform(k1.twice(), 8));
    Decomposition a = decompose(c.p2.truncated(k1), c.m), b = decompose(c.p2.truncated(k2), c.m);
    CHECK(a.h == b.h);
    CHECK(a.residual_ok);
  }
}
