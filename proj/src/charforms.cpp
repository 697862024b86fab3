#include "tac/charforms.hpp"

#include <stdexcept>

namespace tac {

namespace {

QPowerSeries scalar_power_series(const ScalarSeries& f, HalfInt order) { return lift(f, order); }

QPowerSeries ratio(ThetaKind kind, RatioRole role, int precision, HalfInt order) {
  return normalized_ratio(kind, role, precision, order).series;
}

// t = sign * q^e as a rational series.
RatSeries t_series(int sign, HalfInt e, HalfInt order) { return RatSeries::monomial(order, e, Rational(sign)); }

// (1 + t e^x)(1 + t e^-x) / (1 + t)^2 built from exponential series.
QPowerSeries lambda_line_pair(int sign, HalfInt e, int precision, HalfInt order) {
  RatSeries t = t_series(sign, e, order);
  QPowerSeries ex = scalar_power_series(series::exp(precision), order);
  QPowerSeries up = QPowerSeries::one(precision, RatSeries(order)) + ex.scaled(t);
  QPowerSeries down = QPowerSeries::one(precision, RatSeries(order)) + ex.reflected().scaled(t);
  RatSeries base = RatSeries::one(order) + t;
  return (up * down).scaled((base * base).inverse());
}

template <class F>
void for_each_slot_exponent(bool half, HalfInt order, F&& f) {
  for (int k = 1;; ++k) {
    HalfInt e = half ? HalfInt::from_twice(2 * k - 1) : HalfInt::integer(k);
    if (e > order) break;
    f(e);
  }
}

// Coefficients of the reduced atoms (T~, xi0~, xi~) in each slot argument.
struct ReducedSlot {
  bool symmetric;
  int sign;
  bool half;
  int tangent, xi0, xi;
};

std::vector<ReducedSlot> reduced_slots(const ThetaBundleSpec& spec) {
  const bool primed = spec.variant == ThetaVariant::Theta1Primed || spec.variant == ThetaVariant::Theta2Primed;
  const int e1_xi = primed ? 1 : 0;
  const int x = (spec.with_xi && spec.variant != ThetaVariant::Theta3) ? 1 : 0;
  const int m0 = spec.m0;
  std::vector<ReducedSlot> slots;
  slots.push_back({true, 1, false, 1, -m0, e1_xi});
  switch (spec.variant) {
    case ThetaVariant::Theta1:
    case ThetaVariant::Theta1Primed:
      slots.push_back({false, 1, false, 1, -m0, e1_xi - 2 * x});
      slots.push_back({false, 1, true, 0, 0, x});
      slots.push_back({false, -1, true, 0, 0, x});
      break;
    case ThetaVariant::Theta2:
    case ThetaVariant::Theta2Primed:
      slots.push_back({false, -1, true, 1, -m0, e1_xi - 2 * x});
      slots.push_back({false, 1, true, 0, 0, x});
      slots.push_back({false, 1, false, 0, 0, x});
      break;
    case ThetaVariant::Theta3:
      slots.push_back({false, 1, true, 1, -m0, 0});
      break;
  }
  return slots;
}

QPowerSeries raise(const QPowerSeries& f, int k) {
  if (k == 0) return QPowerSeries::one(f.precision(), f.zero());
  return f.pow(k);
}

PolySeries raise(const PolySeries& f, int k) { return k >= 0 ? f.pow(k) : f.inverse().pow(-k); }

// The line-pair factor (1 + t e^v)(1 + t e^-v) in the ring.
PolySeries ring_line_pair(int var, int sign, HalfInt e, const RingConfig& cfg, HalfInt order) {
  GradedPoly zero(cfg);
  GradedPoly v = GradedPoly::variable(cfg, var);
  auto line = [&](const GradedPoly& arg) {
    PolySeries s = PolySeries::one(order, zero);
    s.add_to(e, apply_series(series::exp(cfg.cutoff), arg).scaled(Rational(sign)));
    return s;
  };
  return line(v) * line(-v);
}

PolySeries ring_one_plus_t(int sign, HalfInt e, const RingConfig& cfg, HalfInt order) {
  PolySeries s = PolySeries::one(order, GradedPoly(cfg));
  s.add_to(e, GradedPoly::constant(cfg, Rational(sign)));
  return s;
}

}  // namespace

int zero_roots(const RingConfig& cfg) { return cfg.use_cs_generator ? 1 : 0; }

int VirtualBundle::rank(const RingConfig& cfg) const {
  return tangent * (2 * cfg.roots + zero_roots(cfg)) + 2 * xi0 + 2 * xi + trivial;
}

VirtualBundle VirtualBundle::reduced(const RingConfig& cfg) const {
  VirtualBundle r = *this;
  r.trivial -= rank(cfg);
  return r;
}

GradedPoly ch(const VirtualBundle& b, const RingConfig& cfg) {
  auto pair = [&](int var) {
    GradedPoly v = GradedPoly::variable(cfg, var);
    return apply_series(series::exp(cfg.cutoff), v) + apply_series(series::exp(cfg.cutoff), -v);
  };
  GradedPoly out = GradedPoly::constant(cfg, Rational(b.trivial + b.tangent * zero_roots(cfg)));
  for (int j = 1; j <= cfg.roots; ++j) out += pair(cfg.var_a(j)).scaled(Rational(b.tangent));
  out += pair(cfg.var_c0()).scaled(Rational(b.xi0));
  out += pair(cfg.var_c()).scaled(Rational(b.xi));
  return out;
}

PolySeries ch_lambda(const VirtualBundle& b, int sign, HalfInt exponent, const RingConfig& cfg, HalfInt order) {
  if (exponent <= HalfInt{}) throw std::invalid_argument("lambda_t needs t = +-q^e with e > 0");
  PolySeries out = PolySeries::one(order, GradedPoly(cfg));
  if (b.tangent != 0) {
    for (int j = 1; j <= cfg.roots; ++j)
      out *= raise(ring_line_pair(cfg.var_a(j), sign, exponent, cfg, order), b.tangent);
  }
  if (b.xi0 != 0) out *= raise(ring_line_pair(cfg.var_c0(), sign, exponent, cfg, order), b.xi0);
  if (b.xi != 0) out *= raise(ring_line_pair(cfg.var_c(), sign, exponent, cfg, order), b.xi);
  int lines = b.trivial + b.tangent * zero_roots(cfg);
  if (lines != 0) out *= raise(ring_one_plus_t(sign, exponent, cfg, order), lines);
  return out;
}

PolySeries ch_symmetric(const VirtualBundle& b, int sign, HalfInt exponent, const RingConfig& cfg, HalfInt order) {
  return ch_lambda(b, -sign, exponent, cfg, order).inverse();
}

std::string to_string(ThetaVariant v) {
  switch (v) {
    case ThetaVariant::Theta1: return "Theta1";
    case ThetaVariant::Theta2: return "Theta2";
    case ThetaVariant::Theta3: return "Theta3";
    case ThetaVariant::Theta1Primed: return "Theta1'";
    case ThetaVariant::Theta2Primed: return "Theta2'";
  }
  return "?";
}

std::vector<BundleSlot> theta_bundle_slots(const ThetaBundleSpec& spec, const RingConfig& cfg) {
  std::vector<BundleSlot> out;
  for (const ReducedSlot& r : reduced_slots(spec)) {
    VirtualBundle arg = VirtualBundle::tangent_bundle().reduced(cfg).times(r.tangent) +
                        VirtualBundle::xi0_bundle().reduced(cfg).times(r.xi0) +
                        VirtualBundle::xi_bundle().reduced(cfg).times(r.xi);
    out.push_back({r.symmetric, r.sign, r.half, arg});
  }
  return out;
}

VirtualBundle first_half_coefficient(const ThetaBundleSpec& spec, const RingConfig& cfg) {
  VirtualBundle out;
  for (const BundleSlot& slot : theta_bundle_slots(spec, cfg))
    if (slot.half) out = out + slot.arg.times(slot.sign);
  return out;
}

PolySeries ch_theta_bundle(const ThetaBundleSpec& spec, const RingConfig& cfg, HalfInt order) {
  PolySeries out = PolySeries::one(order, GradedPoly(cfg));
  for (const BundleSlot& slot : theta_bundle_slots(spec, cfg)) {
    if (slot.arg == VirtualBundle{}) continue;
    for_each_slot_exponent(slot.half, order, [&](HalfInt e) {
      out *= slot.symmetric ? ch_symmetric(slot.arg, slot.sign, e, cfg, order)
                            : ch_lambda(slot.arg, slot.sign, e, cfg, order);
    });
  }
  return out;
}

SeparatedForm SeparatedForm::one(int precision, HalfInt order) {
  SeparatedForm f;
  f.scalar = RatSeries::one(order);
  f.root = QPowerSeries::one(precision, RatSeries(order));
  f.euler0 = f.root;
  f.euler = f.root;
  return f;
}

int SeparatedForm::precision() const {
  int p = std::min({root.precision(), euler0.precision(), euler.precision()});
  if (trace) p = std::min(p, trace->precision());
  return p;
}

HalfInt SeparatedForm::order() const { return scalar.order(); }

SeparatedForm SeparatedForm::operator*(const SeparatedForm& o) const {
  if (trace && o.trace) throw std::logic_error("product of two trace factors vanishes identically");
  SeparatedForm r;
  r.scalar = scalar * o.scalar;
  r.root = root * o.root;
  r.euler0 = euler0 * o.euler0;
  r.euler = euler * o.euler;
  r.trace = trace ? trace : o.trace;
  return r;
}

SeparatedForm SeparatedForm::scaled(const Rational& k) const {
  SeparatedForm r = *this;
  r.scalar = times_rational(scalar, k);
  return r;
}

PolySeries SeparatedForm::expand(const RingConfig& cfg) const {
  PolySeries out = symmetric_product(root, cfg);
  out *= embed(euler0, cfg, cfg.var_c0());
  out *= embed(euler, cfg, cfg.var_c());
  if (trace) {
    if (!cfg.use_cs_generator) throw std::logic_error("trace factor needs the odd generators");
    out *= embed(*trace, cfg, cfg.var_y());
    out *= as_series(GradedPoly::variable(cfg, cfg.var_s()), out.order());
  }
  GradedPoly zero(cfg);
  out *= scalar.map_coefficients([&](const Rational& r) { return GradedPoly::constant(cfg, r); });
  return out;
}

SeparatedForm theta_bundle_factors(const ThetaBundleSpec& spec, int precision, HalfInt order) {
  SeparatedForm out = SeparatedForm::one(precision, order);
  for (const ReducedSlot& r : reduced_slots(spec)) {
    if (r.tangent == 0 && r.xi0 == 0 && r.xi == 0) continue;
    for_each_slot_exponent(r.half, order, [&](HalfInt e) {
      // S_t(E) = 1 / lambda_{-t}(E)
      QPowerSeries f = r.symmetric ? lambda_line_pair(-r.sign, e, precision, order).inverse()
                                   : lambda_line_pair(r.sign, e, precision, order);
      if (r.tangent) out.root *= raise(f, r.tangent);
      if (r.xi0) out.euler0 *= raise(f, r.xi0);
      if (r.xi) out.euler *= raise(f, r.xi);
    });
  }
  return out;
}

GradedPoly a_hat(const RingConfig& cfg) {
  GradedPoly out = GradedPoly::constant(cfg, 1);
  for (int j = 1; j <= cfg.roots; ++j)
    out *= apply_series(series::half_over_sinh_half(cfg.cutoff), GradedPoly::variable(cfg, cfg.var_a(j)));
  return out;
}

GradedPoly l_hat(const RingConfig& cfg) {
  GradedPoly out = GradedPoly::constant(cfg, 1);
  for (int j = 1; j <= cfg.roots; ++j)
    out *= apply_series(series::x_over_tanh_half(cfg.cutoff), GradedPoly::variable(cfg, cfg.var_a(j)));
  return out;
}

std::string to_string(QFormKind k) {
  switch (k) {
    case QFormKind::Q1: return "Q1";
    case QFormKind::Q2: return "Q2";
    case QFormKind::Q1Primed: return "Q1'";
    case QFormKind::Q2Primed: return "Q2'";
  }
  return "?";
}

int twist_multiplicity(QFormKind kind, int d, int n) {
  const bool even = d % 2 == 0;
  if (kind == QFormKind::Q1 || kind == QFormKind::Q2) return 2 * n + (even ? 0 : 1);
  return 2 * n + (even ? 1 : 0);
}

void require_hypothesis(QFormKind kind, int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("need d >= 1 and n >= 0");
  const int m0 = twist_multiplicity(kind, d, n);
  if (kind == QFormKind::Q1 || kind == QFormKind::Q2) {
    if (d - m0 <= 0)
      throw std::invalid_argument("hypothesis d - (2n + (1-(-1)^d)/2) > 0 fails: " + std::to_string(d) + " - " +
                                  std::to_string(m0) + " = " + std::to_string(d - m0));
  } else if (d - 1 - m0 <= 0) {
    throw std::invalid_argument("hypothesis d - 1 - (2n + (1+(-1)^d)/2) > 0 fails: " + std::to_string(d) + " - 1 - " +
                                std::to_string(m0) + " = " + std::to_string(d - 1 - m0));
  }
}

namespace {

bool is_primed(QFormKind k) { return k == QFormKind::Q1Primed || k == QFormKind::Q2Primed; }

void prepare(QFormKind kind, int d, int n, const QFormOptions& opts) {
  if (opts.check_hypothesis) require_hypothesis(kind, d, n);
  if (is_primed(kind) && !opts.with_xi) throw std::invalid_argument("primed forms need the xi twist");
}

QPowerSeries constant_part(const QPowerSeries& f) {
  QPowerSeries r(f.precision(), f.zero());
  r.at(0) = f[0];
  return r;
}

}  // namespace

SeparatedForm q_form_theta(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts) {
  prepare(kind, d, n, opts);
  const int m0 = twist_multiplicity(kind, d, n);
  const bool primed = is_primed(kind);
  const int p = d + (primed ? 1 : 0);
  const bool first = kind == QFormKind::Q1 || kind == QFormKind::Q1Primed;
  const ThetaKind own = first ? ThetaKind::Theta1 : ThetaKind::Theta2;
  const ThetaKind other = first ? ThetaKind::Theta2 : ThetaKind::Theta1;

  QPowerSeries rk = ratio(ThetaKind::Theta, RatioRole::RootKernel, p, order);
  QPowerSeries ek = ratio(ThetaKind::Theta, RatioRole::EulerKernel, p, order);
  QPowerSeries r_own = ratio(own, RatioRole::Ratio, p, order);
  QPowerSeries inv_own = ratio(own, RatioRole::InverseRatio, p, order);
  QPowerSeries r3 = ratio(ThetaKind::Theta3, RatioRole::Ratio, p, order);
  QPowerSeries r_other = ratio(other, RatioRole::Ratio, p, order);

  SeparatedForm f = SeparatedForm::one(p, order);
  f.root = rk * r_own;
  f.euler0 = raise(ek * inv_own, m0);
  if (!primed) {
    f.euler = inv_own * inv_own * r3 * r_other;
    if (!opts.with_xi) f.euler = constant_part(f.euler);
  } else {
    f.euler = (r_own - inv_own * r3 * r_other).divided_by(ek);
  }
  if (first) return f.scaled(pow2(d));
  return primed ? f.scaled(Rational(1, 2)) : f;
}

SeparatedForm q_form_direct(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts) {
  prepare(kind, d, n, opts);
  const int m0 = twist_multiplicity(kind, d, n);
  const bool primed = is_primed(kind);
  const int p = d + (primed ? 1 : 0);
  const bool first = kind == QFormKind::Q1 || kind == QFormKind::Q1Primed;
  auto lifted = [&](const ScalarSeries& s) { return scalar_power_series(s, order); };

  ThetaVariant variant = first ? (primed ? ThetaVariant::Theta1Primed : ThetaVariant::Theta1)
                               : (primed ? ThetaVariant::Theta2Primed : ThetaVariant::Theta2);
  SeparatedForm bundle = theta_bundle_factors({variant, m0, opts.with_xi}, p, order);

  QPowerSeries ch_half = lifted(series::cosh(p, Rational(1, 2)));
  QPowerSeries sh_half = lifted(series::sinh(p, Rational(1, 2)));

  SeparatedForm f = SeparatedForm::one(p, order);
  if (first) {
    f.root = lifted(series::x_over_tanh_half(p));
    f.euler0 = raise(lifted(series::tanh_half(p)), m0);
  } else {
    f.root = lifted(series::half_over_sinh_half(p));
    f.euler0 = raise(sh_half, m0);
  }
  f.root *= bundle.root;
  f.euler0 *= bundle.euler0;

  if (!primed) {
    if (opts.with_xi) f.euler = (first ? ch_half.pow(-2) : ch_half) * bundle.euler;
    return f;
  }
  // The xi-free bundle differs only in its c factor.
  QPowerSeries plain = theta_bundle_factors({variant, m0, false}, p, order).euler;
  if (first) {
    f.euler = (ch_half * (plain - bundle.euler * ch_half.pow(-2))).divided_by(sh_half);
  } else {
    f.euler = (plain - ch_half * bundle.euler).divided_by(sh_half.scaled(RatSeries::constant(order, Rational(2))));
  }
  return f;
}

PolySeries q_form(QFormKind kind, int d, int n, HalfInt order, QFormOptions opts) {
  return q_form_theta(kind, d, n, order, opts).expand(RingConfig::even(d));
}

}  // namespace tac
