#include "tac/graded_poly.hpp"

#include <sstream>
#include <vector>

namespace tac {

RingConfig RingConfig::even(int d) {
  RingConfig cfg;
  cfg.d = d;
  cfg.roots = d;
  cfg.cutoff = d;
  return cfg;
}

RingConfig RingConfig::odd(int d) {
  RingConfig cfg;
  cfg.d = d;
  cfg.roots = d - 1;
  cfg.cutoff = d;
  cfg.use_cs_generator = true;
  cfg.s_degree = 1;
  return cfg;
}

int RingConfig::var_a(int j) const {
  if (j < 1 || j > roots) throw std::out_of_range("root index " + std::to_string(j) + " out of range");
  return j - 1;
}

int RingConfig::var_y() const {
  if (!use_cs_generator) throw std::logic_error("ring has no trace variable");
  return roots + 2;
}

int RingConfig::var_s() const {
  if (!use_cs_generator) throw std::logic_error("ring has no odd generator");
  return roots + 3;
}

std::string RingConfig::var_name(int var) const {
  if (var < roots) return "a" + std::to_string(var + 1);
  if (var == var_c()) return "c";
  if (var == var_c0()) return "c0";
  if (use_cs_generator && var == roots + 2) return "y";
  if (use_cs_generator && var == roots + 3) return "s";
  throw std::out_of_range("variable index " + std::to_string(var) + " out of range");
}

void GradedPoly::validate(const RingConfig& cfg) {
  if (cfg.d < 0 || cfg.roots < 0 || cfg.cutoff < 0) throw std::invalid_argument("ring parameters must be non-negative");
  if (cfg.num_vars() > kMaxVariables) throw std::invalid_argument("too many ring variables");
  if (cfg.use_cs_generator && cfg.s_degree < 1) throw std::invalid_argument("odd generator needs positive degree");
}

void GradedPoly::require_same(const GradedPoly& o, const char* op) const {
  if (!(cfg_ == o.cfg_))
    throw ConfigMismatch(std::string(op) + ": operands live in different rings");
}

GradedPoly GradedPoly::constant(const RingConfig& cfg, const Rational& c) {
  GradedPoly p(cfg);
  p.add_term(Monomial{}, c);
  return p;
}

GradedPoly GradedPoly::variable(const RingConfig& cfg, int var) {
  if (var < 0 || var >= cfg.num_vars()) throw std::out_of_range("variable index out of range");
  GradedPoly p(cfg);
  Monomial m;
  m.exps[static_cast<std::size_t>(var)] = 1;
  p.add_term(m, 1);
  return p;
}

GradedPoly GradedPoly::from_terms(const RingConfig& cfg, const Terms& terms) {
  GradedPoly p(cfg);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

int GradedPoly::degree(const Monomial& m) const {
  int deg = 0;
  for (int v = 0; v < cfg_.num_vars(); ++v) deg += m.exps[static_cast<std::size_t>(v)] * cfg_.degree_of(v);
  return deg;
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial{}); }

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational() : it->second;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero() || degree(m) > cfg_.cutoff) return;
  if (cfg_.use_cs_generator && m.exps[static_cast<std::size_t>(cfg_.var_s())] > 1) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  require_same(o, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  require_same(o, "subtract");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly operator-(const GradedPoly& a) {
  GradedPoly r(a.cfg_);
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  a.require_same(b, "multiply");
  const RingConfig& cfg = a.cfg_;
  const int nv = cfg.num_vars();
  const int s_var = cfg.use_cs_generator ? cfg.var_s() : -1;
  struct Entry {
    const Monomial* mono;
    const Rational* coeff;
    int degree;
  };
  auto entries = [&](const GradedPoly& p) {
    std::vector<Entry> out;
    out.reserve(p.terms_.size());
    for (const auto& [m, c] : p.terms_) out.push_back({&m, &c, p.degree(m)});
    return out;
  };
  std::vector<Entry> ea = entries(a), eb = entries(b);
  GradedPoly r(cfg);
  Monomial prod;
  mpq_class tmp;
  for (const Entry& x : ea) {
    for (const Entry& y : eb) {
      if (x.degree + y.degree > cfg.cutoff) continue;
      if (s_var >= 0 && x.mono->exps[static_cast<std::size_t>(s_var)] && y.mono->exps[static_cast<std::size_t>(s_var)])
        continue;
      for (int v = 0; v < nv; ++v)
        prod.exps[static_cast<std::size_t>(v)] =
            static_cast<std::uint8_t>(x.mono->exps[static_cast<std::size_t>(v)] + y.mono->exps[static_cast<std::size_t>(v)]);
      tmp = x.coeff->raw() * y.coeff->raw();
      auto [it, inserted] = r.terms_.try_emplace(prod, Rational(tmp));
      if (!inserted) {
        it->second += Rational(tmp);
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

GradedPoly GradedPoly::scaled(const Rational& k) const {
  GradedPoly r(cfg_);
  if (k.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * k);
  return r;
}

GradedPoly GradedPoly::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  GradedPoly r = constant(cfg_, 1), b = *this;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return r;
}

GradedPoly GradedPoly::inverse() const {
  Rational c0 = constant_term();
  if (c0.is_zero()) throw NotAUnit("polynomial with zero constant term is not invertible");
  // 1/(c0 (1 + u)) = (1/c0) sum (-u)^k, nilpotent u.
  GradedPoly u = scaled(c0.inverse()) - constant(cfg_, 1);
  GradedPoly sum = constant(cfg_, 1), power = constant(cfg_, 1);
  for (int k = 1; k <= cfg_.cutoff; ++k) {
    power = power * (-u);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(c0.inverse());
}

GradedPoly GradedPoly::homogeneous_part(int deg) const {
  GradedPoly r(cfg_);
  for (const auto& [m, c] : terms_)
    if (degree(m) == deg) r.terms_.emplace(m, c);
  return r;
}

GradedPoly GradedPoly::without_variable(int var) const {
  GradedPoly r(cfg_);
  for (const auto& [m, c] : terms_)
    if (m.exps[static_cast<std::size_t>(var)] == 0) r.terms_.emplace(m, c);
  return r;
}

GradedPoly GradedPoly::reflected(int var) const {
  GradedPoly r(cfg_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, (m.exps[static_cast<std::size_t>(var)] % 2) ? -c : c);
  return r;
}

GradedPoly GradedPoly::swapped(int v1, int v2) const {
  GradedPoly r(cfg_);
  for (const auto& [key, c] : terms_) {
    Monomial m = key;
    std::swap(m.exps[static_cast<std::size_t>(v1)], m.exps[static_cast<std::size_t>(v2)]);
    r.add_term(m, c);
  }
  return r;
}

GradedPoly GradedPoly::divided_by_variable(int var) const {
  GradedPoly r(cfg_);
  for (const auto& [key, c] : terms_) {
    Monomial m = key;
    auto& e = m.exps[static_cast<std::size_t>(var)];
    if (e == 0) throw NotAUnit("term " + monomial_string(m) + " is not divisible by " + cfg_.var_name(var));
    --e;
    r.terms_.emplace(m, c);
  }
  return r;
}

GradedPoly GradedPoly::recast(const RingConfig& target) const {
  if (!cfg_.same_layout(target)) throw ConfigMismatch("recast: incompatible generators");
  GradedPoly r(target);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

std::string GradedPoly::monomial_string(const Monomial& m) const {
  std::string out;
  for (int v = 0; v < cfg_.num_vars(); ++v) {
    int e = m.exps[static_cast<std::size_t>(v)];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += cfg_.var_name(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomial first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono = monomial_string(m);
    if (mono == "1") {
      os << mag;
    } else if (mag.is_one()) {
      os << mono;
    } else {
      os << mag << '*' << mono;
    }
  }
  return os.str();
}

GradedPoly apply_series(const ScalarSeries& f, const GradedPoly& p) {
  if (!p.constant_term().is_zero()) throw std::invalid_argument("apply_series: argument has a nonzero constant term");
  const RingConfig& cfg = p.config();
  int top = std::min(f.precision(), cfg.cutoff);
  if (f.precision() < cfg.cutoff && !p.is_zero())
    throw BeyondTruncation("apply_series: series known only through x^" + std::to_string(f.precision()));
  GradedPoly r = GradedPoly::constant(cfg, f[top]);
  for (int k = top - 1; k >= 0; --k) r = r * p + GradedPoly::constant(cfg, f[k]);
  return r;
}

PolySeries embed(const QPowerSeries& f, const RingConfig& cfg, int var) {
  if (f.precision() < cfg.cutoff / cfg.degree_of(var))
    throw BeyondTruncation("series precision " + std::to_string(f.precision()) + " is below the ring cutoff");
  HalfInt order = f[0].order();
  int top = std::min(f.precision(), cfg.cutoff / cfg.degree_of(var));
  for (int p = 0; p <= top; ++p) order = std::min(order, f[p].order());
  GradedPoly zero(cfg);
  PolySeries out(order, zero);
  std::map<HalfInt, GradedPoly> acc;
  for (int p = 0; p <= top; ++p) {
    Monomial m;
    m.exps[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(p);
    for (const auto& [k, c] : f[p].terms()) {
      if (k > order) break;
      auto [it, inserted] = acc.try_emplace(k, zero);
      it->second.add_term(m, c);
    }
  }
  for (auto& [k, poly] : acc) out.set(k, std::move(poly));
  return out;
}

PolySeries symmetric_product(const QPowerSeries& f, const RingConfig& cfg) {
  HalfInt order = f[0].order();
  for (int p = 0; p <= std::min(f.precision(), cfg.cutoff); ++p) order = std::min(order, f[p].order());
  PolySeries r = PolySeries::one(order, GradedPoly(cfg));
  for (int j = 1; j <= cfg.roots; ++j) r *= embed(f, cfg, cfg.var_a(j));
  return r;
}

PolySeries as_series(const GradedPoly& p, HalfInt order) {
  return PolySeries::constant(order, p, GradedPoly(p.config()));
}

PolySeries top_component(const PolySeries& s) {
  return s.map_coefficients([](const GradedPoly& p) { return p.top_component(); });
}

PolySeries divided_by_variable(const PolySeries& s, int var) {
  return s.map_coefficients([var](const GradedPoly& p) { return p.divided_by_variable(var); });
}

PolySeries recast(const PolySeries& s, const RingConfig& target) {
  return s.map_coefficients([&target](const GradedPoly& p) { return p.recast(target); });
}

QPowerSeries lift(const ScalarSeries& f, HalfInt order) {
  QPowerSeries r(f.precision(), RatSeries(order));
  for (int p = 0; p <= f.precision(); ++p) r.at(p) = RatSeries::constant(order, f[p]);
  return r;
}

}  // namespace tac
