#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tac/power_series.hpp"
#include "tac/qseries.hpp"
#include "tac/rational.hpp"

namespace tac {

/// Operands built over different rings were combined.
class ConfigMismatch : public std::invalid_argument {
 public:
  explicit ConfigMismatch(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr int kMaxVariables = 16;

/// Layout of the truncated ring Q[a1..a_r, c, c0 (, y, s)].
///
/// Every generator has degree 1 except s, whose degree is `s_degree`.
/// Monomials of total degree above `cutoff` are dropped. `d` is the degree of
/// the top component. s is odd: s*s = 0.
///
/// With the Chern-Simons generators enabled, y stands for the argument of the
/// trace kernel, so s*y^j represents the trace slot carrying R^j.
struct RingConfig {
  int d = 0;
  int roots = 0;
  int cutoff = 0;
  bool use_cs_generator = false;
  int s_degree = 1;

  /// Ring for a 2d-dimensional manifold: d roots, cutoff d.
  static RingConfig even(int d);
  /// Ring for a (2d-1)-dimensional manifold with the trace slot: d-1 roots,
  /// y and s enabled, top degree d (s counts one).
  static RingConfig odd(int d);

  RingConfig with_cutoff(int c) const {
    RingConfig r = *this;
    r.cutoff = c;
    return r;
  }

  int num_vars() const { return roots + 2 + (use_cs_generator ? 2 : 0); }
  int var_a(int j) const;  // j in [1, roots]
  int var_c() const { return roots; }
  int var_c0() const { return roots + 1; }
  int var_y() const;
  int var_s() const;
  int degree_of(int var) const { return (use_cs_generator && var == var_s()) ? s_degree : 1; }
  std::string var_name(int var) const;

  /// Same generators (ignores cutoff).
  bool same_layout(const RingConfig& o) const {
    return roots == o.roots && use_cs_generator == o.use_cs_generator && s_degree == o.s_degree;
  }
  friend bool operator==(const RingConfig&, const RingConfig&) = default;
};

struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exps{};
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Element of the truncated graded ring. Canonical: no zero coefficients, no
/// term above the cutoff, s^2 terms never stored.
class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedPoly() = default;
  explicit GradedPoly(const RingConfig& cfg) : cfg_(cfg) { validate(cfg); }

  static GradedPoly constant(const RingConfig& cfg, const Rational& c);
  static GradedPoly variable(const RingConfig& cfg, int var);
  static GradedPoly from_terms(const RingConfig& cfg, const Terms& terms);

  const RingConfig& config() const { return cfg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree(const Monomial& m) const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Adds c*m, dropping it if above the cutoff.
  void add_term(const Monomial& m, const Rational& c);

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(const GradedPoly& a);
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  GradedPoly scaled(const Rational& k) const;
  GradedPoly pow(int k) const;
  /// Requires a nonzero constant term.
  GradedPoly inverse() const;

  /// Homogeneous part of the given degree.
  GradedPoly homogeneous_part(int degree) const;
  /// Homogeneous part of degree config().d.
  GradedPoly top_component() const { return homogeneous_part(cfg_.d); }

  /// Sets the variable to zero.
  GradedPoly without_variable(int var) const;
  /// Sends var -> -var.
  GradedPoly reflected(int var) const;
  /// Swaps two variables.
  GradedPoly swapped(int v1, int v2) const;
  /// Exact division by a generator; throws NotAUnit if some term lacks it.
  GradedPoly divided_by_variable(int var) const;
  /// Reinterprets in a ring with the same generators and another cutoff.
  GradedPoly recast(const RingConfig& target) const;

  /// "3/4*a1^2*c0 - c + 1" style, terms in canonical order.
  std::string to_string() const;
  std::string monomial_string(const Monomial& m) const;

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.cfg_ == b.cfg_ && a.terms_ == b.terms_;
  }

 private:
  static void validate(const RingConfig& cfg);
  void require_same(const GradedPoly& o, const char* op) const;

  RingConfig cfg_;
  Terms terms_;
};

// Coefficient-ring hooks so QSeries<GradedPoly> and PowerSeries<GradedPoly> work.
inline bool is_zero(const GradedPoly& p) { return p.is_zero(); }
inline GradedPoly one_like(const GradedPoly& zero) { return GradedPoly::constant(zero.config(), 1); }
inline GradedPoly invert_unit(const GradedPoly& p) { return p.inverse(); }
inline GradedPoly times_rational(const GradedPoly& p, const Rational& k) { return p.scaled(k); }

using PolySeries = QSeries<GradedPoly>;
/// Power series in one variable with rational q-series coefficients.
using QPowerSeries = PowerSeries<RatSeries>;

/// f(p) by Horner's rule; p must have zero constant term.
GradedPoly apply_series(const ScalarSeries& f, const GradedPoly& p);

/// Places a univariate series in ring variable `var`: the coefficient of
/// q^k becomes sum_p f_{p,k} var^p.
PolySeries embed(const QPowerSeries& f, const RingConfig& cfg, int var);

/// prod_j f(a_j) over all roots of the ring.
PolySeries symmetric_product(const QPowerSeries& f, const RingConfig& cfg);

/// Constant-in-q series carrying a polynomial.
PolySeries as_series(const GradedPoly& p, HalfInt order);

/// Coefficientwise top component.
PolySeries top_component(const PolySeries& s);

/// Coefficientwise exact division by a ring generator.
PolySeries divided_by_variable(const PolySeries& s, int var);

/// Coefficientwise recast into a ring with another cutoff.
PolySeries recast(const PolySeries& s, const RingConfig& target);

/// Lifts a rational power series to one with constant q-series coefficients.
QPowerSeries lift(const ScalarSeries& f, HalfInt order);

}  // namespace tac
