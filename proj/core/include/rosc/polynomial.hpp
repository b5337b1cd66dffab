#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "rosc/errors.hpp"
#include "rosc/rational.hpp"
#include "rosc/system.hpp"

namespace rosc {

// Exact Laurent polynomials over the phase space of an n-dof system. The
// generator list, in declaration order, is
//
//   x_1 .. x_n,  p_1 .. p_n,  omega0,  k_1 .. k_n
//
// (3n+1 generators). Position exponents may be any integer; momentum and
// parameter exponents are nonnegative. Coefficients are exact rationals;
// complex quantities are carried as (re, im) pairs of real polynomials.

inline int position_gen(int /*dof*/, int i) { return i; }
inline int momentum_gen(int dof, int i) { return dof + i; }
inline int omega_gen(int dof) { return 2 * dof; }
inline int strength_gen(int dof, int i) { return 2 * dof + 1 + i; }
inline int generator_count(int dof) { return 3 * dof + 1; }
std::string generator_name(int dof, int gen);

using Exponents = std::vector<int>;

/// Graded lexicographic: total degree first, ties broken by exponent-vector
/// lexicographic comparison in declaration order.
struct GradedLexOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class PhasePoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexOrder>;

  explicit PhasePoly(int dof = 1) : dof_(dof) {}

  static PhasePoly constant(int dof, const Rational& c);
  static PhasePoly generator(int dof, int gen, int exp = 1);
  static PhasePoly position(int dof, int i, int exp = 1);
  static PhasePoly momentum(int dof, int i, int exp = 1);
  static PhasePoly omega(int dof, int exp = 1);
  static PhasePoly strength(int dof, int i, int exp = 1);

  int dof() const { return dof_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Accumulates c * prod(gen^exp); drops the term if it cancels to zero.
  void add_term(const Exponents& exps, const Rational& coeff);

  bool operator==(const PhasePoly& other) const {
    return dof_ == other.dof_ && terms_ == other.terms_;
  }

  PhasePoly operator-() const;
  PhasePoly& operator+=(const PhasePoly& other);
  PhasePoly& operator-=(const PhasePoly& other);
  PhasePoly& operator*=(const Rational& scalar);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const Rational& s) { return a *= s; }
  friend PhasePoly operator*(const Rational& s, PhasePoly a) { return a *= s; }

  /// Coefficient of the canonical leading term (largest in graded lex);
  /// zero for the zero polynomial.
  Rational leading_coefficient() const;

  /// gcd of all coefficients, carrying the sign of the leading coefficient;
  /// zero for the zero polynomial. Dividing by it gives the primitive form.
  Rational content() const;

 private:
  int dof_;
  TermMap terms_;
};

/// a^e. For e < 0, a must be a single term whose exponents touch only
/// position generators (only x_i monomials may carry negative exponents).
PhasePoly pow(const PhasePoly& a, int e);

/// Term-wise power rule with Laurent exponents. gen must be a position or a
/// momentum; the parameters omega0 and k_i are constants.
PhasePoly derivative(const PhasePoly& a, int gen);

/// Replaces a generator by a rational constant. Rejects value 0 where the
/// generator appears with a negative exponent.
PhasePoly substitute(const PhasePoly& a, int gen, const Rational& value);

/// {a, b} = sum_i (da/dx_i db/dp_i - da/dp_i db/dx_i).
PhasePoly poisson_bracket(const PhasePoly& a, const PhasePoly& b);

/// Maximum total degree in the momentum generators (0 for the zero
/// polynomial and for constants).
int momentum_degree(const PhasePoly& a);

/// Exact division by c * omega0^e; throws Error when not divisible.
PhasePoly divide_exact(const PhasePoly& a, const Rational& c, int omega_exponent);

double eval(const PhasePoly& a, const SystemParams& params, const PhaseState& state);

/// Canonical rendering, leading term first: "p1^2 - 2*omega0^2*x1*x2 + k1*x1^-2".
std::string to_string(const PhasePoly& a);

/// Complex pair (re, im) with i handled explicitly.
struct PhasePolyC {
  PhasePoly re, im;

  explicit PhasePolyC(int dof = 1) : re(dof), im(dof) {}
  PhasePolyC(PhasePoly re_, PhasePoly im_);

  PhasePolyC conj() const { return {re, -im}; }
  PhasePoly modulus2() const { return re * re + im * im; }

  bool operator==(const PhasePolyC& other) const = default;

  friend PhasePolyC operator+(const PhasePolyC& a, const PhasePolyC& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend PhasePolyC operator-(const PhasePolyC& a, const PhasePolyC& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend PhasePolyC operator*(const PhasePolyC& a, const PhasePolyC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

/// z^e by binary powering, e >= 0.
PhasePolyC pow(const PhasePolyC& z, int e);

std::complex<double> eval(const PhasePolyC& z, const SystemParams& params, const PhaseState& state);

}  // namespace rosc
