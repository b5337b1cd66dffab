#include "rosc/polynomial.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace rosc {

// --- rational helpers -------------------------------------------------------

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0 && exp < 0) throw Error("zero cannot be raised to a negative power");
  const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(base), e);
  BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(base), e);
  return exp < 0 ? Rational(den, num) : Rational(num, den);
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  const BigInt num = boost::integer::gcd(BigInt(abs(numerator(a))), BigInt(abs(numerator(b))));
  const BigInt den = boost::integer::lcm(BigInt(denominator(a)), BigInt(denominator(b)));
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

// --- ordering and construction ----------------------------------------------

bool GradedLexOrder::operator()(const Exponents& a, const Exponents& b) const {
  const long da = std::accumulate(a.begin(), a.end(), 0L);
  const long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string generator_name(int dof, int gen) {
  if (gen < 0 || gen >= generator_count(dof)) throw Error("unknown generator id");
  if (gen < dof) return "x" + std::to_string(gen + 1);
  if (gen < 2 * dof) return "p" + std::to_string(gen - dof + 1);
  if (gen == 2 * dof) return "omega0";
  return "k" + std::to_string(gen - 2 * dof);
}

PhasePoly PhasePoly::constant(int dof, const Rational& c) {
  PhasePoly poly(dof);
  poly.add_term(Exponents(generator_count(dof), 0), c);
  return poly;
}

PhasePoly PhasePoly::generator(int dof, int gen, int exp) {
  if (gen < 0 || gen >= generator_count(dof)) throw Error("unknown generator id");
  if (exp < 0 && gen >= dof) {
    throw Error("only position generators admit negative exponents");
  }
  PhasePoly poly(dof);
  Exponents exps(generator_count(dof), 0);
  exps[gen] = exp;
  poly.add_term(exps, Rational(1));
  return poly;
}

PhasePoly PhasePoly::position(int dof, int i, int exp) {
  detail::check_index(i, dof);
  return generator(dof, position_gen(dof, i), exp);
}
PhasePoly PhasePoly::momentum(int dof, int i, int exp) {
  detail::check_index(i, dof);
  return generator(dof, momentum_gen(dof, i), exp);
}
PhasePoly PhasePoly::omega(int dof, int exp) { return generator(dof, omega_gen(dof), exp); }
PhasePoly PhasePoly::strength(int dof, int i, int exp) {
  detail::check_index(i, dof);
  return generator(dof, strength_gen(dof, i), exp);
}

void PhasePoly::add_term(const Exponents& exps, const Rational& coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(exps.size()) != generator_count(dof_)) {
    throw Error("exponent vector length does not match the generator set");
  }
  auto [it, inserted] = terms_.emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

// --- ring operations ---------------------------------------------------------

namespace {
void check_compatible(const PhasePoly& a, const PhasePoly& b) {
  if (a.dof() != b.dof()) throw Error("incompatible generator sets");
}
}  // namespace

PhasePoly PhasePoly::operator-() const {
  PhasePoly out(dof_);
  for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, -coeff);
  return out;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& other) {
  check_compatible(*this, other);
  for (const auto& [exps, coeff] : other.terms_) add_term(exps, coeff);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& other) {
  check_compatible(*this, other);
  for (const auto& [exps, coeff] : other.terms_) add_term(exps, -coeff);
  return *this;
}

PhasePoly& PhasePoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [exps, coeff] : terms_) coeff *= scalar;
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  check_compatible(a, b);
  PhasePoly out(a.dof());
  Exponents exps(generator_count(a.dof()), 0);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t g = 0; g < exps.size(); ++g) exps[g] = ea[g] + eb[g];
      out.add_term(exps, ca * cb);
    }
  }
  return out;
}

PhasePoly pow(const PhasePoly& a, int e) {
  if (e == 0) return PhasePoly::constant(a.dof(), Rational(1));
  if (e < 0) {
    if (a.term_count() != 1) {
      throw Error("negative power of a non-monomial");
    }
    const auto& [exps, coeff] = *a.terms().begin();
    for (int g = a.dof(); g < generator_count(a.dof()); ++g) {
      if (exps[g] != 0) {
        throw Error("only x_i monomials may carry negative exponents");
      }
    }
    PhasePoly out(a.dof());
    Exponents scaled(exps.size());
    for (std::size_t g = 0; g < exps.size(); ++g) scaled[g] = exps[g] * e;
    out.add_term(scaled, rational_pow(coeff, e));
    return out;
  }
  PhasePoly acc = PhasePoly::constant(a.dof(), Rational(1));
  PhasePoly base = a;
  int rem = e;
  while (rem > 0) {
    if (rem & 1) acc = acc * base;
    if (rem >>= 1) base = base * base;
  }
  return acc;
}

PhasePoly derivative(const PhasePoly& a, int gen) {
  if (gen < 0 || gen >= generator_count(a.dof())) throw Error("unknown generator id");
  if (gen >= 2 * a.dof()) throw Error("parameters are constants; differentiate by x_i or p_i");
  PhasePoly out(a.dof());
  Exponents exps(generator_count(a.dof()));
  for (const auto& [e, c] : a.terms()) {
    if (e[gen] == 0) continue;
    exps = e;
    exps[gen] -= 1;
    out.add_term(exps, c * e[gen]);
  }
  return out;
}

PhasePoly substitute(const PhasePoly& a, int gen, const Rational& value) {
  if (gen < 0 || gen >= generator_count(a.dof())) throw Error("unknown generator id");
  PhasePoly out(a.dof());
  Exponents exps(generator_count(a.dof()));
  for (const auto& [e, c] : a.terms()) {
    if (e[gen] < 0 && value == 0) {
      throw Error("substituting zero into a negative exponent");
    }
    exps = e;
    exps[gen] = 0;
    out.add_term(exps, c * rational_pow(value, e[gen]));
  }
  return out;
}

PhasePoly poisson_bracket(const PhasePoly& a, const PhasePoly& b) {
  check_compatible(a, b);
  const int dof = a.dof();
  PhasePoly out(dof);
  for (int i = 0; i < dof; ++i) {
    const int xg = position_gen(dof, i);
    const int pg = momentum_gen(dof, i);
    out += derivative(a, xg) * derivative(b, pg);
    out -= derivative(a, pg) * derivative(b, xg);
  }
  return out;
}

int momentum_degree(const PhasePoly& a) {
  int deg = 0;
  for (const auto& [e, c] : a.terms()) {
    int d = 0;
    for (int i = 0; i < a.dof(); ++i) d += e[momentum_gen(a.dof(), i)];
    deg = std::max(deg, d);
  }
  return deg;
}

Rational PhasePoly::leading_coefficient() const {
  if (terms_.empty()) return Rational(0);
  return terms_.rbegin()->second;
}

Rational PhasePoly::content() const {
  if (terms_.empty()) return Rational(0);
  Rational g(0);
  for (const auto& [e, c] : terms_) g = rational_gcd(g, c);
  if (leading_coefficient() < 0) g = -g;
  return g;
}

PhasePoly divide_exact(const PhasePoly& a, const Rational& c, int omega_exponent) {
  if (c == 0) throw Error("division by zero");
  const int wg = omega_gen(a.dof());
  PhasePoly out(a.dof());
  Exponents exps(generator_count(a.dof()));
  for (const auto& [e, coeff] : a.terms()) {
    if (e[wg] < omega_exponent) {
      throw Error("not divisible by omega0^" + std::to_string(omega_exponent));
    }
    exps = e;
    exps[wg] -= omega_exponent;
    out.add_term(exps, coeff / c);
  }
  return out;
}

double eval(const PhasePoly& a, const SystemParams& params, const PhaseState& state) {
  const int dof = a.dof();
  if (params.dof() != dof || state.dof() != dof) {
    throw Error("evaluation point dimension does not match the generator set");
  }
  double total = 0.0;
  for (const auto& [e, c] : a.terms()) {
    double term = to_double(c);
    for (int i = 0; i < dof; ++i) {
      if (e[i] != 0) term *= std::pow(state.positions[i], e[i]);
      const int pe = e[momentum_gen(dof, i)];
      if (pe != 0) term *= std::pow(state.momenta[i], pe);
      const int ke = e[strength_gen(dof, i)];
      if (ke != 0) term *= std::pow(params.strengths[i], ke);
    }
    const int we = e[omega_gen(dof)];
    if (we != 0) term *= std::pow(params.omega0, we);
    total += term;
  }
  return total;
}

std::string to_string(const PhasePoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [exps, coeff] = *it;
    const Rational mag = abs(coeff);
    if (first) {
      if (coeff < 0) out << "-";
      first = false;
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (mag != 1) {
      out << to_string(mag);
      printed = true;
    }
    for (std::size_t g = 0; g < exps.size(); ++g) {
      if (exps[g] == 0) continue;
      if (printed) out << "*";
      out << generator_name(a.dof(), static_cast<int>(g));
      if (exps[g] != 1) out << "^" << exps[g];
      printed = true;
    }
    if (!printed) out << "1";
  }
  return out.str();
}

// --- complex pairs -----------------------------------------------------------

PhasePolyC::PhasePolyC(PhasePoly re_, PhasePoly im_) : re(std::move(re_)), im(std::move(im_)) {
  if (re.dof() != im.dof()) throw Error("incompatible generator sets");
}

PhasePolyC pow(const PhasePolyC& z, int e) {
  if (e < 0) throw Error("negative power of a complex pair");
  PhasePolyC acc(z.re.dof());
  acc.re = PhasePoly::constant(z.re.dof(), Rational(1));
  PhasePolyC base = z;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

std::complex<double> eval(const PhasePolyC& z, const SystemParams& params, const PhaseState& state) {
  return {eval(z.re, params, state), eval(z.im, params, state)};
}

}  // namespace rosc
