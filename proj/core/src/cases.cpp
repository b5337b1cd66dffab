#include "rosc/cases.hpp"

#include <cmath>

#include "rosc/observables.hpp"

namespace rosc {

namespace {

// --- case (i): V_a(1,1) ---------------------------------------------------

double i3_iso(double /*w*/, double x, double y, double px, double py) { return x * py - y * px; }

double j3_iso_i3sq(double w, double x, double y, double px, double py) {
  const double v = i3_iso(w, x, y, px, py);
  return v * v;
}
double j3_iso_10(double, double x, double y, double, double) { return (y / x) * (y / x); }
double j3_iso_01(double, double x, double y, double, double) { return (x / y) * (x / y); }

// --- case (ii): V_a(2,1) --------------------------------------------------

double i3_21(double w, double x, double y, double px, double py) {
  return (x * py - y * px) * py - w * w * x * y * y;
}

double j3_21_i3sq(double w, double x, double y, double px, double py) {
  const double v = i3_21(w, x, y, px, py);
  return v * v;
}
double j3_21_10(double, double x, double y, double, double py) {
  return (y * y) / (x * x) * py * py;
}
double j3_21_01(double, double x, double y, double px, double py) {
  const double u = y * px - 2.0 * x * py;
  return u * u / (2.0 * y * y);
}
double j3_21_11(double, double x, double, double, double) { return 1.0 / (2.0 * x * x); }
double j3_21_02(double, double x, double y, double, double) {
  return (x * x) / (y * y * y * y);
}

// --- case (iii): V_a(3,1) -------------------------------------------------

double i3_31(double w, double x, double y, double px, double py) {
  return 3.0 * (x * py - y * px) * py * py + w * w * (y * px - 9.0 * x * py) * y * y;
}

double j3_31_i3sq(double w, double x, double y, double px, double py) {
  const double v = i3_31(w, x, y, px, py);
  return v * v;
}
double j3_31_10(double w, double x, double y, double, double py) {
  const double u = 3.0 * py * py - w * w * y * y;
  return (y * y) / (x * x) * u * u;
}
double j3_31_01(double w, double x, double y, double px, double py) {
  const double u = 2.0 * y * px * py - 3.0 * x * py * py + 3.0 * w * w * x * y * y;
  return 3.0 / (y * y) * u * u;
}
double j3_31_11(double, double x, double, double, double py) {
  return 12.0 * py * py / (x * x);
}
double j3_31_02(double, double x, double y, double px, double py) {
  const double u = 3.0 * x * py - y * px;
  return 3.0 / (y * y * y * y) * u * u;
}
double j3_31_12(double, double x, double y, double, double) { return 3.0 / (x * x * y * y); }
double j3_31_03(double, double x, double y, double, double) {
  return 9.0 * x * x / (y * y * y * y * y * y);
}

std::vector<CaseFormula> make_registry() {
  std::vector<CaseFormula> reg;
  reg.push_back(CaseFormula{
      CaseId::Iso11, 1, 1, Rational(-2), Rational(1),
      {
          {"I3^2", 0, 0, &j3_iso_i3sq},
          {"J3^(10)", 1, 0, &j3_iso_10},
          {"J3^(01)", 0, 1, &j3_iso_01},
      }});
  reg.push_back(CaseFormula{
      CaseId::Aniso21, 2, 1, Rational(-8), Rational(1, 2),
      {
          {"I3^2", 0, 0, &j3_21_i3sq},
          {"J3^(10)", 1, 0, &j3_21_10},
          {"J3^(01)", 0, 1, &j3_21_01},
          {"J3^(1,1)", 1, 1, &j3_21_11},
          {"J3^(0,2)", 0, 2, &j3_21_02},
      }});
  reg.push_back(CaseFormula{
      CaseId::Aniso31, 3, 1, Rational(-2), Rational(1),
      {
          {"I3^2", 0, 0, &j3_31_i3sq},
          {"J3^(10)", 1, 0, &j3_31_10},
          {"J3^(01)", 0, 1, &j3_31_01},
          {"J3^(1,1)", 1, 1, &j3_31_11},
          {"J3^(0,2)", 0, 2, &j3_31_02},
          {"J3^(1,2)", 1, 2, &j3_31_12},
          {"J3^(0,3)", 0, 3, &j3_31_03},
      }});
  return reg;
}

void check_case_params(const CaseFormula& formula, const SystemParams& params,
                       const PhaseState& state) {
  if (params.dof() != 2) {
    throw CaseMismatchError("closed-form cases are two-dimensional");
  }
  detail::check_state(params, state);
  if (params.ratios[0] != formula.nx || params.ratios[1] != formula.ny) {
    throw CaseMismatchError("ratios (" + std::to_string(params.ratios[0]) + "," +
                            std::to_string(params.ratios[1]) + ") do not match case " +
                            to_string(formula.id));
  }
  detail::check_regular(params, state, 0);
  detail::check_regular(params, state, 1);
}

}  // namespace

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::Iso11: return "iso_1_1";
    case CaseId::Aniso21: return "aniso_2_1";
    case CaseId::Aniso31: return "aniso_3_1";
  }
  return "?";
}

std::optional<CaseId> parse_case_id(const std::string& text) {
  for (const auto& formula : case_registry()) {
    if (to_string(formula.id) == text) return formula.id;
  }
  return std::nullopt;
}

const std::vector<CaseFormula>& case_registry() {
  static const std::vector<CaseFormula> registry = make_registry();
  return registry;
}

const CaseFormula& case_formula(CaseId id) {
  for (const auto& formula : case_registry()) {
    if (formula.id == id) return formula;
  }
  throw Error("unknown case id");
}

std::optional<CaseId> case_for_ratios(const std::vector<int>& ratios) {
  if (ratios.size() != 2) return std::nullopt;
  for (const auto& formula : case_registry()) {
    if (formula.nx == ratios[0] && formula.ny == ratios[1]) return formula.id;
  }
  return std::nullopt;
}

double CaseFormula::i3(const SystemParams& params, const PhaseState& state) const {
  check_case_params(*this, params, state);
  const double w = params.omega0;
  switch (id) {
    case CaseId::Iso11: return i3_iso(w, state.positions[0], state.positions[1], state.momenta[0], state.momenta[1]);
    case CaseId::Aniso21: return i3_21(w, state.positions[0], state.positions[1], state.momenta[0], state.momenta[1]);
    case CaseId::Aniso31: return i3_31(w, state.positions[0], state.positions[1], state.momenta[0], state.momenta[1]);
  }
  throw Error("unknown case id");
}

double paper_invariant_j3(CaseId id, const SystemParams& params, const PhaseState& state) {
  const CaseFormula& formula = case_formula(id);
  check_case_params(formula, params, state);
  const double k1 = params.strengths[0];
  const double k2 = params.strengths[1];
  double total = 0.0;
  for (const auto& term : formula.j3_terms) {
    double coeff = 1.0;
    for (int a = 0; a < term.k1_power; ++a) coeff *= k1;
    for (int b = 0; b < term.k2_power; ++b) coeff *= k2;
    if (coeff == 0.0) continue;
    total += coeff * term.eval(params.omega0, state.positions[0], state.positions[1],
                               state.momenta[0], state.momenta[1]);
  }
  return total;
}

double extract_j3(CaseId id, const SystemParams& params, const PhaseState& state) {
  const CaseFormula& formula = case_formula(id);
  check_case_params(formula, params, state);
  const double re_mxy = deformed_constant(params, state, 0, 1).re;
  const double ex = energy(params, state, 0);
  const double ey = energy(params, state, 1);
  double energy_product = std::ldexp(1.0, formula.nx + formula.ny);  // 2^(nx+ny)
  for (int e = 0; e < formula.ny; ++e) energy_product *= ex;
  for (int e = 0; e < formula.nx; ++e) energy_product *= ey;
  const double w2 = params.omega0 * params.omega0;
  return (re_mxy - energy_product) / (to_double(formula.lambda) * w2);
}

}  // namespace rosc
