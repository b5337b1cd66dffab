#include "rosc/symbolic.hpp"

#include <algorithm>

namespace rosc::symbolic {

namespace {

PhasePoly scalar(int dof, const Rational& c) { return PhasePoly::constant(dof, c); }

/// i * z
PhasePolyC times_i(const PhasePolyC& z) { return {-z.im, z.re}; }

PhasePolyC scale(const PhasePolyC& z, const PhasePoly& f) { return {z.re * f, z.im * f}; }

std::string pair_residual(const PhasePolyC& z) {
  return "Re: " + to_string(z.re) + "; Im: " + to_string(z.im);
}

void check_degree(const std::vector<int>& ratios, int degree_limit) {
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    for (std::size_t j = 0; j < ratios.size(); ++j) {
      const int degree = 2 * (ratios[i] + ratios[j]);
      if (degree > degree_limit) {
        throw DegreeLimitError("expansion degree " + std::to_string(degree) +
                               " for pair (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") exceeds limit " +
                               std::to_string(degree_limit));
      }
    }
  }
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::add(std::string name, const PhasePoly& residual) {
  checks.push_back({std::move(name), residual.is_zero(),
                    residual.is_zero() ? std::string() : to_string(residual)});
}

void Report::add(std::string name, const PhasePolyC& residual) {
  const bool ok = residual.re.is_zero() && residual.im.is_zero();
  checks.push_back({std::move(name), ok, ok ? std::string() : pair_residual(residual)});
}

void Report::add_value(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, passed ? std::string() : std::move(detail)});
}

PhasePolyC linear_factor_poly(const std::vector<int>& ratios, int i) {
  const int dof = static_cast<int>(ratios.size());
  detail::check_index(i, dof);
  return {PhasePoly::momentum(dof, i),
          Rational(ratios[i]) * (PhasePoly::omega(dof) * PhasePoly::position(dof, i))};
}

PhasePolyC deformed_factor_poly(const std::vector<int>& ratios, int i) {
  const int dof = static_cast<int>(ratios.size());
  detail::check_index(i, dof);
  PhasePoly re = PhasePoly::momentum(dof, i, 2);
  re -= Rational(ratios[i]) * Rational(ratios[i]) *
        (PhasePoly::omega(dof, 2) * PhasePoly::position(dof, i, 2));
  re += PhasePoly::strength(dof, i) * PhasePoly::position(dof, i, -2);
  PhasePoly im = Rational(2 * ratios[i]) *
                 (PhasePoly::omega(dof) * PhasePoly::position(dof, i) * PhasePoly::momentum(dof, i));
  return {std::move(re), std::move(im)};
}

PhasePoly energy_poly(const std::vector<int>& ratios, int i) {
  const int dof = static_cast<int>(ratios.size());
  detail::check_index(i, dof);
  PhasePoly e = Rational(1, 2) * PhasePoly::momentum(dof, i, 2);
  e += Rational(ratios[i] * ratios[i], 2) *
       (PhasePoly::omega(dof, 2) * PhasePoly::position(dof, i, 2));
  e += Rational(1, 2) * (PhasePoly::strength(dof, i) * PhasePoly::position(dof, i, -2));
  return e;
}

Constants build_constants(const std::vector<int>& ratios, int degree_limit) {
  if (ratios.empty()) throw Error("at least one degree of freedom is required");
  for (int n : ratios) {
    if (n < 1) throw Error("frequency ratios must be positive integers");
  }
  check_degree(ratios, degree_limit);

  const int dof = static_cast<int>(ratios.size());
  Constants out;
  out.ratios = ratios;
  out.H1 = PhasePoly(dof);
  out.H2 = PhasePoly(dof);
  out.H3 = PhasePoly(dof);

  const std::vector<int> unit(dof, 1);
  std::vector<PhasePolyC> iso_factors;
  for (int i = 0; i < dof; ++i) {
    out.K.push_back(linear_factor_poly(ratios, i));
    out.K2.push_back(pow(out.K.back(), 2));
    out.M.push_back(deformed_factor_poly(ratios, i));
    out.E.push_back(energy_poly(ratios, i));
    iso_factors.push_back(linear_factor_poly(unit, i));

    PhasePoly kinetic = Rational(1, 2) * PhasePoly::momentum(dof, i, 2);
    PhasePoly harmonic = Rational(1, 2) * (PhasePoly::omega(dof, 2) * PhasePoly::position(dof, i, 2));
    out.H1 += kinetic + harmonic;
    out.H2 += kinetic + Rational(ratios[i] * ratios[i]) * harmonic;
    out.H3 += out.E.back();
  }

  for (int i = 0; i < dof; ++i) {
    for (int j = 0; j < dof; ++j) {
      out.Kij.push_back(pow(out.K[i], ratios[j]) * pow(out.K[j].conj(), ratios[i]));
      out.Tij.push_back(iso_factors[i] * iso_factors[j].conj());
      out.Mij.push_back(pow(out.M[i], ratios[j]) * pow(out.M[j].conj(), ratios[i]));
    }
  }
  return out;
}

Report verify_constancy(const std::vector<int>& ratios, int degree_limit) {
  const Constants c = build_constants(ratios, degree_limit);
  Report report;
  for (int i = 0; i < c.dof(); ++i) {
    for (int j = 0; j < c.dof(); ++j) {
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      report.add("constancy:{M" + ij + ",H3}",
                 PhasePolyC{poisson_bracket(c.mij(i, j).re, c.H3),
                            poisson_bracket(c.mij(i, j).im, c.H3)});
      report.add("constancy:{K" + ij + ",H2}",
                 PhasePolyC{poisson_bracket(c.kij(i, j).re, c.H2),
                            poisson_bracket(c.kij(i, j).im, c.H2)});
      report.add("constancy:{T" + ij + ",H1}",
                 PhasePolyC{poisson_bracket(c.tij(i, j).re, c.H1),
                            poisson_bracket(c.tij(i, j).im, c.H1)});
    }
  }
  return report;
}

Report verify_evolution(const std::vector<int>& ratios, int degree_limit) {
  const Constants c = build_constants(ratios, degree_limit);
  const int dof = c.dof();
  Report report;
  for (int i = 0; i < dof; ++i) {
    const std::string is = std::to_string(i + 1);
    const PhasePoly nw = Rational(ratios[i]) * PhasePoly::omega(dof);
    const PhasePoly nw2 = Rational(2 * ratios[i]) * PhasePoly::omega(dof);

    // {K_i, H2} = i n_i omega0 K_i
    PhasePolyC r{poisson_bracket(c.K[i].re, c.H2), poisson_bracket(c.K[i].im, c.H2)};
    report.add("evolution:{K_" + is + ",H2}", r - scale(times_i(c.K[i]), nw));

    // {K_i^2, H2} = 2 i n_i omega0 K_i^2
    r = {poisson_bracket(c.K2[i].re, c.H2), poisson_bracket(c.K2[i].im, c.H2)};
    report.add("evolution:{K2_" + is + ",H2}", r - scale(times_i(c.K2[i]), nw2));

    // {M_i, H3} = 2 i n_i omega0 M_i
    r = {poisson_bracket(c.M[i].re, c.H3), poisson_bracket(c.M[i].im, c.H3)};
    report.add("evolution:{M_" + is + ",H3}", r - scale(times_i(c.M[i]), nw2));

    // k_i -> 0 reduces M_i evolution to the K2_i one (under H3 -> H2)
    const int kg = strength_gen(dof, i);
    PhasePolyC reduced{substitute(c.M[i].re, kg, Rational(0)),
                       substitute(c.M[i].im, kg, Rational(0))};
    report.add("evolution:k0_reduction:M" + is, reduced - c.K2[i]);
  }
  return report;
}

Report verify_moduli(const std::vector<int>& ratios, int degree_limit) {
  const Constants c = build_constants(ratios, degree_limit);
  const int dof = c.dof();
  Report report;
  for (int i = 0; i < dof; ++i) {
    PhasePoly expected = c.E[i] * c.E[i];
    expected -= Rational(ratios[i] * ratios[i]) *
                (PhasePoly::strength(dof, i) * PhasePoly::omega(dof, 2));
    expected *= Rational(4);
    report.add("moduli:M" + std::to_string(i + 1), c.M[i].modulus2() - expected);
  }
  return report;
}

std::vector<PhasePoly> deformation_residual(const DeformationSpec& spec) {
  const int dof = spec.candidate.dof();
  detail::check_index(spec.coordinate, dof);
  const int xg = position_gen(dof, spec.coordinate);

  auto check_profile = [&](const PhasePoly& poly, const char* role) {
    for (const auto& [exps, coeff] : poly.terms()) {
      for (int g = 0; g < 2 * dof; ++g) {
        if (g != xg && exps[g] != 0) {
          throw Error(std::string(role) + " must depend on x_" +
                      std::to_string(spec.coordinate + 1) + " and parameters only");
        }
      }
    }
  };
  check_profile(spec.candidate, "candidate");

  const PhasePoly x = PhasePoly::position(dof, spec.coordinate);
  if (spec.condition == DeformationCondition::Step2Ode) {
    return {x * derivative(spec.candidate, xg) + Rational(2) * spec.candidate};
  }

  if (!spec.partner.has_value()) {
    throw Error("the second-stage system needs both h and V profiles");
  }
  check_profile(*spec.partner, "partner");
  const PhasePoly dh = derivative(spec.candidate, xg);
  const PhasePoly dv = derivative(*spec.partner, xg);
  PhasePoly first = dh - Rational(2) * dv;
  PhasePoly second = Rational(4) * spec.candidate + x * dh + Rational(2) * (x * dv);
  return {std::move(first), std::move(second)};
}

namespace {

struct CaseBuilder {
  int dof = 2;
  PhasePoly x1 = PhasePoly::position(2, 0);
  PhasePoly x2 = PhasePoly::position(2, 1);
  PhasePoly p1 = PhasePoly::momentum(2, 0);
  PhasePoly p2 = PhasePoly::momentum(2, 1);
  PhasePoly w = PhasePoly::omega(2);
  PhasePoly w2 = PhasePoly::omega(2, 2);
  PhasePoly k1 = PhasePoly::strength(2, 0);
  PhasePoly k2 = PhasePoly::strength(2, 1);

  PhasePoly angular() const { return x1 * p2 - x2 * p1; }
};

}  // namespace

PhasePoly case_i3_poly(CaseId id) {
  const CaseBuilder b;
  switch (id) {
    case CaseId::Iso11:
      return b.angular();
    case CaseId::Aniso21:
      return b.angular() * b.p2 - b.w2 * (b.x1 * pow(b.x2, 2));
    case CaseId::Aniso31:
      return Rational(3) * (b.angular() * pow(b.p2, 2)) +
             b.w2 * ((b.x2 * b.p1 - Rational(9) * (b.x1 * b.p2)) * pow(b.x2, 2));
  }
  throw Error("unknown case id");
}

PhasePoly case_j3_poly(CaseId id) {
  const CaseBuilder b;
  PhasePoly j3 = pow(case_i3_poly(id), 2);
  switch (id) {
    case CaseId::Iso11:
      j3 += b.k1 * (pow(b.x2, 2) * pow(b.x1, -2));
      j3 += b.k2 * (pow(b.x1, 2) * pow(b.x2, -2));
      return j3;
    case CaseId::Aniso21:
      j3 += b.k1 * (pow(b.x2, 2) * pow(b.x1, -2) * pow(b.p2, 2));
      j3 += Rational(1, 2) * (b.k2 * (pow(b.x2, -2) * pow(b.x2 * b.p1 - Rational(2) * (b.x1 * b.p2), 2)));
      j3 += Rational(1, 2) * (b.k1 * b.k2 * pow(b.x1, -2));
      j3 += pow(b.k2, 2) * (pow(b.x1, 2) * pow(b.x2, -4));
      return j3;
    case CaseId::Aniso31:
      j3 += b.k1 * (pow(b.x2, 2) * pow(b.x1, -2) *
                    pow(Rational(3) * pow(b.p2, 2) - b.w2 * pow(b.x2, 2), 2));
      j3 += Rational(3) * (b.k2 * (pow(b.x2, -2) *
            pow(Rational(2) * (b.x2 * b.p1 * b.p2) - Rational(3) * (b.x1 * pow(b.p2, 2)) +
                    Rational(3) * (b.w2 * b.x1 * pow(b.x2, 2)),
                2)));
      j3 += Rational(12) * (b.k1 * b.k2 * (pow(b.p2, 2) * pow(b.x1, -2)));
      j3 += Rational(3) * (pow(b.k2, 2) * (pow(b.x2, -4) *
            pow(Rational(3) * (b.x1 * b.p2) - b.x2 * b.p1, 2)));
      j3 += Rational(3) * (b.k1 * pow(b.k2, 2) * (pow(b.x1, -2) * pow(b.x2, -2)));
      j3 += Rational(9) * (pow(b.k2, 3) * (pow(b.x1, 2) * pow(b.x2, -6)));
      return j3;
  }
  throw Error("unknown case id");
}

namespace {

PhasePoly energy_power_product(const Constants& c, int nx, int ny) {
  PhasePoly product = pow(c.E[0], ny) * pow(c.E[1], nx);
  product *= rational_pow(Rational(2), nx + ny);
  return product;
}

}  // namespace

Report match_paper_case(CaseId id) {
  const CaseFormula& formula = case_formula(id);
  const std::vector<int> ratios{formula.nx, formula.ny};
  const Constants c = build_constants(ratios);
  const std::string tag = "case:" + to_string(id);
  Report report;

  const PhasePoly j3_printed = case_j3_poly(id);
  PhasePoly rhs = energy_power_product(c, formula.nx, formula.ny);
  rhs += formula.lambda * (PhasePoly::omega(2, 2) * j3_printed);
  report.add(tag + ":re_identity", c.mij(0, 1).re - rhs);

  // k -> 0: the deformation acts on I_3^2, not on I_3 itself.
  PhasePoly limit = substitute(substitute(j3_printed, strength_gen(2, 0), Rational(0)),
                               strength_gen(2, 1), Rational(0));
  report.add(tag + ":k0_limit", limit - pow(case_i3_poly(id), 2));

  const GeneralJ3 general = general_j3(formula.nx, formula.ny);
  report.add_value(tag + ":general_lambda", general.lambda == formula.lambda,
                   "extracted lambda = " + to_string(general.lambda) + ", registry lambda = " +
                       to_string(formula.lambda));
  report.add(tag + ":general_j3", general.j3 - j3_printed);
  return report;
}

GeneralJ3 general_j3(int nx, int ny, int degree_limit) {
  const std::vector<int> ratios{nx, ny};
  const Constants c = build_constants(ratios, degree_limit);

  PhasePoly difference = c.mij(0, 1).re - energy_power_product(c, nx, ny);

  // I_3: Im(K_xy) is omega0 times a polynomial; its primitive part is the
  // linear-system invariant (sign fixed by the leading coefficient, which is
  // immaterial because only I_3^2 enters).
  PhasePoly i3 = divide_exact(c.kij(0, 1).im, Rational(1), 1);
  const Rational content = i3.content();
  i3 = divide_exact(i3, content, 0);

  PhasePoly limit = substitute(substitute(difference, strength_gen(2, 0), Rational(0)),
                               strength_gen(2, 1), Rational(0));
  PhasePoly target = PhasePoly::omega(2, 2) * (i3 * i3);
  if (limit.is_zero() || target.is_zero()) {
    throw NormalizationError("k -> 0 limit of the extracted invariant vanishes");
  }
  const Rational lambda = limit.leading_coefficient() / target.leading_coefficient();
  if (!(limit - lambda * target).is_zero()) {
    throw NormalizationError("k -> 0 limit is not proportional to I_3^2 for ratios (" +
                             std::to_string(nx) + "," + std::to_string(ny) + ")");
  }
  PhasePoly j3 = divide_exact(difference, lambda, 2);
  return {lambda, std::move(j3), std::move(i3)};
}

PhasePoly observable_poly(const Constants& constants, const ObservableRef& obs) {
  const int dof = constants.dof();
  switch (obs.kind) {
    case ObservableKind::Energy:
      detail::check_index(obs.i, dof);
      return constants.E[obs.i];
    case ObservableKind::Hamiltonian:
      return constants.H3;
    case ObservableKind::ReM:
      detail::check_index(obs.i, dof);
      detail::check_index(obs.j, dof);
      return constants.mij(obs.i, obs.j).re;
    case ObservableKind::ImM:
      detail::check_index(obs.i, dof);
      detail::check_index(obs.j, dof);
      return constants.mij(obs.i, obs.j).im;
    case ObservableKind::ReK:
      detail::check_index(obs.i, dof);
      detail::check_index(obs.j, dof);
      return constants.kij(obs.i, obs.j).re;
    case ObservableKind::ImK:
      detail::check_index(obs.i, dof);
      detail::check_index(obs.j, dof);
      return constants.kij(obs.i, obs.j).im;
    case ObservableKind::PaperJ3:
      throw Error("J3 polynomials come from general_j3 / case_j3_poly");
  }
  throw Error("unknown observable kind");
}

}  // namespace rosc::symbolic
