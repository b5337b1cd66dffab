#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosc/cases.hpp"
#include "rosc/observables.hpp"
#include "rosc/polynomial.hpp"

namespace rosc::symbolic {

inline constexpr int kDefaultDegreeLimit = 40;

/// One exact identity check. residual is empty when the check passed,
/// otherwise the rendered nonzero polynomial.
struct Check {
  std::string name;
  bool passed = false;
  std::string residual;
};

struct Report {
  std::vector<Check> checks;

  bool all_passed() const;
  void add(std::string name, const PhasePoly& residual);
  void add(std::string name, const PhasePolyC& residual);
  void add_value(std::string name, bool passed, std::string detail);
};

/// All factorization quantities for the given frequency ratios, fully
/// expanded with omega0 and the strengths k_i symbolic.
struct Constants {
  std::vector<int> ratios;

  std::vector<PhasePolyC> K;   // K_i = p_i + i n_i omega0 x_i
  std::vector<PhasePolyC> K2;  // K_i^2
  std::vector<PhasePolyC> M;   // deformed quadratic factor
  std::vector<PhasePoly> E;    // one-dof energies (with k_i)

  // Row-major dof x dof:
  std::vector<PhasePolyC> Kij;  // (K_i)^{n_j} (K_j^*)^{n_i}; the anisotropic tensor
  std::vector<PhasePolyC> Tij;  // isotropic tensor K_i K_j^* built with unit ratios
  std::vector<PhasePolyC> Mij;  // (M_i)^{n_j} (M_j^*)^{n_i}

  PhasePoly H1;  // isotropic oscillator (unit ratios, no strengths)
  PhasePoly H2;  // anisotropic oscillator (no strengths)
  PhasePoly H3;  // full Hamiltonian

  int dof() const { return static_cast<int>(ratios.size()); }
  const PhasePolyC& kij(int i, int j) const { return Kij[i * dof() + j]; }
  const PhasePolyC& tij(int i, int j) const { return Tij[i * dof() + j]; }
  const PhasePolyC& mij(int i, int j) const { return Mij[i * dof() + j]; }
};

/// Expands every constant for the given ratios. Throws DegreeLimitError when
/// some pair would expand past degree 2(n_i + n_j) > degree_limit.
Constants build_constants(const std::vector<int>& ratios, int degree_limit = kDefaultDegreeLimit);

/// Single-quantity builders (dof-wide generator layout).
PhasePoly energy_poly(const std::vector<int>& ratios, int i);
PhasePolyC linear_factor_poly(const std::vector<int>& ratios, int i);
PhasePolyC deformed_factor_poly(const std::vector<int>& ratios, int i);

/// {M_ij, H3} = 0 for all pairs, plus {K_ij, H2} = 0 and {T_ij, H1} = 0,
/// each as an exact zero-polynomial assertion.
Report verify_constancy(const std::vector<int>& ratios, int degree_limit = kDefaultDegreeLimit);

/// {K_i, H2} = i n_i omega0 K_i, {K_i^2, H2} = 2 i n_i omega0 K_i^2, and
/// {M_i, H3} = 2 i n_i omega0 M_i, exactly.
Report verify_evolution(const std::vector<int>& ratios, int degree_limit = kDefaultDegreeLimit);

/// Moduli identity |M_i|^2 - 4 (E_i^2 - k_i n_i^2 omega0^2) = 0, exactly.
Report verify_moduli(const std::vector<int>& ratios, int degree_limit = kDefaultDegreeLimit);

enum class DeformationCondition {
  Step2Ode,         // x F' + 2 F = 0
  Section33System,  // h' - 2 V' = 0  and  4 h + x h' + 2 x V' = 0
};

/// A trial deformation profile in a single coordinate. candidate is F (or h);
/// partner is V, required by Section33System.
struct DeformationSpec {
  DeformationCondition condition = DeformationCondition::Step2Ode;
  PhasePoly candidate;
  std::optional<PhasePoly> partner;
  int coordinate = 0;
};

/// Residual polynomial(s) of the condition; all zero iff the candidate
/// satisfies it.
std::vector<PhasePoly> deformation_residual(const DeformationSpec& spec);

/// Printed closed forms of the registry cases as exact polynomials.
PhasePoly case_i3_poly(CaseId id);
PhasePoly case_j3_poly(CaseId id);

/// Expands Re(M_xy), subtracts 2^(nx+ny) E_x^ny E_y^nx + lambda omega0^2 J_3
/// built from the printed closed form, and asserts the zero polynomial; also
/// checks the k -> 0 limit of J_3 is exactly I_3^2, and that the general
/// extraction reproduces the registry lambda and J_3.
Report match_paper_case(CaseId id);

struct GeneralJ3 {
  Rational lambda;
  PhasePoly j3;
  PhasePoly i3;  // primitive part of Im(K_xy)/omega0 (sign fixed by the
                 // canonical leading coefficient; only I_3^2 is used)
};

/// Computes lambda and J_3 for arbitrary ratios (n_x, n_y) from
///   lambda omega0^2 J_3 = Re(M_xy) - 2^(nx+ny) E_x^ny E_y^nx,
/// normalizing so that J_3 -> I_3^2 as k -> 0. Throws NormalizationError if
/// that limit is not proportional to I_3^2.
GeneralJ3 general_j3(int nx, int ny, int degree_limit = kDefaultDegreeLimit);

/// The expanded polynomial for a named observable (PaperJ3 is not handled
/// here; see general_j3 / case_j3_poly).
PhasePoly observable_poly(const Constants& constants, const ObservableRef& obs);

}  // namespace rosc::symbolic
