#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosc/rational.hpp"
#include "rosc/system.hpp"

namespace rosc {

/// The three closed-form cases with explicit printed J_3 expressions.
enum class CaseId {
  Iso11,    // 1:1 central oscillator
  Aniso21,  // 2:1 oscillator
  Aniso31,  // 3:1 oscillator
};

std::string to_string(CaseId id);
std::optional<CaseId> parse_case_id(const std::string& text);  // "iso_1_1", ...

/// One additive piece of the closed-form J_3: coefficient k1^a k2^b times a
/// rational function of the phase-space point.
struct J3Term {
  std::string label;  // "I3^2", "J3^(10)", ...
  int k1_power = 0;
  int k2_power = 0;
  double (*eval)(double omega0, double x, double y, double px, double py) = nullptr;
};

/// Registry entry for one case: the lambda coefficient in
///   Re(M_xy) = 2^(nx+ny) E_x^ny E_y^nx + lambda omega0^2 J_3,
/// the normalizer c relating the linear invariant to Im(K_xy) as
///   I_3 = c * Im(K_xy) / omega0,
/// and term-by-term evaluators for the printed J_3.
struct CaseFormula {
  CaseId id;
  int nx = 1;
  int ny = 1;
  Rational lambda;
  Rational i3_normalizer;
  std::vector<J3Term> j3_terms;

  /// I_3 of the associated linear system, from its printed closed form.
  double i3(const SystemParams& params, const PhaseState& state) const;
};

const CaseFormula& case_formula(CaseId id);
const std::vector<CaseFormula>& case_registry();

/// Looks up the registry case whose (n_x, n_y) match the given ratios.
std::optional<CaseId> case_for_ratios(const std::vector<int>& ratios);

/// Evaluates the printed closed-form J_3 = I_3^2 + sum k1^a k2^b J_3^(ab),
/// term by term. Requires dof = 2 and ratios matching the case.
double paper_invariant_j3(CaseId id, const SystemParams& params, const PhaseState& state);

/// Recovers J_3 from the factorization side:
///   J_3 = (Re(M_xy) - 2^(nx+ny) E_x^ny E_y^nx) / (lambda omega0^2).
/// Agrees with paper_invariant_j3 up to floating-point roundoff.
double extract_j3(CaseId id, const SystemParams& params, const PhaseState& state);

}  // namespace rosc
