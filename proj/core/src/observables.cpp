#include "rosc/observables.hpp"

#include <cmath>

#include "rosc/cases.hpp"

namespace rosc {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::complex<double> factor_value(const SystemParams& params, const PhaseState& state, int i,
                                  bool deformed) {
  const double x = state.positions[i];
  const double p = state.momenta[i];
  const double nw = params.ratios[i] * params.omega0;
  if (!deformed) {
    return {p, nw * x};
  }
  double re = p * p - nw * nw * x * x;
  if (params.strengths[i] != 0.0) {
    re += params.strengths[i] / (x * x);
  }
  return {re, 2.0 * nw * x * p};
}

/// (z_i)^{n_j} (z_j^*)^{n_i}; diagonal handled in real arithmetic so that
/// Im is exactly zero.
ComplexObservable power_product(const SystemParams& params, const PhaseState& state, int i, int j,
                                bool deformed, const char* tag) {
  detail::check_index(i, params.dof());
  detail::check_index(j, params.dof());
  const std::complex<double> zi = factor_value(params, state, i, deformed);
  const std::string label = std::string(tag) + "_" + idx(i) + idx(j);
  if (i == j) {
    const double mod2 = std::norm(zi);
    double value = 1.0;
    for (int e = 0; e < params.ratios[i]; ++e) value *= mod2;
    return {value, 0.0, label};
  }
  const std::complex<double> zj = factor_value(params, state, j, deformed);
  const std::complex<double> w =
      complex_ipow(zi, params.ratios[j]) * complex_ipow(std::conj(zj), params.ratios[i]);
  return {w.real(), w.imag(), label};
}

}  // namespace

std::complex<double> complex_ipow(std::complex<double> z, int e) {
  std::complex<double> acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

double energy(const SystemParams& params, const PhaseState& state, int i) {
  detail::check_state(params, state);
  detail::check_index(i, params.dof());
  detail::check_regular(params, state, i);
  const double x = state.positions[i];
  const double p = state.momenta[i];
  const double nw = params.ratios[i] * params.omega0;
  double e = 0.5 * p * p + 0.5 * nw * nw * x * x;
  if (params.strengths[i] != 0.0) {
    e += params.strengths[i] / (2.0 * x * x);
  }
  return e;
}

double hamiltonian(const SystemParams& params, const PhaseState& state) {
  double h = 0.0;
  for (int i = 0; i < params.dof(); ++i) {
    h += energy(params, state, i);
  }
  return h;
}

ComplexObservable linear_factor(const SystemParams& params, const PhaseState& state, int i) {
  detail::check_state(params, state);
  detail::check_index(i, params.dof());
  const auto z = factor_value(params, state, i, false);
  return {z.real(), z.imag(), "K_" + idx(i)};
}

ComplexObservable linear_constant(const SystemParams& params, const PhaseState& state, int i, int j) {
  detail::check_state(params, state);
  return power_product(params, state, i, j, false, "K");
}

ComplexObservable quadratic_factor(const SystemParams& params, const PhaseState& state, int i) {
  detail::check_state(params, state);
  detail::check_index(i, params.dof());
  const auto z = factor_value(params, state, i, false);
  const auto z2 = z * z;
  return {z2.real(), z2.imag(), "K2_" + idx(i)};
}

ComplexObservable deformed_factor(const SystemParams& params, const PhaseState& state, int i) {
  detail::check_state(params, state);
  detail::check_index(i, params.dof());
  detail::check_regular(params, state, i);
  const auto z = factor_value(params, state, i, true);
  return {z.real(), z.imag(), "M_" + idx(i)};
}

ComplexObservable deformed_constant(const SystemParams& params, const PhaseState& state, int i, int j) {
  detail::check_state(params, state);
  detail::check_index(i, params.dof());
  detail::check_index(j, params.dof());
  detail::check_regular(params, state, i);
  detail::check_regular(params, state, j);
  return power_product(params, state, i, j, true, "M");
}

std::string ObservableRef::name() const {
  switch (kind) {
    case ObservableKind::Energy: return "E" + idx(i);
    case ObservableKind::Hamiltonian: return "H";
    case ObservableKind::ReM: return "reM" + idx(i) + idx(j);
    case ObservableKind::ImM: return "imM" + idx(i) + idx(j);
    case ObservableKind::ReK: return "reK" + idx(i) + idx(j);
    case ObservableKind::ImK: return "imK" + idx(i) + idx(j);
    case ObservableKind::PaperJ3: return "J3";
  }
  return "?";
}

double evaluate(const ObservableRef& obs, const SystemParams& params, const PhaseState& state) {
  switch (obs.kind) {
    case ObservableKind::Energy:
      return energy(params, state, obs.i);
    case ObservableKind::Hamiltonian:
      return hamiltonian(params, state);
    case ObservableKind::ReM:
      return deformed_constant(params, state, obs.i, obs.j).re;
    case ObservableKind::ImM:
      return deformed_constant(params, state, obs.i, obs.j).im;
    case ObservableKind::ReK:
      return linear_constant(params, state, obs.i, obs.j).re;
    case ObservableKind::ImK:
      return linear_constant(params, state, obs.i, obs.j).im;
    case ObservableKind::PaperJ3: {
      const auto id = case_for_ratios(params.ratios);
      if (!id) {
        throw CaseMismatchError("no registry case for the given ratios");
      }
      return paper_invariant_j3(*id, params, state);
    }
  }
  throw Error("unknown observable kind");
}

}  // namespace rosc
