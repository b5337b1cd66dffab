#pragma once

#include <string>
#include <vector>

#include "rosc/system.hpp"

namespace rosc {

/// One-degree-of-freedom energy
///   E_i = 1/2 p_i^2 + 1/2 omega0^2 n_i^2 x_i^2 + k_i / (2 x_i^2).
/// The centrifugal term is skipped when k_i == 0, so states with x_i = 0 are
/// fine in that case. Indices are 0-based throughout.
double energy(const SystemParams& params, const PhaseState& state, int i);

/// H = sum_i E_i.
double hamiltonian(const SystemParams& params, const PhaseState& state);

/// K_i = p_i + i n_i omega0 x_i, the complex factor of the associated linear
/// system (ignores k_i).
ComplexObservable linear_factor(const SystemParams& params, const PhaseState& state, int i);

/// K_ij = (K_i)^{n_j} (K_j^*)^{n_i}. Conserved by the linear system. The
/// diagonal K_ii = |K_i|^{2 n_i} is computed in real arithmetic, so its
/// imaginary part is exactly zero.
ComplexObservable linear_constant(const SystemParams& params, const PhaseState& state, int i, int j);

/// K2_i = K_i^2 = (p_i^2 - n_i^2 omega0^2 x_i^2) + 2 i n_i omega0 x_i p_i.
ComplexObservable quadratic_factor(const SystemParams& params, const PhaseState& state, int i);

/// M_i = (p_i^2 - n_i^2 omega0^2 x_i^2 + k_i / x_i^2) + 2 i n_i omega0 x_i p_i.
/// Reduces to K2_i when k_i = 0. Satisfies
/// |M_i|^2 = 4 (E_i^2 - k_i n_i^2 omega0^2).
ComplexObservable deformed_factor(const SystemParams& params, const PhaseState& state, int i);

/// M_ij = (M_i)^{n_j} (M_j^*)^{n_i}. Conserved by the full system; the
/// diagonal M_ii is real (computed exactly so, as for K_ii).
ComplexObservable deformed_constant(const SystemParams& params, const PhaseState& state, int i, int j);

/// Names a scalar phase-space function built from the factorization
/// quantities, for drift measurement, gradients, and rank tests.
enum class ObservableKind {
  Energy,       // E_i
  Hamiltonian,  // H
  ReM,          // Re(M_ij); diagonal M_ii is the real constant itself
  ImM,          // Im(M_ij)
  ReK,          // Re(K_ij)
  ImK,          // Im(K_ij)
  PaperJ3,      // closed-form J_3 of a registry case (dof 2 only)
};

struct ObservableRef {
  ObservableKind kind = ObservableKind::Energy;
  int i = 0;
  int j = 0;

  std::string name() const;  // "E1", "reM12", "imK23", "H", "J3"
};

/// Direct numeric evaluation (complex arithmetic, no symbolic machinery).
double evaluate(const ObservableRef& obs, const SystemParams& params, const PhaseState& state);

/// Integer power of a complex number by binary powering (exact operation
/// count, no exp/log round trip). e >= 0.
std::complex<double> complex_ipow(std::complex<double> z, int e);

}  // namespace rosc
