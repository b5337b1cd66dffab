#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rosc/errors.hpp"

namespace rosc {

/// Parameters of the rational anisotropic oscillator with inverse-square
/// terms:
///
///   H = 1/2 sum_i p_i^2 + 1/2 omega0^2 sum_i n_i^2 x_i^2
///       + 1/2 sum_i k_i / x_i^2
///
/// The i-th frequency is n_i * omega0 with n_i a positive integer, so all
/// frequency ratios are rational. Ratios are taken as given; no gcd
/// reduction is applied.
struct SystemParams {
  double omega0 = 1.0;
  std::vector<int> ratios;        // n_1 .. n_n, each >= 1
  std::vector<double> strengths;  // k_1 .. k_n, any real

  SystemParams() = default;
  SystemParams(double omega0_, std::vector<int> ratios_, std::vector<double> strengths_);

  int dof() const { return static_cast<int>(ratios.size()); }
  bool all_strengths_zero() const;
  bool all_ratios_one() const;
  int max_ratio() const;
};

/// A point in the 2n-dimensional phase space. Unit mass: momenta coincide
/// with velocities.
struct PhaseState {
  std::vector<double> positions;
  std::vector<double> momenta;

  PhaseState() = default;
  PhaseState(std::vector<double> x, std::vector<double> p);

  int dof() const { return static_cast<int>(positions.size()); }
};

/// Evaluated complex value of one of the factorization quantities, tagged
/// with which quantity it is ("K_1", "M_12", ...).
struct ComplexObservable {
  double re = 0.0;
  double im = 0.0;
  std::string label;

  double modulus2() const { return re * re + im * im; }
  ComplexObservable conj() const { return {re, -im, label}; }
  std::complex<double> value() const { return {re, im}; }
};

namespace detail {
void check_index(int i, int dof);
void check_state(const SystemParams& params, const PhaseState& state);
/// Throws SingularStateError if x_i == 0 while k_i != 0.
void check_regular(const SystemParams& params, const PhaseState& state, int i);
}  // namespace detail

}  // namespace rosc
