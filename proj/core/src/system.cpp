#include "rosc/system.hpp"

#include <algorithm>
#include <cmath>

namespace rosc {

SystemParams::SystemParams(double omega0_, std::vector<int> ratios_, std::vector<double> strengths_)
    : omega0(omega0_), ratios(std::move(ratios_)), strengths(std::move(strengths_)) {
  if (!(omega0 > 0.0)) {
    throw Error("base frequency must be strictly positive");
  }
  if (ratios.empty()) {
    throw Error("at least one degree of freedom is required");
  }
  if (ratios.size() != strengths.size()) {
    throw Error("ratios and strengths must have equal length");
  }
  for (int n : ratios) {
    if (n < 1) {
      throw Error("frequency ratios must be positive integers");
    }
  }
  for (double k : strengths) {
    if (!std::isfinite(k)) {
      throw Error("strengths must be finite");
    }
  }
}

bool SystemParams::all_strengths_zero() const {
  return std::all_of(strengths.begin(), strengths.end(), [](double k) { return k == 0.0; });
}

bool SystemParams::all_ratios_one() const {
  return std::all_of(ratios.begin(), ratios.end(), [](int n) { return n == 1; });
}

int SystemParams::max_ratio() const { return *std::max_element(ratios.begin(), ratios.end()); }

PhaseState::PhaseState(std::vector<double> x, std::vector<double> p)
    : positions(std::move(x)), momenta(std::move(p)) {
  if (positions.size() != momenta.size()) {
    throw Error("positions and momenta must have equal length");
  }
}

namespace detail {

void check_index(int i, int dof) {
  if (i < 0 || i >= dof) {
    throw IndexError("degree-of-freedom index " + std::to_string(i) + " out of range [0, " +
                     std::to_string(dof) + ")");
  }
}

void check_state(const SystemParams& params, const PhaseState& state) {
  if (state.dof() != params.dof() || state.momenta.size() != state.positions.size()) {
    throw Error("state dimension does not match system parameters");
  }
}

void check_regular(const SystemParams& params, const PhaseState& state, int i) {
  if (params.strengths[i] != 0.0 && state.positions[i] == 0.0) {
    throw SingularStateError("x_" + std::to_string(i + 1) +
                             " = 0 with nonzero centrifugal strength");
  }
}

}  // namespace detail
}  // namespace rosc
