#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rosc/system.hpp"

namespace rosc::dynamics {

/// Hamiltonian vector field of H3:
///   dx_i/dt = p_i,   dp_i/dt = -omega0^2 n_i^2 x_i + k_i / x_i^3.
/// Requires k_i >= 0 (negative strengths can reach the singularity and are
/// rejected by this module; the algebraic modules accept them).
struct Tangent {
  std::vector<double> dx;
  std::vector<double> dp;
};
Tangent equations_of_motion(const SystemParams& params, const PhaseState& state);

struct IntegrateOptions {
  double tolerance = 1e-12;     // absolute and relative step-error tolerance
  double output_stride = 0.0;   // sample spacing; 0 -> t_end / 1000
  double singular_floor = 1e-8; // minimum |x_i| allowed where k_i > 0
  std::size_t max_steps = 50'000'000;
};

struct Trajectory {
  SystemParams params;
  std::vector<double> times;        // strictly increasing, starting at 0
  std::vector<PhaseState> states;   // same length as times

  std::size_t size() const { return times.size(); }
  const PhaseState& initial() const { return states.front(); }
  const PhaseState& final_state() const { return states.back(); }
};

/// Adaptive integration of the equations of motion from state0 over
/// [0, t_end], sampled every output_stride (plus the exact endpoint).
/// Deterministic: identical inputs give identical output within one build.
Trajectory integrate(const SystemParams& params, const PhaseState& state0, double t_end,
                     const IntegrateOptions& options = {});

/// A named scalar function of (params, state), measured along trajectories.
struct NamedObservable {
  std::string name;
  std::function<double(const SystemParams&, const PhaseState&)> eval;
};

/// E_i for every dof and (re, im) of every off-diagonal M_ij with i < j in
/// row-major order; when every strength is zero the linear K_ij pairs are
/// appended as well.
std::vector<NamedObservable> standard_observables(const SystemParams& params);

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;    // max_abs_dev / max(1, |initial|)
  double max_abs_value = 0.0;  // scale of the observable along the trajectory

  // drift relative to the observable's own scale; equals max_rel_dev when
  // the magnitude never exceeds |initial|
  double scaled_dev() const;
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  double worst_rel() const;
};

/// Deviations of each observable from its value at time 0, over the whole
/// trajectory.
DriftReport drift_report(const Trajectory& trajectory, const std::vector<NamedObservable>& observables);

/// Dense access to the flow by re-integration from the initial state;
/// evaluation at arbitrary t is deterministic.
class FlowMap {
 public:
  FlowMap(SystemParams params, PhaseState initial, double tolerance = 1e-12);
  PhaseState at(double t) const;
  const PhaseState& initial() const { return initial_; }

 private:
  SystemParams params_;
  PhaseState initial_;
  double tolerance_;
};

struct ClosureOptions {
  double tolerance = 1e-6;           // Euclidean distance on (x, p)
  double horizon = 0.0;              // 0 -> 2.5 * 2 pi / omega0
  double coarse_stride = 0.0;        // 0 -> pi / (50 * omega0 * max n_i)
  double integrator_tolerance = 1e-12;
};

/// Smallest t > 0 at which the trajectory returns to its initial state
/// within the tolerance: coarse scan at the given stride, then ternary
/// refinement of the distance minimum. Returns nullopt when no return is
/// found within the horizon.
std::optional<double> closure_time(const SystemParams& params, const PhaseState& initial,
                                   const ClosureOptions& options = {});

/// CSV with exact header t,x1,..,xn,p1,..,pn,E1,..,En,reM12,imM12,...
/// (off-diagonal pairs in row-major i<j order; linear K_ij pairs appended
/// when all strengths are zero). Floating-point fields use the shortest
/// round-trip representation.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace rosc::dynamics
