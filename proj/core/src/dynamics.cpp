#include "rosc/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "rosc/observables.hpp"

namespace rosc::dynamics {

namespace {

using StateVec = std::vector<double>;  // [x_1..x_n, p_1..p_n]

StateVec pack(const PhaseState& state) {
  StateVec s(state.positions);
  s.insert(s.end(), state.momenta.begin(), state.momenta.end());
  return s;
}

PhaseState unpack(const StateVec& s) {
  const std::size_t n = s.size() / 2;
  return PhaseState(std::vector<double>(s.begin(), s.begin() + n),
                    std::vector<double>(s.begin() + n, s.end()));
}

void check_strengths(const SystemParams& params) {
  for (double k : params.strengths) {
    if (k < 0.0) {
      throw NegativeStrengthError(
          "trajectory integration requires k_i >= 0 (collision orbits are reachable otherwise)");
    }
  }
}

struct Rhs {
  const SystemParams& params;
  double floor;

  void check_floor(const StateVec& s) const {
    for (int i = 0; i < params.dof(); ++i) {
      if (params.strengths[i] > 0.0 && std::abs(s[i]) < floor) {
        throw SingularityApproachError("|x_" + std::to_string(i + 1) +
                                       "| fell below the singularity floor");
      }
    }
  }

  void operator()(const StateVec& s, StateVec& dsdt, double /*t*/) const {
    const int n = params.dof();
    const double w2 = params.omega0 * params.omega0;
    check_floor(s);
    for (int i = 0; i < n; ++i) {
      const double x = s[i];
      const double k = params.strengths[i];
      dsdt[i] = s[n + i];
      double force = -w2 * params.ratios[i] * params.ratios[i] * x;
      if (k > 0.0) {
        force += k / (x * x * x);
      }
      dsdt[n + i] = force;
    }
  }
};

using ErrorStepper = boost::numeric::odeint::runge_kutta_fehlberg78<StateVec>;
using Controlled = boost::numeric::odeint::controlled_runge_kutta<ErrorStepper>;

struct Advancer {
  Rhs rhs;
  Controlled stepper;
  std::size_t max_steps;
  std::size_t steps_taken = 0;
  double dt;

  Advancer(const SystemParams& params, double tolerance, double floor, std::size_t max_steps_)
      : rhs{params, floor},
        stepper(boost::numeric::odeint::default_error_checker<
                double, boost::numeric::odeint::range_algebra,
                boost::numeric::odeint::default_operations>(tolerance, tolerance)),
        max_steps(max_steps_),
        dt(1e-3) {}

  void advance(StateVec& s, double& t, double target) {
    while (t < target) {
      const bool clipped = dt > target - t;
      double trial = clipped ? target - t : dt;
      const auto result = stepper.try_step(rhs, s, t, trial);
      if (result == boost::numeric::odeint::success) {
        // try_step leaves the suggested next size in `trial`; a clipped
        // final step must not shrink the running suggestion.
        dt = clipped ? std::max(dt, trial) : trial;
      } else {
        dt = trial;
        if (trial < 1e-14 * std::max(1.0, std::abs(t))) {
          throw StepFailureError("step size underflow while meeting the tolerance");
        }
      }
      if (++steps_taken > max_steps) {
        throw StepFailureError("exceeded the maximum number of integration steps");
      }
      for (double v : s) {
        if (!std::isfinite(v)) {
          throw StepFailureError("non-finite state during integration");
        }
      }
      rhs.check_floor(s);
    }
  }
};

double ipow(double base, int exp) {
  if (exp < 0) return 1.0 / ipow(base, -exp);
  double acc = 1.0;
  while (exp > 0) {
    if (exp & 1) acc *= base;
    base *= base;
    exp >>= 1;
  }
  return acc;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double distance(const PhaseState& a, const PhaseState& b) {
  double sum = 0.0;
  for (int i = 0; i < a.dof(); ++i) {
    const double dx = a.positions[i] - b.positions[i];
    const double dp = a.momenta[i] - b.momenta[i];
    sum += dx * dx + dp * dp;
  }
  return std::sqrt(sum);
}

}  // namespace

Tangent equations_of_motion(const SystemParams& params, const PhaseState& state) {
  detail::check_state(params, state);
  check_strengths(params);
  const int n = params.dof();
  Tangent tangent{std::vector<double>(n), std::vector<double>(n)};
  const double w2 = params.omega0 * params.omega0;
  for (int i = 0; i < n; ++i) {
    detail::check_regular(params, state, i);
    tangent.dx[i] = state.momenta[i];
    tangent.dp[i] = -w2 * params.ratios[i] * params.ratios[i] * state.positions[i];
    if (params.strengths[i] != 0.0) {
      tangent.dp[i] += params.strengths[i] / ipow(state.positions[i], 3);
    }
  }
  return tangent;
}

Trajectory integrate(const SystemParams& params, const PhaseState& state0, double t_end,
                     const IntegrateOptions& options) {
  detail::check_state(params, state0);
  check_strengths(params);
  for (int i = 0; i < params.dof(); ++i) detail::check_regular(params, state0, i);
  if (!(t_end > 0.0)) throw Error("integration horizon must be positive");
  if (!(options.tolerance > 0.0)) throw Error("tolerance must be positive");

  const double stride = options.output_stride > 0.0 ? options.output_stride : t_end / 1000.0;

  Trajectory trajectory;
  trajectory.params = params;
  trajectory.times.push_back(0.0);
  trajectory.states.push_back(state0);

  Advancer advancer(params, options.tolerance, options.singular_floor, options.max_steps);
  StateVec s = pack(state0);
  double t = 0.0;
  for (std::size_t k = 1;; ++k) {
    const double target = std::min(t_end, static_cast<double>(k) * stride);
    advancer.advance(s, t, target);
    trajectory.times.push_back(target);
    trajectory.states.push_back(unpack(s));
    if (target >= t_end) break;
  }
  return trajectory;
}

std::vector<NamedObservable> standard_observables(const SystemParams& params) {
  std::vector<NamedObservable> observables;
  const int n = params.dof();
  for (int i = 0; i < n; ++i) {
    ObservableRef ref{ObservableKind::Energy, i, 0};
    observables.push_back({ref.name(), [i](const SystemParams& p, const PhaseState& s) {
                             return energy(p, s, i);
                           }});
  }
  auto add_pairs = [&](ObservableKind re_kind, ObservableKind im_kind) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (ObservableKind kind : {re_kind, im_kind}) {
          ObservableRef ref{kind, i, j};
          observables.push_back({ref.name(), [ref](const SystemParams& p, const PhaseState& s) {
                                   return evaluate(ref, p, s);
                                 }});
        }
      }
    }
  };
  add_pairs(ObservableKind::ReM, ObservableKind::ImM);
  if (params.all_strengths_zero()) {
    add_pairs(ObservableKind::ReK, ObservableKind::ImK);
  }
  return observables;
}

double DriftEntry::scaled_dev() const {
  return max_abs_dev / std::max({1.0, std::abs(initial), max_abs_value});
}

double DriftReport::worst_rel() const {
  double worst = 0.0;
  for (const auto& entry : entries) worst = std::max(worst, entry.max_rel_dev);
  return worst;
}

DriftReport drift_report(const Trajectory& trajectory, const std::vector<NamedObservable>& observables) {
  if (trajectory.size() == 0) throw Error("empty trajectory");
  DriftReport report;
  for (const auto& obs : observables) {
    DriftEntry entry;
    entry.name = obs.name;
    entry.initial = obs.eval(trajectory.params, trajectory.states.front());
    for (const auto& state : trajectory.states) {
      const double value = obs.eval(trajectory.params, state);
      entry.max_abs_dev = std::max(entry.max_abs_dev, std::abs(value - entry.initial));
      entry.max_abs_value = std::max(entry.max_abs_value, std::abs(value));
    }
    entry.max_rel_dev = entry.max_abs_dev / std::max(1.0, std::abs(entry.initial));
    report.entries.push_back(std::move(entry));
  }
  return report;
}

FlowMap::FlowMap(SystemParams params, PhaseState initial, double tolerance)
    : params_(std::move(params)), initial_(std::move(initial)), tolerance_(tolerance) {
  detail::check_state(params_, initial_);
  check_strengths(params_);
}

PhaseState FlowMap::at(double t) const {
  if (t < 0.0) throw Error("flow evaluation requires t >= 0");
  if (t == 0.0) return initial_;
  IntegrateOptions options;
  options.tolerance = tolerance_;
  Advancer advancer(params_, options.tolerance, options.singular_floor, options.max_steps);
  StateVec s = pack(initial_);
  double t_now = 0.0;
  advancer.advance(s, t_now, t);
  return unpack(s);
}

std::optional<double> closure_time(const SystemParams& params, const PhaseState& initial,
                                   const ClosureOptions& options) {
  const Tangent tangent = equations_of_motion(params, initial);
  double speed = 0.0;
  for (int i = 0; i < params.dof(); ++i) {
    speed += tangent.dx[i] * tangent.dx[i] + tangent.dp[i] * tangent.dp[i];
  }
  if (std::sqrt(speed) < 1e-12) {
    throw Error("closure search requires a non-stationary initial state");
  }

  const double pi = std::numbers::pi;
  const double stride = options.coarse_stride > 0.0
                            ? options.coarse_stride
                            : pi / (50.0 * params.omega0 * params.max_ratio());
  const double horizon =
      options.horizon > 0.0 ? options.horizon : 2.5 * (2.0 * pi / params.omega0);

  IntegrateOptions int_options;
  int_options.tolerance = options.integrator_tolerance;
  int_options.output_stride = stride;
  const Trajectory scan = integrate(params, initial, horizon, int_options);

  std::vector<double> dist(scan.size());
  for (std::size_t k = 0; k < scan.size(); ++k) dist[k] = distance(scan.states[k], initial);

  const FlowMap flow(params, initial, options.integrator_tolerance);
  auto refine = [&](double lo, double hi) {
    // golden-section minimization of the distance to the initial state
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = distance(flow.at(c), initial), fd = distance(flow.at(d), initial);
    while (b - a > 1e-10) {
      if (fc < fd) {
        b = d; d = c; fd = fc;
        c = b - phi * (b - a);
        fc = distance(flow.at(c), initial);
      } else {
        a = c; c = d; fc = fd;
        d = a + phi * (b - a);
        fd = distance(flow.at(d), initial);
      }
    }
    const double t_min = 0.5 * (a + b);
    return std::make_pair(t_min, distance(flow.at(t_min), initial));
  };

  for (std::size_t k = 1; k + 1 < scan.size(); ++k) {
    if (dist[k] <= dist[k - 1] && dist[k] <= dist[k + 1]) {
      const auto [t_min, d_min] = refine(scan.times[k - 1], scan.times[k + 1]);
      if (d_min < options.tolerance && t_min > stride * 0.5) {
        return t_min;
      }
    }
  }
  return std::nullopt;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const SystemParams& params = trajectory.params;
  const int n = params.dof();

  out << "t";
  for (int i = 0; i < n; ++i) out << ",x" << i + 1;
  for (int i = 0; i < n; ++i) out << ",p" << i + 1;
  for (int i = 0; i < n; ++i) out << ",E" << i + 1;
  const auto observables = standard_observables(params);
  for (std::size_t c = static_cast<std::size_t>(n); c < observables.size(); ++c) {
    out << "," << observables[c].name;
  }
  out << "\n";

  for (std::size_t row = 0; row < trajectory.size(); ++row) {
    const PhaseState& state = trajectory.states[row];
    out << format_double(trajectory.times[row]);
    for (int i = 0; i < n; ++i) out << "," << format_double(state.positions[i]);
    for (int i = 0; i < n; ++i) out << "," << format_double(state.momenta[i]);
    for (const auto& obs : observables) {
      out << "," << format_double(obs.eval(params, state));
    }
    out << "\n";
  }
}

}  // namespace rosc::dynamics
