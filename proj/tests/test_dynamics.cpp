#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rosc/dynamics.hpp"
#include "rosc/observables.hpp"

using namespace rosc;
using namespace rosc::dynamics;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams reference_params() { return SystemParams(1.0, {2, 1}, {0.5, 1.3}); }
PhaseState reference_state() { return PhaseState({1.0, 1.0}, {0.0, 0.5}); }

}  // namespace

TEST_CASE("equations of motion") {
  const SystemParams params(1.0, {2}, {1.0});
  const auto tangent = equations_of_motion(params, PhaseState({1.0}, {0.0}));
  CHECK(tangent.dx[0] == 0.0);
  CHECK(tangent.dp[0] == doctest::Approx(-3.0).epsilon(1e-15));

  // equilibrium: p = 0, x^4 = k / (n^2 omega0^2)
  const SystemParams iso(1.0, {1}, {1.0});
  const auto still = equations_of_motion(iso, PhaseState({1.0}, {0.0}));
  CHECK(still.dx[0] == 0.0);
  CHECK(still.dp[0] == doctest::Approx(0.0).epsilon(1e-15));

  const SystemParams free_params(1.0, {1}, {0.0});
  const auto crossing = equations_of_motion(free_params, PhaseState({0.0}, {1.0}));
  CHECK(crossing.dx[0] == 1.0);
  CHECK(crossing.dp[0] == 0.0);

  CHECK_THROWS_AS((void)equations_of_motion(SystemParams(1.0, {1}, {-1.0}), PhaseState({1.0}, {0.0})),
                  NegativeStrengthError);
  CHECK_THROWS_AS((void)equations_of_motion(iso, PhaseState({0.0}, {0.0})), SingularStateError);
}

TEST_CASE("integration preconditions") {
  const SystemParams params = reference_params();
  CHECK_THROWS_AS((void)integrate(params, reference_state(), 0.0), Error);
  CHECK_THROWS_AS((void)integrate(params, reference_state(), -1.0), Error);
  CHECK_THROWS_AS((void)integrate(SystemParams(1.0, {2, 1}, {-1.0, 0.0}), reference_state(), 1.0),
                  NegativeStrengthError);
}

TEST_CASE("harmonic oscillator returns after one period") {
  const SystemParams params(1.0, {1}, {0.0});
  const Trajectory traj = integrate(params, PhaseState({1.0}, {0.0}), 2.0 * kPi);
  const PhaseState& last = traj.final_state();
  CHECK(std::abs(last.positions[0] - 1.0) < 1e-9);
  CHECK(std::abs(last.momenta[0]) < 1e-9);
  CHECK(traj.times.front() == 0.0);
  for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
}

TEST_CASE("equilibrium initial state stays put") {
  const SystemParams params(1.0, {1}, {1.0});
  const Trajectory traj = integrate(params, PhaseState({1.0}, {0.0}), 5.0);
  for (const auto& state : traj.states) {
    CHECK(std::abs(state.positions[0] - 1.0) < 1e-10);
    CHECK(std::abs(state.momenta[0]) < 1e-10);
  }
}

TEST_CASE("one-dof barrier dynamics matches the closed form") {
  // For H = p^2/2 + nu^2 x^2 / 2 + k/(2 x^2):
  //   x(t)^2 = E/nu^2 + A sin(2 nu t + phi),  A = sqrt(E^2 - k nu^2)/nu^2.
  const double omega0 = 1.3, k = 0.7, x0 = 1.1, p0 = 0.4;
  const int n = 2;
  const SystemParams params(omega0, {n}, {k});
  const PhaseState initial({x0}, {p0});
  const double nu = n * omega0;
  const double e = energy(params, initial, 0);
  const double amp = std::sqrt(e * e - k * nu * nu) / (nu * nu);
  const double center = e / (nu * nu);
  // x0^2 = center + amp sin(phi), (x^2)' = 2 x p = 2 nu amp cos(phi)
  const double phi = std::atan2((x0 * x0 - center) / amp, (2.0 * x0 * p0) / (2.0 * nu * amp));

  const Trajectory traj = integrate(params, initial, 3.0);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const double expected = center + amp * std::sin(2.0 * nu * traj.times[s] + phi);
    const double x = traj.states[s].positions[0];
    CHECK(std::abs(x * x - expected) < 1e-9);
    CHECK(std::abs(x) > 0.1);  // held off the singularity by the barrier
  }
}

TEST_CASE("reference-run conservation drift") {
  const Trajectory traj = integrate(reference_params(), reference_state(), 10.0 * kPi);
  const DriftReport report = drift_report(traj, standard_observables(reference_params()));
  REQUIRE(report.entries.size() == 4);  // E1, E2, reM12, imM12
  for (const auto& entry : report.entries) {
    INFO(entry.name);
    CHECK(entry.max_rel_dev < 1e-8);
  }
}

TEST_CASE("linear-system constants are tracked when all strengths vanish") {
  const SystemParams params(1.0, {2, 1}, {0.0, 0.0});
  const auto observables = standard_observables(params);
  REQUIRE(observables.size() == 6);  // E1, E2, reM12, imM12, reK12, imK12
  CHECK(observables[4].name == "reK12");
  CHECK(observables[5].name == "imK12");

  const Trajectory traj = integrate(params, reference_state(), 10.0 * kPi);
  const DriftReport report = drift_report(traj, observables);
  for (const auto& entry : report.entries) {
    INFO(entry.name);
    CHECK(entry.max_rel_dev < 1e-10);
  }
}

TEST_CASE("every constant is conserved from random bounded initial data") {
  std::mt19937_64 rng(2026);
  auto u = [&](double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
  };
  for (const SystemParams& params :
       {SystemParams(1.0, {2, 1}, {0.5, 1.3}), SystemParams(1.2, {3, 1}, {1.0, 0.4})}) {
    auto observables = standard_observables(params);
    for (int i = 0; i < params.dof(); ++i) {
      // diagonal constants |M_i|^{2 n_i} on top of the standard set
      ObservableRef diag{ObservableKind::ReM, i, i};
      observables.push_back({diag.name(), [diag](const SystemParams& p, const PhaseState& s) {
                               return evaluate(diag, p, s);
                             }});
    }
    for (int round = 0; round < 3; ++round) {
      const PhaseState initial({u(0.5, 2.0), u(0.5, 2.0)}, {u(-1.0, 1.0), u(-1.0, 1.0)});
      const Trajectory traj = integrate(params, initial, 10.0 * kPi);
      for (const auto& entry : drift_report(traj, observables).entries) {
        INFO(entry.name);
        CHECK(entry.max_rel_dev < 1e-8);
      }
      for (const auto& state : traj.states) {
        for (int i = 0; i < params.dof(); ++i) CHECK(std::abs(state.positions[i]) > 0.0);
      }
    }
  }
}

TEST_CASE("the drift reporter is not vacuous") {
  const Trajectory traj = integrate(reference_params(), reference_state(), 10.0);
  const std::vector<NamedObservable> probes = {
      {"x1", [](const SystemParams&, const PhaseState& s) { return s.positions[0]; }}};
  const DriftReport report = drift_report(traj, probes);
  CHECK(report.entries[0].max_rel_dev > 0.1);
}

TEST_CASE("time reversal") {
  const SystemParams params = reference_params();
  const double t = 3.7;
  const Trajectory forward = integrate(params, reference_state(), t);
  PhaseState turned = forward.final_state();
  for (double& p : turned.momenta) p = -p;
  const Trajectory back = integrate(params, turned, t);
  PhaseState final_state = back.final_state();
  for (double& p : final_state.momenta) p = -p;

  const PhaseState initial = reference_state();
  for (int i = 0; i < params.dof(); ++i) {
    CHECK(std::abs(final_state.positions[i] - initial.positions[i]) < 1e-7);
    CHECK(std::abs(final_state.momenta[i] - initial.momenta[i]) < 1e-7);
  }
}

TEST_CASE("flow map") {
  const FlowMap flow(reference_params(), reference_state(), 1e-12);
  const PhaseState at0 = flow.at(0.0);
  CHECK(at0.positions == reference_state().positions);
  const PhaseState mid = flow.at(1.5);
  const Trajectory traj = integrate(reference_params(), reference_state(), 1.5);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(mid.positions[i] - traj.final_state().positions[i]) < 1e-10);
  }
}

TEST_CASE("closure of the plain oscillator") {
  const SystemParams params(1.0, {1}, {0.0});
  const auto t = closure_time(params, PhaseState({1.0}, {0.0}));
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - 2.0 * kPi) < 1e-6);
}

TEST_CASE("closure of the one-dof barrier oscillator at half the period") {
  const SystemParams params(1.0, {1}, {1.0});
  const auto t = closure_time(params, PhaseState({1.5}, {0.0}));
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - kPi) < 1e-6);
}

TEST_CASE("closure of the reference configuration") {
  const auto t = closure_time(reference_params(), reference_state());
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - kPi) < 1e-6);

  // k = 0 counterpart: x closes at pi, y at 2 pi, common period 2 pi
  const SystemParams linear(1.0, {2, 1}, {0.0, 0.0});
  const auto t0 = closure_time(linear, reference_state());
  REQUIRE(t0.has_value());
  const double ratio = 2.0 * kPi / *t0;
  CHECK(std::abs(ratio - std::round(ratio)) < 1e-5);
}

TEST_CASE("closure rejects a stationary start") {
  const SystemParams params(1.0, {1}, {1.0});
  CHECK_THROWS_AS((void)closure_time(params, PhaseState({1.0}, {0.0})), Error);
}

TEST_CASE("csv export contract") {
  const Trajectory traj = integrate(reference_params(), reference_state(), 1.0,
                                    {.tolerance = 1e-12, .output_stride = 0.25});
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x1,x2,p1,p2,E1,E2,reM12,imM12");

  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(rows == 5);  // t = 0, 0.25, 0.5, 0.75, 1.0

  // shortest round-trip rendering: first data field is exactly "0"
  const std::string first_line = out.str().substr(out.str().find('\n') + 1);
  CHECK(first_line.substr(0, 2) == "0,");

  // all strengths zero: linear pairs appended
  const SystemParams linear(1.0, {2, 1}, {0.0, 0.0});
  const Trajectory ltraj = integrate(linear, reference_state(), 0.5, {.output_stride = 0.25});
  std::ostringstream lout;
  write_trajectory_csv(lout, ltraj);
  std::string lheader = lout.str().substr(0, lout.str().find('\n'));
  CHECK(lheader == "t,x1,x2,p1,p2,E1,E2,reM12,imM12,reK12,imK12");
}

TEST_CASE("singularity approach is reported") {
  // head-on approach to a weak barrier whose turning point lies under the
  // configured floor: the integrator must refuse to continue
  const SystemParams params(1.0, {1}, {1e-6});
  IntegrateOptions options;
  options.singular_floor = 1e-2;
  CHECK_THROWS_AS((void)integrate(params, PhaseState({1.0}, {-2.0}), 2.0, options),
                  SingularityApproachError);
}
