#include <doctest.h>

#include <cmath>
#include <random>

#include "rosc/cases.hpp"
#include "rosc/observables.hpp"

using namespace rosc;

namespace {

SystemParams params_21(std::vector<double> k = {1.0, 1.0}, double omega0 = 1.0) {
  return SystemParams(omega0, {2, 1}, std::move(k));
}
SystemParams params_11(std::vector<double> k = {0.0, 0.0}, double omega0 = 1.0) {
  return SystemParams(omega0, {1, 1}, std::move(k));
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams(0.0, {1}, {0.0}), Error);
  CHECK_THROWS_AS(SystemParams(1.0, {}, {}), Error);
  CHECK_THROWS_AS(SystemParams(1.0, {1, 2}, {0.0}), Error);
  CHECK_THROWS_AS(SystemParams(1.0, {0}, {0.0}), Error);
  CHECK_NOTHROW(SystemParams(2.5, {3, 2, 1}, {0.5, 0.0, -1.0}));
}

TEST_CASE("one-dof energies") {
  const SystemParams params(1.0, {2, 1}, {1.0, 1.0});
  const PhaseState state({1.0, 1.0}, {0.0, 0.0});
  CHECK(energy(params, state, 0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(energy(params, state, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hamiltonian(params, state) == doctest::Approx(3.5).epsilon(1e-15));

  // zero strength, zero state
  const SystemParams free_params(1.0, {1}, {0.0});
  CHECK(energy(free_params, PhaseState({0.0}, {0.0}), 0) == 0.0);
  CHECK(hamiltonian(free_params, PhaseState({0.0}, {0.0})) == 0.0);

  // one degree of freedom: the Hamiltonian is the single energy
  const SystemParams single(1.3, {2}, {0.7});
  const PhaseState point({0.8}, {-0.4});
  CHECK(hamiltonian(single, point) == energy(single, point, 0));

  CHECK_THROWS_AS((void)energy(params, state, 2), IndexError);
  CHECK_THROWS_AS((void)energy(params, state, -1), IndexError);
  CHECK_THROWS_AS((void)energy(params, PhaseState({0.0, 1.0}, {0.0, 0.0}), 0), SingularStateError);
}

TEST_CASE("linear factor") {
  const SystemParams params(1.0, {2}, {0.0});
  const auto k = linear_factor(params, PhaseState({1.0}, {0.0}), 0);
  CHECK(k.re == 0.0);
  CHECK(k.im == 2.0);
  CHECK(k.label == "K_1");

  const auto zero = linear_factor(params, PhaseState({0.0}, {0.0}), 0);
  CHECK(zero.re == 0.0);
  CHECK(zero.im == 0.0);

  const SystemParams iso(1.0, {1}, {0.0});
  const auto free_particle = linear_factor(iso, PhaseState({0.0}, {3.0}), 0);
  CHECK(free_particle.re == 3.0);
  CHECK(free_particle.im == 0.0);
}

TEST_CASE("linear constants at the reference point") {
  const PhaseState state({1.0, 1.0}, {0.0, 1.0});

  const auto iso = linear_constant(params_11(), state, 0, 1);
  // angular momentum and Fradkin component at this point
  CHECK(iso.im == doctest::Approx(1.0).epsilon(1e-15));  // Im(K_xy)/omega0 = x p_y - y p_x
  CHECK(iso.re == doctest::Approx(1.0).epsilon(1e-15));  // p_x p_y + omega0^2 x y

  const auto aniso = linear_constant(params_21({0.0, 0.0}), state, 0, 1);
  // Im(K_xy)/(2 omega0) = (x p_y - y p_x) p_y - omega0^2 x y^2 = 0 here
  CHECK(aniso.im == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(aniso.re == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("quadratic factor") {
  const SystemParams params(1.0, {2}, {0.0});
  const auto q = quadratic_factor(params, PhaseState({1.0}, {0.0}), 0);
  CHECK(q.re == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(q.im == 0.0);

  const auto zero = quadratic_factor(params, PhaseState({0.0}, {0.0}), 0);
  CHECK(zero.re == 0.0);
  CHECK(zero.im == 0.0);

  const SystemParams iso(1.0, {1}, {0.0});
  const auto diag = quadratic_factor(iso, PhaseState({1.0}, {1.0}), 0);
  CHECK(diag.re == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(diag.im == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("deformed factor and the moduli identity") {
  const SystemParams params(1.0, {2}, {1.0});
  const PhaseState state({1.0}, {0.0});
  const auto m = deformed_factor(params, state, 0);
  CHECK(m.re == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(m.im == 0.0);
  const double e = energy(params, state, 0);
  CHECK(m.modulus2() == doctest::Approx(4.0 * (e * e - 4.0)).epsilon(1e-14));
  CHECK(m.modulus2() == doctest::Approx(9.0).epsilon(1e-14));

  const SystemParams iso(1.0, {1}, {1.0});
  const auto m_zero = deformed_factor(iso, PhaseState({1.0}, {0.0}), 0);
  CHECK(m_zero.re == 0.0);
  CHECK(m_zero.im == 0.0);

  CHECK_THROWS_AS((void)deformed_factor(params, PhaseState({0.0}, {0.0}), 0), SingularStateError);
}

TEST_CASE("k = 0 reduction chain") {
  const SystemParams params(1.3, {3, 2}, {0.0, 0.0});
  std::mt19937_64 rng(5);
  auto u = [&](double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
  };
  for (int round = 0; round < 50; ++round) {
    const PhaseState state({u(0.3, 2.0), u(0.3, 2.0)}, {u(-1.5, 1.5), u(-1.5, 1.5)});
    for (int i = 0; i < 2; ++i) {
      const auto m = deformed_factor(params, state, i);
      const auto q = quadratic_factor(params, state, i);
      CHECK(rel_diff(m.re, q.re) < 1e-15);
      CHECK(rel_diff(m.im, q.im) < 1e-15);
    }
  }

  // with unit ratios, Re(K_ij) is the isotropic-tensor component
  const SystemParams iso(0.8, {1, 1}, {0.0, 0.0});
  const PhaseState state({1.2, -0.4}, {0.3, 0.9});
  const auto k01 = linear_constant(iso, state, 0, 1);
  const double fradkin = 0.3 * 0.9 + 0.8 * 0.8 * 1.2 * (-0.4);
  CHECK(k01.re == doctest::Approx(fradkin).epsilon(1e-14));
}

TEST_CASE("deformed constants") {
  const PhaseState state({1.0, 1.0}, {0.0, 1.0});

  const auto m01 = deformed_constant(params_11({0.0, 0.0}), state, 0, 1);
  CHECK(m01.re == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m01.im == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m01.label == "M_12");

  // Re(M_xy) = 4 E_x E_y - 2 omega0^2 J_3 with J_3 = I_3^2 = 1 here
  const double ex = energy(params_11({0.0, 0.0}), state, 0);
  const double ey = energy(params_11({0.0, 0.0}), state, 1);
  CHECK(m01.re == doctest::Approx(4.0 * ex * ey - 2.0).epsilon(1e-14));

  // M_x vanishes at this point for k = (1, 0)
  const auto m_degenerate = deformed_constant(params_11({1.0, 0.0}), state, 0, 1);
  CHECK(m_degenerate.re == 0.0);
  CHECK(m_degenerate.im == 0.0);
}

TEST_CASE("diagonal constants are exactly real") {
  const SystemParams params(1.1, {3, 2}, {0.7, 0.2});
  const PhaseState state({0.9, 1.4}, {-0.6, 0.8});
  for (int i = 0; i < 2; ++i) {
    CHECK(deformed_constant(params, state, i, i).im == 0.0);
    CHECK(linear_constant(params, state, i, i).im == 0.0);
  }
  // M_ii = |M_i|^{2 n_i}
  const auto m0 = deformed_factor(params, state, 0);
  const auto m00 = deformed_constant(params, state, 0, 0);
  CHECK(rel_diff(m00.re, std::pow(m0.modulus2(), 3)) < 1e-13);
}

TEST_CASE("moduli identity at random regular points") {
  const SystemParams params(1.7, {3, 2}, {0.8, -0.5});
  std::mt19937_64 rng(17);
  auto u = [&](double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
  };
  for (int round = 0; round < 1000; ++round) {
    const PhaseState state({u(0.5, 2.0), u(0.5, 2.0)}, {u(-1.0, 1.0), u(-1.0, 1.0)});
    for (int i = 0; i < 2; ++i) {
      const double e = energy(params, state, i);
      const double expected =
          4.0 * (e * e - params.strengths[i] * params.ratios[i] * params.ratios[i] *
                             params.omega0 * params.omega0);
      CHECK(rel_diff(deformed_factor(params, state, i).modulus2(), expected) < 1e-12);
    }
  }
}

TEST_CASE("case registry") {
  CHECK(to_string(CaseId::Iso11) == "iso_1_1");
  CHECK(parse_case_id("aniso_2_1") == CaseId::Aniso21);
  CHECK(!parse_case_id("nope").has_value());
  CHECK(case_for_ratios({1, 1}) == CaseId::Iso11);
  CHECK(case_for_ratios({2, 1}) == CaseId::Aniso21);
  CHECK(case_for_ratios({3, 1}) == CaseId::Aniso31);
  CHECK(!case_for_ratios({3, 2}).has_value());
  CHECK(!case_for_ratios({1, 1, 1}).has_value());

  CHECK(case_formula(CaseId::Iso11).lambda == Rational(-2));
  CHECK(case_formula(CaseId::Aniso21).lambda == Rational(-8));
  CHECK(case_formula(CaseId::Aniso31).lambda == Rational(-2));
  CHECK(case_formula(CaseId::Aniso21).i3_normalizer == Rational(1, 2));
  CHECK(case_formula(CaseId::Aniso31).j3_terms.size() == 7);
}

TEST_CASE("printed J3 at reference points") {
  const PhaseState state({1.0, 1.0}, {0.0, 1.0});

  CHECK(paper_invariant_j3(CaseId::Iso11, params_11({0.0, 0.0}), state) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(paper_invariant_j3(CaseId::Iso11, params_11({1.0, 0.0}), state) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(paper_invariant_j3(CaseId::Aniso21, params_21({0.0, 0.0}), state) ==
        doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS((void)paper_invariant_j3(CaseId::Iso11, params_21(), state), CaseMismatchError);
  CHECK_THROWS_AS(
      (void)paper_invariant_j3(CaseId::Iso11, params_11({1.0, 1.0}), PhaseState({0.0, 1.0}, {0.0, 0.0})),
      SingularStateError);
}

TEST_CASE("extracted J3 equals the printed form") {
  const PhaseState state({1.0, 1.0}, {0.0, 1.0});
  CHECK(extract_j3(CaseId::Iso11, params_11({1.0, 0.0}), state) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(extract_j3(CaseId::Iso11, params_11({0.0, 0.0}), state) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(23);
  auto u = [&](double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
  };
  const std::vector<std::pair<CaseId, SystemParams>> configs = {
      {CaseId::Iso11, params_11({0.4, 1.1}, 1.2)},
      {CaseId::Aniso21, SystemParams(1.2, {2, 1}, {0.4, 1.1})},
      {CaseId::Aniso31, SystemParams(0.9, {3, 1}, {1.5, 0.3})},
  };
  for (const auto& [id, params] : configs) {
    for (int round = 0; round < 1000; ++round) {
      const PhaseState s({u(0.5, 2.0), u(0.5, 2.0)}, {u(-1.0, 1.0), u(-1.0, 1.0)});
      CHECK(rel_diff(extract_j3(id, params, s), paper_invariant_j3(id, params, s)) < 1e-10);
    }
  }
}

TEST_CASE("observable references") {
  CHECK(ObservableRef{ObservableKind::Energy, 0}.name() == "E1");
  CHECK(ObservableRef{ObservableKind::ReM, 0, 1}.name() == "reM12");
  CHECK(ObservableRef{ObservableKind::ImK, 1, 2}.name() == "imK23");
  CHECK(ObservableRef{ObservableKind::Hamiltonian}.name() == "H");

  const SystemParams params = params_21({0.5, 1.3});
  const PhaseState state({1.0, 1.0}, {0.0, 0.5});
  CHECK(evaluate({ObservableKind::Energy, 1}, params, state) ==
        doctest::Approx(energy(params, state, 1)).epsilon(1e-15));
  CHECK(evaluate({ObservableKind::ReM, 0, 1}, params, state) ==
        doctest::Approx(deformed_constant(params, state, 0, 1).re).epsilon(1e-15));
  CHECK(evaluate({ObservableKind::PaperJ3}, params, state) ==
        doctest::Approx(paper_invariant_j3(CaseId::Aniso21, params, state)).epsilon(1e-15));
  CHECK_THROWS_AS((void)evaluate({ObservableKind::PaperJ3}, SystemParams(1.0, {3, 2}, {0.0, 0.0}), state),
                  CaseMismatchError);
}
