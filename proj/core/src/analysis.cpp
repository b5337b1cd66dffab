#include "rosc/analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace rosc::analysis {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53-bit mantissa draw; bit-stable across standard library implementations
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

double flow_gradient_norm(const SystemParams& params, const PhaseState& state) {
  double sum = 0.0;
  const double w2 = params.omega0 * params.omega0;
  for (int i = 0; i < params.dof(); ++i) {
    const double x = state.positions[i];
    double hx = w2 * params.ratios[i] * params.ratios[i] * x;
    if (params.strengths[i] != 0.0) hx -= params.strengths[i] / (x * x * x);
    sum += hx * hx + state.momenta[i] * state.momenta[i];
  }
  return std::sqrt(sum);
}

}  // namespace

std::vector<PhaseState> sample_regular_states(const SystemParams& params, const SamplingSpec& spec) {
  if (spec.count < 1) throw Error("at least one sample point is required");
  std::mt19937_64 rng(spec.seed);
  std::vector<PhaseState> states;
  states.reserve(spec.count);
  const int n = params.dof();
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * static_cast<std::size_t>(spec.count) + 1000;
  while (states.size() < static_cast<std::size_t>(spec.count)) {
    if (++attempts > max_attempts) {
      throw Error("sampling failed to find regular non-equilibrium points");
    }
    PhaseState state{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) state.positions[i] = uniform(rng, spec.x_lo, spec.x_hi);
    for (int i = 0; i < n; ++i) state.momenta[i] = uniform(rng, spec.p_lo, spec.p_hi);
    if (flow_gradient_norm(params, state) < spec.min_flow_gradient) continue;
    states.push_back(std::move(state));
  }
  return states;
}

struct GradientEngine::Cache {
  symbolic::Constants constants;
  std::optional<symbolic::GeneralJ3> j3;  // dof 2 only, built on demand
  // per observable: expanded polynomial and its 2n phase-space derivatives
  struct Entry {
    PhasePoly poly;
    std::vector<PhasePoly> derivatives;
  };
  std::map<std::tuple<int, int, int>, Entry> entries;

  const symbolic::GeneralJ3& general_j3_for(const SystemParams& params, int degree_limit) {
    if (!j3) {
      if (params.dof() != 2) {
        throw CaseMismatchError("J3 observables exist for two degrees of freedom only");
      }
      j3 = symbolic::general_j3(params.ratios[0], params.ratios[1], degree_limit);
    }
    return *j3;
  }

  const Entry& entry_for(const SystemParams& params, const ObservableRef& obs, int degree_limit) {
    const auto key = std::make_tuple(static_cast<int>(obs.kind), obs.i, obs.j);
    auto it = entries.find(key);
    if (it == entries.end()) {
      Entry entry;
      entry.poly = obs.kind == ObservableKind::PaperJ3
                       ? general_j3_for(params, degree_limit).j3
                       : symbolic::observable_poly(constants, obs);
      const int dof = params.dof();
      entry.derivatives.reserve(2 * dof);
      for (int g = 0; g < 2 * dof; ++g) {
        entry.derivatives.push_back(derivative(entry.poly, g));
      }
      it = entries.emplace(key, std::move(entry)).first;
    }
    return it->second;
  }
};

GradientEngine::GradientEngine(const SystemParams& params, int degree_limit)
    : params_(params), degree_limit_(degree_limit), cache_(std::make_unique<Cache>()) {
  cache_->constants = symbolic::build_constants(params.ratios, degree_limit);
}

GradientEngine::~GradientEngine() = default;
GradientEngine::GradientEngine(GradientEngine&&) noexcept = default;
GradientEngine& GradientEngine::operator=(GradientEngine&&) noexcept = default;

double GradientEngine::value(const ObservableRef& obs, const PhaseState& state) const {
  if (obs.kind == ObservableKind::PaperJ3 && !case_for_ratios(params_.ratios)) {
    // no printed closed form; evaluate the extracted polynomial
    return eval(cache_->general_j3_for(params_, degree_limit_).j3, params_, state);
  }
  return evaluate(obs, params_, state);
}

std::vector<double> GradientEngine::gradient(const ObservableRef& obs, const PhaseState& state) const {
  detail::check_state(params_, state);
  const int dof = params_.dof();
  const auto& entry = cache_->entry_for(params_, obs, degree_limit_);

  std::vector<double> grad(2 * dof);
  double scale = 1.0;
  for (int g = 0; g < 2 * dof; ++g) {
    grad[g] = eval(entry.derivatives[g], params_, state);
    scale = std::max(scale, std::abs(grad[g]));
  }

  // central finite difference of the direct numeric evaluator
  PhaseState probe = state;
  for (int g = 0; g < 2 * dof; ++g) {
    double& coord = g < dof ? probe.positions[g] : probe.momenta[g - dof];
    const double original = coord;
    const double h = 1e-6 * std::max(1.0, std::abs(original));
    coord = original + h;
    const double f_plus = value(obs, probe);
    coord = original - h;
    const double f_minus = value(obs, probe);
    coord = original;
    const double fd = (f_plus - f_minus) / (2.0 * h);
    if (std::abs(fd - grad[g]) > 1e-5 * scale) {
      throw CrossCheckError("gradient cross-check failed for " + obs.name() + " in component " +
                            std::to_string(g) + ": symbolic " + std::to_string(grad[g]) +
                            " vs finite-difference " + std::to_string(fd));
    }
  }
  return grad;
}

double GradientEngine::bracket(const ObservableRef& a, const ObservableRef& b,
                               const PhaseState& state) const {
  const auto ga = gradient(a, state);
  const auto gb = gradient(b, state);
  const int dof = params_.dof();
  double sum = 0.0;
  for (int i = 0; i < dof; ++i) {
    sum += ga[i] * gb[dof + i] - ga[dof + i] * gb[i];
  }
  return sum;
}

std::vector<double> gradient(const ObservableRef& obs, const SystemParams& params,
                             const PhaseState& state) {
  return GradientEngine(params).gradient(obs, state);
}

double poisson_bracket_num(const ObservableRef& a, const ObservableRef& b,
                           const SystemParams& params, const PhaseState& state) {
  return GradientEngine(params).bracket(a, b, state);
}

double Prop2Residuals::max_rel() const {
  return std::max({im_bracket, re_bracket, j3_bracket});
}

Prop2Residuals prop2_check(const GradientEngine& engine, const PhaseState& state) {
  const SystemParams& params = engine.params();
  if (params.dof() != 2) {
    throw CaseMismatchError("the coupling-bracket identities are stated for two degrees of freedom");
  }
  const double factor = 2.0 * params.omega0 * params.ratios[0] * params.ratios[1];
  const ObservableRef re_m{ObservableKind::ReM, 0, 1};
  const ObservableRef im_m{ObservableKind::ImM, 0, 1};
  const ObservableRef ex{ObservableKind::Energy, 0, 0};
  const ObservableRef j3{ObservableKind::PaperJ3, 0, 0};

  const double re_value = engine.value(re_m, state);
  const double im_value = engine.value(im_m, state);

  auto rel = [](double residual, double a, double b) {
    return std::abs(residual) / std::max({1.0, std::abs(a), std::abs(b)});
  };

  Prop2Residuals out;
  const double b1 = engine.bracket(im_m, ex, state);
  out.im_bracket = rel(b1 - factor * re_value, b1, factor * re_value);
  const double b2 = engine.bracket(re_m, ex, state);
  out.re_bracket = rel(b2 + factor * im_value, b2, factor * im_value);

  // lambda from the registry case when there is one, otherwise from the
  // general extraction; never fitted.
  double lambda;
  if (const auto id = case_for_ratios(params.ratios)) {
    lambda = to_double(case_formula(*id).lambda);
  } else {
    lambda = to_double(symbolic::general_j3(params.ratios[0], params.ratios[1]).lambda);
  }
  const double b3 = engine.bracket(j3, ex, state);
  const double target = -(2.0 * params.ratios[0] * params.ratios[1] / (lambda * params.omega0)) * im_value;
  out.j3_bracket = rel(b3 - target, b3, target);
  return out;
}

Prop2Residuals prop2_check(const SystemParams& params, const PhaseState& state) {
  GradientEngine engine(params);
  return prop2_check(engine, state);
}

std::vector<ObservableRef> canonical_invariant_set(const SystemParams& params) {
  std::vector<ObservableRef> set;
  for (int i = 0; i < params.dof(); ++i) set.push_back({ObservableKind::ReM, i, i});
  for (int i = 0; i + 1 < params.dof(); ++i) set.push_back({ObservableKind::ImM, i, i + 1});
  return set;
}

std::vector<ObservableRef> fradkin_set(const SystemParams& params) {
  if (!params.all_ratios_one()) {
    throw CaseMismatchError("the isotropic tensor set requires all ratios equal to 1");
  }
  std::vector<ObservableRef> set;
  for (int i = 0; i < params.dof(); ++i) set.push_back({ObservableKind::ReK, i, i});
  for (int i = 0; i + 1 < params.dof(); ++i) set.push_back({ObservableKind::ReK, i, i + 1});
  return set;
}

int RankReport::min_rank() const {
  int rank = columns;
  for (const auto& point : points) rank = std::min(rank, point.rank);
  return points.empty() ? 0 : rank;
}

int RankReport::max_rank() const {
  int rank = 0;
  for (const auto& point : points) rank = std::max(rank, point.rank);
  return rank;
}

RankReport independence_rank(const GradientEngine& engine, const std::vector<ObservableRef>& observables,
                             const SamplingSpec& sampling, double threshold) {
  if (observables.empty()) throw Error("at least one observable is required");
  const SystemParams& params = engine.params();
  const int rows = static_cast<int>(observables.size());
  const int cols = 2 * params.dof();

  RankReport report;
  report.rows = rows;
  report.columns = cols;
  report.threshold = threshold;

  for (const PhaseState& state : sample_regular_states(params, sampling)) {
    Eigen::MatrixXd jacobian(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const auto grad = engine.gradient(observables[r], state);
      double norm = 0.0;
      for (double g : grad) norm += g * g;
      norm = std::sqrt(norm);
      // row normalization preserves rank and keeps the spectrum of the
      // stacked matrix within double precision for high-degree invariants
      const double inv = norm > 0.0 ? 1.0 / norm : 0.0;
      for (int c = 0; c < cols; ++c) jacobian(r, c) = grad[c] * inv;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
    const auto& sigma = svd.singularValues();
    RankPoint point;
    point.state = state;
    point.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    const double cutoff = threshold * (sigma.size() > 0 ? sigma(0) : 0.0);
    for (int s = 0; s < sigma.size(); ++s) {
      if (sigma(s) > cutoff && sigma(s) > 0.0) ++point.rank;
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

RankReport independence_rank(const SystemParams& params, const std::vector<ObservableRef>& observables,
                             const SamplingSpec& sampling, double threshold) {
  GradientEngine engine(params);
  return independence_rank(engine, observables, sampling, threshold);
}

}  // namespace rosc::analysis
