#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "rosc/observables.hpp"
#include "rosc/symbolic.hpp"
#include "rosc/system.hpp"

namespace rosc::analysis {

struct SamplingSpec {
  int count = 100;
  std::uint64_t seed = 0;
  double x_lo = 0.5, x_hi = 2.0;
  double p_lo = -1.0, p_hi = 1.0;
  double min_flow_gradient = 1e-6;  // reject near-equilibrium points
};

/// Seeded uniform draws of regular, non-equilibrium phase points.
std::vector<PhaseState> sample_regular_states(const SystemParams& params, const SamplingSpec& spec);

/// Numeric differential/bracket engine with one symbolic expansion per
/// observable, cached per SystemParams instance. Every gradient runs both
/// paths: the symbolic derivative evaluated at the point, cross-checked
/// against a central finite difference of the direct numeric evaluator
/// (step 1e-6 * max(1, |coordinate|), agreement 1e-5 relative, else
/// CrossCheckError). The lazy cache is not synchronized; use one engine
/// per thread.
class GradientEngine {
 public:
  explicit GradientEngine(const SystemParams& params,
                          int degree_limit = symbolic::kDefaultDegreeLimit);
  ~GradientEngine();
  GradientEngine(GradientEngine&&) noexcept;
  GradientEngine& operator=(GradientEngine&&) noexcept;

  const SystemParams& params() const { return params_; }

  /// Direct numeric value (no symbolic machinery); the finite-difference side
  /// of the dual path.
  double value(const ObservableRef& obs, const PhaseState& state) const;

  /// 2n-vector (d/dx_1..x_n, d/dp_1..p_n), dual-path verified.
  std::vector<double> gradient(const ObservableRef& obs, const PhaseState& state) const;

  /// {a, b} assembled from gradients.
  double bracket(const ObservableRef& a, const ObservableRef& b, const PhaseState& state) const;

 private:
  struct Cache;
  SystemParams params_;
  int degree_limit_;
  std::unique_ptr<Cache> cache_;
};

/// Convenience single-shot wrappers (build a fresh engine each call).
std::vector<double> gradient(const ObservableRef& obs, const SystemParams& params, const PhaseState& state);
double poisson_bracket_num(const ObservableRef& a, const ObservableRef& b, const SystemParams& params,
                           const PhaseState& state);

/// Residuals of the bracket identities coupling M_xy to E_x (dof 2):
///   {Im M_xy, E_x} - 2 omega0 n_x n_y Re(M_xy)
///   {Re M_xy, E_x} + 2 omega0 n_x n_y Im(M_xy)
///   {J_3, E_x} + (2 n_x n_y / (lambda omega0)) Im(M_xy)
/// normalized by the magnitudes involved. lambda comes from the case
/// registry when the ratios match a case, otherwise from the general
/// extraction; it is never fitted.
struct Prop2Residuals {
  double im_bracket = 0.0;
  double re_bracket = 0.0;
  double j3_bracket = 0.0;
  double max_rel() const;
};
Prop2Residuals prop2_check(const GradientEngine& engine, const PhaseState& state);
Prop2Residuals prop2_check(const SystemParams& params, const PhaseState& state);

/// The 2n-1 invariants of the wedge argument: the n diagonal M_ii plus the
/// n-1 upper-next-diagonal Im(M_i,i+1).
std::vector<ObservableRef> canonical_invariant_set(const SystemParams& params);

/// Isotropic-tensor set for all-unit ratios: the n diagonal Re(K_ii) plus
/// the n-1 upper-next-diagonal Re(K_i,i+1).
std::vector<ObservableRef> fradkin_set(const SystemParams& params);

struct RankPoint {
  PhaseState state;
  std::vector<double> singular_values;  // of the row-normalized Jacobian
  int rank = 0;
};

struct RankReport {
  int rows = 0;
  int columns = 0;
  double threshold = 0.0;  // relative to the largest singular value
  std::vector<RankPoint> points;

  int min_rank() const;
  int max_rank() const;
};

/// Stacks the observable gradients at each sampled point (rows normalized to
/// unit length, which preserves rank) and reports the numerical rank from
/// the singular values.
RankReport independence_rank(const GradientEngine& engine, const std::vector<ObservableRef>& observables,
                             const SamplingSpec& sampling, double threshold = 1e-8);
RankReport independence_rank(const SystemParams& params, const std::vector<ObservableRef>& observables,
                             const SamplingSpec& sampling, double threshold = 1e-8);

}  // namespace rosc::analysis
