#pragma once

// Abel-regularized partial-wave sums.
//
// The partial-wave series for g(x) (and for f(theta)) does not converge for
// any x. Each series is evaluated with damping weights w(eps, l), either
// exp(-eps l) or exp(-eps l (l+1)), for a decreasing list of eps values and
// the damped sums are extrapolated to eps = 0 with Neville's scheme.

#include <optional>
#include <span>
#include <vector>

#include "coulomb/coulomb_core.hpp"
#include "coulomb/special_functions.hpp"

namespace coulomb {

enum class Damping { exponential, heat };

/// Default truncation: the damping weight at l_max is exp(-kTailExponent) = 1e-16
/// for the smallest eps. Terms grow like 2l+1, so a 1e-8 weight would leave a
/// truncation error of order l_max * 1e-8.
inline constexpr double kTailExponent = 36.841361487904734;  // ln 1e16
/// A report is flagged (truncation_ok = false) above this weight.
inline constexpr double kTailTolerance = 1e-8;

double damping_weight(Damping damping, double eps, int l);

struct SummationConfig {
  /// Truncation order; derived from the smallest eps when empty.
  std::optional<int> l_max;
  /// Strictly decreasing, all > 0.
  std::vector<double> epsilons;
  /// 0: smallest-eps value; n: Neville through the n+1 smallest eps.
  int extrapolation_order = 4;
  Damping damping = Damping::exponential;

  /// eps = 0.1, 0.05, ..., 0.003125; order 4; exponential damping.
  static SummationConfig defaults();
  static SummationConfig geometric(double eps_max, double ratio, int count, int order,
                                   Damping damping = Damping::exponential);

  /// Throws ConfigError.
  void validate() const;
  int resolved_l_max() const;
  /// Damping weight of the last retained term at the smallest eps.
  double truncation_weight() const;
};

struct ConvergenceReport {
  std::vector<double> epsilons;
  /// Damped sum for each eps, same order as `epsilons`.
  std::vector<Complex> partial_values;
  Complex extrapolated{};
  /// |last retained term| / |damped sum| at the smallest eps (absolute if the sum is 0).
  double tail_estimate = 0.0;
  /// Damping weight at l_max for the smallest eps; <= kTailTolerance when l_max is adequate.
  double truncation_weight = 0.0;
  bool truncation_ok = true;
  int l_max = 0;
  /// x above cos(pi/36): slow convergence region.
  bool near_forward = false;
  /// Difference between the order-n and order-(n-1) extrapolants (0 if n = 0).
  double extrapolation_spread = 0.0;

  std::optional<Complex> reference;
  std::optional<double> abs_error;

  void set_reference(Complex ref);
};

/// Neville's scheme: value at eps = 0 of the interpolating polynomial through
/// (eps[i], values[i]).
Complex extrapolate_to_zero(std::span<const double> eps, std::span<const Complex> values);

/// (2l+1) S_l P_l(x), l = 0 .. s.size()-1.
std::vector<Complex> g_series_terms(std::span<const Complex> s, const LegendreSequence& legendre);
/// S_l [P_{l+1}(x) - P_{l-1}(x)], l = 0 .. s.size()-1; needs legendre.degree() >= s.size().
std::vector<Complex> G_series_terms(std::span<const Complex> s, const LegendreSequence& legendre);

/// Damped sums sum_l (2l+1) s_l P_l(x) w(eps, l) for arbitrary coefficients s_l.
/// eps = 0 gives the plain partial sum.
std::vector<Complex> damped_g_values(double x, std::span<const Complex> s, std::span<const double> eps,
                                     Damping damping);
/// Damped sums of the auxiliary series, sum_l s_l [P_{l+1} - P_{l-1}] w(eps, l).
std::vector<Complex> damped_G_values(double x, std::span<const Complex> s, std::span<const double> eps,
                                     Damping damping);

ConvergenceReport smoothed_g_series(double x, const PhysicalParams& p, const SummationConfig& cfg,
                                    std::optional<Complex> reference = std::nullopt);
ConvergenceReport smoothed_G_series(double x, const PhysicalParams& p, const SummationConfig& cfg,
                                    std::optional<Complex> reference = std::nullopt);

struct SeriesAmplitude {
  AmplitudeResult amplitude;
  /// Report on g(cos theta); divide by 2ik for amplitude units.
  ConvergenceReport report;
};

/// f(theta) = [regularized g(cos theta)] / (2ik). With `compare_with_closed`
/// the error estimate is |f - closed_amplitude|, otherwise the extrapolation
/// spread scaled to amplitude units.
SeriesAmplitude series_amplitude_with_report(double theta, const PhysicalParams& p,
                                             const SummationConfig& cfg, bool compare_with_closed = true);
AmplitudeResult series_amplitude(double theta, const PhysicalParams& p, const SummationConfig& cfg,
                                 bool compare_with_closed = true);

/// sum_{l=0}^{L} (2l+1) exp(-eps l) P_l(x) for each x.
double delta_kernel_value(double x, double eps, int max_degree);
std::vector<double> delta_kernel_demo(std::span<const double> x_grid, double eps, int max_degree);

/// Raw partial sums sum_{l=0}^{n} (2l+1) S_l P_l(cos theta) / (2ik), n = 0..L.
std::vector<Complex> unregularized_partial_sums(double theta, const PhysicalParams& p, int max_degree);

}  // namespace coulomb
