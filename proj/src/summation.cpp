#include "coulomb/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"
#include "coulomb/kernels.hpp"

namespace coulomb {
namespace {

void check_series_abscissa(double x) {
  if (!(x >= -1.0 && x < 1.0)) {
    throw DomainError("regularized series requires -1 <= x < 1");
  }
}

const double kNearForwardX = std::cos(std::numbers::pi / 36.0);

enum class Series { g, G };

ConvergenceReport smoothed_series(Series which, double x, const PhysicalParams& p, const SummationConfig& cfg,
                                  std::optional<Complex> reference) {
  check_series_abscissa(x);
  cfg.validate();

  const int lmax = cfg.resolved_l_max();
  const auto ladder = s_matrix_ladder(lmax, p);
  const auto legendre = legendre_sequence(x, which == Series::g ? lmax : lmax + 1);
  const auto terms = which == Series::g ? g_series_terms(ladder.s, legendre) : G_series_terms(ladder.s, legendre);

  ConvergenceReport report;
  report.epsilons = cfg.epsilons;
  report.partial_values = kernels::damped_sums_serial(terms, cfg.epsilons, cfg.damping);
  report.l_max = lmax;
  report.near_forward = x > kNearForwardX;
  report.truncation_weight = cfg.truncation_weight();
  report.truncation_ok = report.truncation_weight <= kTailTolerance;

  const std::size_t n = cfg.epsilons.size();
  const auto order = static_cast<std::size_t>(cfg.extrapolation_order);
  const std::span<const double> eps(cfg.epsilons);
  const std::span<const Complex> vals(report.partial_values);
  report.extrapolated = extrapolate_to_zero(eps.last(order + 1), vals.last(order + 1));
  if (order > 0) {
    report.extrapolation_spread = std::abs(report.extrapolated - extrapolate_to_zero(eps.last(order), vals.last(order)));
  }

  const double eps_min = cfg.epsilons.back();
  const double last = std::abs(terms.back()) * damping_weight(cfg.damping, eps_min, lmax);
  const double running = std::abs(report.partial_values[n - 1]);
  report.tail_estimate = running > 0.0 ? last / running : last;

  if (reference) report.set_reference(*reference);
  return report;
}

}  // namespace

double damping_weight(Damping damping, double eps, int l) {
  const double ll = static_cast<double>(l);
  return damping == Damping::exponential ? std::exp(-eps * ll) : std::exp(-eps * ll * (ll + 1.0));
}

SummationConfig SummationConfig::defaults() { return geometric(0.1, 0.5, 6, 4); }

SummationConfig SummationConfig::geometric(double eps_max, double ratio, int count, int order, Damping damping) {
  if (!(eps_max > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 1) {
    throw ConfigError("geometric schedule needs eps_max > 0, 0 < ratio < 1, count >= 1");
  }
  SummationConfig cfg;
  cfg.epsilons.reserve(static_cast<std::size_t>(count));
  double eps = eps_max;
  for (int i = 0; i < count; ++i) {
    cfg.epsilons.push_back(eps);
    eps *= ratio;
  }
  cfg.extrapolation_order = order;
  cfg.damping = damping;
  return cfg;
}

void SummationConfig::validate() const {
  if (epsilons.empty()) {
    throw ConfigError("SummationConfig: empty eps schedule");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i])) {
      throw ConfigError("SummationConfig: eps values must be positive and finite");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw ConfigError("SummationConfig: eps schedule must be strictly decreasing");
    }
  }
  if (extrapolation_order < 0 || static_cast<std::size_t>(extrapolation_order) >= epsilons.size()) {
    throw ConfigError("SummationConfig: extrapolation order must be in [0, number of eps values)");
  }
  if (l_max && *l_max < 1) {
    throw ConfigError("SummationConfig: l_max must be >= 1");
  }
}

int SummationConfig::resolved_l_max() const {
  if (l_max) return *l_max;
  const double eps = epsilons.back();
  if (damping == Damping::exponential) {
    return static_cast<int>(std::ceil(kTailExponent / eps));
  }
  // smallest l with eps l (l+1) >= kTailExponent
  return static_cast<int>(std::ceil(0.5 * (std::sqrt(1.0 + 4.0 * kTailExponent / eps) - 1.0)));
}

double SummationConfig::truncation_weight() const {
  return damping_weight(damping, epsilons.back(), resolved_l_max());
}

void ConvergenceReport::set_reference(Complex ref) {
  reference = ref;
  abs_error = std::abs(extrapolated - ref);
}

Complex extrapolate_to_zero(std::span<const double> eps, std::span<const Complex> values) {
  if (eps.empty() || eps.size() != values.size()) {
    throw ConfigError("extrapolate_to_zero: need matching, non-empty point lists");
  }
  std::vector<Complex> table(values.begin(), values.end());
  const std::size_t n = table.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const double lo = eps[i];
      const double hi = eps[i + m];
      // difference form: equal inputs are reproduced exactly
      table[i] = table[i + 1] + (table[i + 1] - table[i]) * (hi / (lo - hi));
    }
  }
  return table[0];
}

std::vector<Complex> g_series_terms(std::span<const Complex> s, const LegendreSequence& legendre) {
  if (s.empty() || legendre.degree() + 1 < static_cast<int>(s.size())) {
    throw ConfigError("g_series_terms: Legendre sequence too short");
  }
  std::vector<Complex> terms(s.size());
  for (std::size_t l = 0; l < s.size(); ++l) {
    terms[l] = s[l] * ((2.0 * static_cast<double>(l) + 1.0) * legendre.values[l]);
  }
  return terms;
}

std::vector<Complex> G_series_terms(std::span<const Complex> s, const LegendreSequence& legendre) {
  if (s.empty() || legendre.degree() < static_cast<int>(s.size())) {
    throw ConfigError("G_series_terms: Legendre sequence too short");
  }
  std::vector<Complex> terms(s.size());
  for (std::size_t l = 0; l < s.size(); ++l) {
    const int li = static_cast<int>(l);
    terms[l] = s[l] * (legendre(li + 1) - legendre(li - 1));
  }
  return terms;
}

std::vector<Complex> damped_g_values(double x, std::span<const Complex> s, std::span<const double> eps,
                                     Damping damping) {
  const auto legendre = legendre_sequence(x, static_cast<int>(s.size()) - 1);
  return kernels::damped_sums_serial(g_series_terms(s, legendre), eps, damping);
}

std::vector<Complex> damped_G_values(double x, std::span<const Complex> s, std::span<const double> eps,
                                     Damping damping) {
  const auto legendre = legendre_sequence(x, static_cast<int>(s.size()));
  return kernels::damped_sums_serial(G_series_terms(s, legendre), eps, damping);
}

ConvergenceReport smoothed_g_series(double x, const PhysicalParams& p, const SummationConfig& cfg,
                                    std::optional<Complex> reference) {
  return smoothed_series(Series::g, x, p, cfg, reference);
}

ConvergenceReport smoothed_G_series(double x, const PhysicalParams& p, const SummationConfig& cfg,
                                    std::optional<Complex> reference) {
  return smoothed_series(Series::G, x, p, cfg, reference);
}

SeriesAmplitude series_amplitude_with_report(double theta, const PhysicalParams& p, const SummationConfig& cfg,
                                             bool compare_with_closed) {
  check_scattering_angle(theta);
  const double x = std::cos(theta);
  const Complex two_ik{0.0, 2.0 * p.k()};

  SeriesAmplitude out;
  if (compare_with_closed) {
    out.report = smoothed_g_series(x, p, cfg, g_closed(x, p));
  } else {
    out.report = smoothed_g_series(x, p, cfg);
  }

  auto& a = out.amplitude;
  a.theta = theta;
  a.method = AmplitudeMethod::regularized_series;
  a.f = out.report.extrapolated / two_ik;
  a.near_forward = theta < std::numbers::pi / 36.0;
  a.error_estimate = compare_with_closed ? std::abs(a.f - closed_amplitude(theta, p).f)
                                         : out.report.extrapolation_spread / (2.0 * p.k());
  return out;
}

AmplitudeResult series_amplitude(double theta, const PhysicalParams& p, const SummationConfig& cfg,
                                 bool compare_with_closed) {
  return series_amplitude_with_report(theta, p, cfg, compare_with_closed).amplitude;
}

double delta_kernel_value(double x, double eps, int max_degree) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError("delta_kernel_demo: |x| > 1");
  }
  if (!(eps > 0.0)) {
    throw ConfigError("delta_kernel_demo: eps must be positive");
  }
  if (max_degree < 0) {
    throw ConfigError("delta_kernel_demo: negative degree");
  }
  const std::vector<Complex> ones(static_cast<std::size_t>(max_degree) + 1, Complex{1.0, 0.0});
  const double e[] = {eps};
  return damped_g_values(x, ones, e, Damping::exponential).front().real();
}

std::vector<double> delta_kernel_demo(std::span<const double> x_grid, double eps, int max_degree) {
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) out.push_back(delta_kernel_value(x, eps, max_degree));
  return out;
}

std::vector<Complex> unregularized_partial_sums(double theta, const PhysicalParams& p, int max_degree) {
  check_scattering_angle(theta);
  if (max_degree < 0) {
    throw ConfigError("unregularized_partial_sums: negative degree");
  }
  const auto ladder = s_matrix_ladder(max_degree, p);
  const auto terms = g_series_terms(ladder.s, legendre_sequence(std::cos(theta), max_degree));
  const Complex two_ik{0.0, 2.0 * p.k()};
  std::vector<Complex> sums(terms.size());
  Complex running{};
  for (std::size_t n = 0; n < terms.size(); ++n) {
    running += terms[n];
    sums[n] = running / two_ik;
  }
  return sums;
}

}  // namespace coulomb
