#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "coulomb/errors.hpp"
#include "coulomb/summation.hpp"
#include "support.hpp"

using namespace coulomb;
using coulomb::testing::relative_error;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

SummationConfig lmax4000() {
  auto cfg = SummationConfig::defaults();
  cfg.l_max = 4000;
  return cfg;
}
}  // namespace

TEST_CASE("default configuration") {
  const auto cfg = SummationConfig::defaults();
  REQUIRE(cfg.epsilons.size() == 6);
  CHECK(cfg.epsilons.front() == 0.1);
  CHECK(cfg.epsilons.back() == doctest::Approx(0.003125).epsilon(1e-15));
  CHECK(cfg.extrapolation_order == 4);
  CHECK(cfg.damping == Damping::exponential);
  CHECK(cfg.resolved_l_max() == 11790);
  CHECK(cfg.truncation_weight() <= 1e-16);
  CHECK(cfg.truncation_weight() <= kTailTolerance);
  CHECK_NOTHROW(cfg.validate());

  auto heat = SummationConfig::geometric(1e-3, 0.5, 6, 4, Damping::heat);
  const int l = heat.resolved_l_max();
  CHECK(heat.epsilons.back() * l * (l + 1.0) >= kTailExponent);
  CHECK(heat.epsilons.back() * (l - 1.0) * l < kTailExponent);
}

TEST_CASE("configuration validation") {
  SummationConfig cfg = SummationConfig::defaults();
  cfg.epsilons = {};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilons = {0.1, 0.1};
  cfg.extrapolation_order = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilons = {0.1, 0.2};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilons = {0.1, -0.05};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilons = {0.1, 0.05};
  cfg.extrapolation_order = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.extrapolation_order = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.extrapolation_order = 1;
  cfg.l_max = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.l_max = 10;
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(SummationConfig::geometric(0.1, 1.5, 3, 1), ConfigError);

  CHECK_THROWS_AS(smoothed_g_series(0.0, PhysicalParams(1.0, 1.0), SummationConfig{}), ConfigError);
}

TEST_CASE("Neville extrapolation reproduces polynomials exactly") {
  const std::vector<double> eps = {0.4, 0.2, 0.1, 0.05};
  std::vector<Complex> vals;
  for (double e : eps) vals.push_back(Complex(3.0, -1.0) + 2.0 * e - Complex(0.0, 5.0) * e * e + 7.0 * e * e * e);
  CHECK(std::abs(extrapolate_to_zero(eps, vals) - Complex(3.0, -1.0)) <= 1e-13);
  CHECK(extrapolate_to_zero(std::span(eps).last(1), std::span<const Complex>(vals).last(1)) == vals.back());
  CHECK_THROWS_AS(extrapolate_to_zero(eps, std::span<const Complex>(vals).first(2)), ConfigError);
}

TEST_CASE("smoothed g series examples") {
  const auto free = smoothed_g_series(0.2, PhysicalParams(1.0, 0.0), SummationConfig::defaults());
  CHECK(std::abs(free.extrapolated) <= 1e-5);
  // the damped sums themselves shrink with eps
  for (std::size_t i = 1; i < free.partial_values.size(); ++i) {
    CHECK(std::abs(free.partial_values[i]) < std::abs(free.partial_values[i - 1]));
  }

  const PhysicalParams p(1.0, 1.0);
  const Complex ref = g_closed(0.0, p);
  const auto run = smoothed_g_series(0.0, p, lmax4000(), ref);
  REQUIRE(run.abs_error.has_value());
  CHECK(*run.abs_error / std::abs(ref) <= 1e-3);
  CHECK(run.l_max == 4000);
  CHECK_FALSE(run.truncation_ok);
  CHECK(run.truncation_weight == doctest::Approx(std::exp(-0.003125 * 4000)));

  SummationConfig coarse;
  coarse.epsilons = {0.1};
  coarse.extrapolation_order = 0;
  coarse.l_max = 4000;
  const auto biased = smoothed_g_series(0.0, p, coarse, ref);
  CHECK(*biased.abs_error > *run.abs_error);
  CHECK(biased.extrapolated == biased.partial_values.front());

  CHECK_THROWS_AS(smoothed_g_series(1.0, p, lmax4000()), DomainError);
  CHECK_THROWS_AS(smoothed_g_series(1.2, p, lmax4000()), DomainError);
}

TEST_CASE("report reference bookkeeping") {
  const PhysicalParams p(1.0, 1.0);
  auto report = smoothed_g_series(-0.3, p, SummationConfig::defaults());
  CHECK_FALSE(report.reference.has_value());
  CHECK_FALSE(report.abs_error.has_value());
  report.set_reference(g_closed(-0.3, p));
  CHECK(report.abs_error.has_value());
  CHECK(*report.abs_error == std::abs(report.extrapolated - *report.reference));
  CHECK(report.truncation_ok);
  CHECK(report.tail_estimate < 1e-6);
  CHECK(report.extrapolation_spread > 0.0);
  CHECK_FALSE(report.near_forward);
  CHECK(smoothed_g_series(std::cos(0.05), p, SummationConfig::defaults()).near_forward);
}

TEST_CASE("smoothed G series examples") {
  const auto cfg = SummationConfig::defaults();
  for (double beta : {-2.0, 0.0, 0.7, 5.0}) {
    const PhysicalParams p(1.0, beta);
    const Complex s0 = s_matrix(0, p).s;
    const auto report = smoothed_G_series(-1.0, p, cfg);
    for (const auto& v : report.partial_values) CHECK(v == -s0);
    CHECK(std::abs(report.extrapolated + s0) <= 1e-14);
  }

  const auto free = smoothed_G_series(0.5, PhysicalParams(1.0, 0.0), cfg);
  CHECK(std::abs(free.extrapolated + 1.0) <= 1e-5);

  const PhysicalParams p(1.0, 1.0);
  const Complex s0 = s_matrix(0, p).s;
  const Complex closed = s0 * (1.0 - 2.0 * std::exp(-kI * std::log(2.0)));
  const auto run = smoothed_G_series(0.0, p, cfg, G_closed(0.0, p));
  CHECK(std::abs(run.extrapolated - closed) <= 1e-3);
}

TEST_CASE("series amplitude examples") {
  const auto cfg = SummationConfig::defaults();
  CHECK(std::abs(series_amplitude(kPi / 2.0, PhysicalParams(1.0, 0.0), cfg).f) <= 1e-5);

  const PhysicalParams p(1.0, 1.0);
  const auto mid = series_amplitude(kPi / 2.0, p, lmax4000());
  const auto closed = closed_amplitude(kPi / 2.0, p);
  CHECK(relative_error(mid.f, closed.f) <= 1e-3);
  CHECK(mid.method == AmplitudeMethod::regularized_series);
  CHECK(mid.error_estimate == doctest::Approx(std::abs(mid.f - closed.f)));

  // error against the closed form decreases monotonically along the eps schedule
  const auto fwd = series_amplitude_with_report(kPi / 6.0, p, cfg);
  const auto& r = fwd.report;
  for (std::size_t i = 1; i < r.partial_values.size(); ++i) {
    CHECK(std::abs(r.partial_values[i] - *r.reference) < std::abs(r.partial_values[i - 1] - *r.reference));
  }
  CHECK(*r.abs_error < std::abs(r.partial_values.back() - *r.reference));
  CHECK(relative_error(fwd.amplitude.f, closed_amplitude(kPi / 6.0, p).f) <= 1e-3);

  const auto blind = series_amplitude(kPi / 2.0, p, cfg, false);
  CHECK(blind.error_estimate > 0.0);
  CHECK(blind.error_estimate < 1e-3);
  CHECK(series_amplitude(0.05, p, cfg, false).near_forward);

  CHECK_THROWS_AS(series_amplitude(0.0, p, cfg), DomainError);
}

TEST_CASE("tightening the eps schedule does not increase the error") {
  const PhysicalParams p(1.0, 1.0);
  const auto loose = SummationConfig::defaults();
  const auto tight = SummationConfig::geometric(0.05, 0.5, 6, 4);
  for (double t : {kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, kPi}) {
    CAPTURE(t);
    const double e_loose = series_amplitude(t, p, loose).error_estimate;
    const double e_tight = series_amplitude(t, p, tight).error_estimate;
    CHECK(e_tight <= e_loose + 1e-10);
  }
}

TEST_CASE("heat-kernel damping also converges") {
  const PhysicalParams p(1.0, 1.0);
  const auto cfg = SummationConfig::geometric(1e-3, 0.5, 6, 4, Damping::heat);
  const auto a = series_amplitude(kPi / 2.0, p, cfg);
  CHECK(relative_error(a.f, closed_amplitude(kPi / 2.0, p).f) <= 1e-3);
}

TEST_CASE("delta kernel demo") {
  const auto [nodes, weights] = coulomb::testing::gauss_legendre(256);
  for (double eps : {0.1, 0.05}) {
    const int L = static_cast<int>(std::ceil(kTailExponent / eps));
    const auto values = delta_kernel_demo(nodes, eps, L);
    double integral = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) integral += weights[i] * values[i];
    CHECK(integral == doctest::Approx(2.0).epsilon(1e-6));
  }

  // direct summation: sum (2l+1) (-1)^l e^{-0.1 l} = (1-t^2)/(1+t)^3, t = e^{-0.1}
  const double t = std::exp(-0.1);
  const double at_minus_one = delta_kernel_demo(std::vector<double>{-1.0}, 0.1, 2000).front();
  CHECK(at_minus_one == doctest::Approx((1 - t * t) / std::pow(1 + t, 3)).epsilon(1e-12));
  CHECK(std::abs(at_minus_one) < 0.1);

  const double x1[] = {1.0};
  CHECK(delta_kernel_demo(x1, 0.05, 2000).front() > delta_kernel_demo(x1, 0.1, 2000).front());

  CHECK_THROWS_AS(delta_kernel_demo(std::vector<double>{1.01}, 0.1, 10), DomainError);
  CHECK_THROWS_AS(delta_kernel_demo(x1, 0.0, 10), ConfigError);
}

TEST_CASE("unregularized partial sums") {
  const PhysicalParams free(1.0, 0.0);
  const auto raw = unregularized_partial_sums(kPi / 2.0, free, 200);
  REQUIRE(raw.size() == 201);
  // terms (2l+1) P_l(0) do not decay: consecutive even-l sums keep jumping by O(1)
  CHECK(std::abs(raw[200] - raw[198]) > 0.5);
  for (const auto& v : raw) CHECK(std::abs(v) < 20.0);

  const PhysicalParams p(1.0, 1.0);
  const auto sums = unregularized_partial_sums(kPi / 2.0, p, 200);
  Complex mean{};
  double mean_mag = 0.0;
  for (std::size_t i = 151; i <= 200; ++i) {
    mean += sums[i];
    mean_mag += std::abs(sums[i]);
  }
  mean /= 50.0;
  mean_mag /= 50.0;
  double var = 0.0;
  for (std::size_t i = 151; i <= 200; ++i) var += std::norm(sums[i] - mean);
  CHECK(std::sqrt(var / 50.0) > 0.1 * mean_mag);

  const auto single = unregularized_partial_sums(1.0, PhysicalParams(2.0, -0.7), 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == s_matrix(0, PhysicalParams(2.0, -0.7)).s / Complex(0.0, 4.0));
  CHECK_THROWS_AS(unregularized_partial_sums(0.0, p, 10), DomainError);
}

TEST_CASE("linearity in S: unit coefficients reproduce the delta kernel") {
  const std::vector<Complex> ones(301, Complex{1.0, 0.0});
  for (double x : {-1.0, -0.4, 0.0, 0.75, 0.999, 1.0}) {
    const double eps[] = {0.07};
    const double xs[] = {x};
    CHECK(damped_g_values(x, ones, eps, Damping::exponential).front().real() ==
          delta_kernel_demo(xs, 0.07, 300).front());
    CHECK(damped_g_values(x, ones, eps, Damping::exponential).front().imag() == 0.0);
  }
}

TEST_CASE("finite difference of damped G matches damped g") {
  const PhysicalParams p(1.0, 1.5);
  SummationConfig cfg;
  cfg.epsilons = {0.1};
  cfg.extrapolation_order = 0;
  cfg.l_max = 300;
  for (double x : {-0.6, 0.1, 0.5}) {
    CAPTURE(x);
    const Complex g = smoothed_g_series(x, p, cfg).partial_values.front();
    auto fd = [&](double h) {
      return (smoothed_G_series(x + h, p, cfg).partial_values.front() -
              smoothed_G_series(x - h, p, cfg).partial_values.front()) /
             (2.0 * h);
    };
    const double e1 = std::abs(fd(2e-3) - g);
    const double e2 = std::abs(fd(1e-3) - g);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(e2 <= 1e-3 * std::abs(g));
  }
}

TEST_CASE("telescoping at beta = 0 without damping") {
  for (int L : {0, 1, 7, 150}) {
    const std::vector<Complex> ones(static_cast<std::size_t>(L) + 1, Complex{1.0, 0.0});
    for (double x : {-0.8, 0.0, 0.35, 0.9}) {
      const double eps[] = {0.0};
      const auto seq = legendre_sequence(x, L + 1);
      const Complex sum = damped_G_values(x, ones, eps, Damping::exponential).front();
      CHECK(std::abs(sum - (seq(L) + seq(L + 1) - 1.0)) <= 1e-12);
    }
  }
}

TEST_CASE("identical inputs give bit-identical reports") {
  const PhysicalParams p(2.0, 0.5);
  const auto cfg = SummationConfig::defaults();
  const auto a = smoothed_g_series(0.3, p, cfg, g_closed(0.3, p));
  const auto b = smoothed_g_series(0.3, p, cfg, g_closed(0.3, p));
  CHECK(a.partial_values == b.partial_values);
  CHECK(a.extrapolated == b.extrapolated);
  CHECK(*a.abs_error == *b.abs_error);
  CHECK(a.tail_estimate == b.tail_estimate);
}
