#include "coulomb/coulomb_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {
namespace {

constexpr Complex kI{0.0, 1.0};

double wrap_angle(double phi) {
  double r = std::remainder(phi, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

void check_auxiliary_abscissa(double x) {
  if (!(x >= -1.0 && x < 1.0)) {
    throw DomainError("auxiliary function requires -1 <= x < 1");
  }
}

// exp[i beta ln((1-x)/2)]
Complex coulomb_phase(double x, double beta) {
  return std::exp(kI * (beta * std::log((1.0 - x) / 2.0)));
}

}  // namespace

PhysicalParams::PhysicalParams(double k, double beta) : k_(k), beta_(beta) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("PhysicalParams: k must be positive and finite");
  }
  if (!std::isfinite(beta)) {
    throw DomainError("PhysicalParams: beta must be finite");
  }
}

PhysicalParams params_from_physical(double mu, double kappa, double energy, double hbar) {
  if (!(mu > 0.0) || !(energy > 0.0) || !(hbar > 0.0)) {
    throw DomainError("params_from_physical: mu, E and hbar must be positive");
  }
  if (!std::isfinite(kappa)) {
    throw DomainError("params_from_physical: kappa must be finite");
  }
  const double velocity = std::sqrt(2.0 * energy / mu);
  PhysicalParams p(std::sqrt(2.0 * mu * energy) / hbar, kappa / (hbar * velocity));
  p.velocity_ = velocity;
  return p;
}

PartialWave s_matrix(int l, const PhysicalParams& p) {
  if (l < 0) {
    throw DomainError("s_matrix: l must be non-negative");
  }
  if (p.beta() == 0.0) {
    return {l, Complex{1.0, 0.0}, 0.0};
  }
  const Complex a{l + 1.0, -p.beta()};
  const Complex s = gamma_ratio(a, std::conj(a));
  const double delta = wrap_angle(log_gamma(a).imag());
  return {l, s, delta};
}

SMatrixLadder s_matrix_ladder(int lmax, const PhysicalParams& p, int checkpoint_interval,
                              double drift_tolerance) {
  if (lmax < 0) {
    throw DomainError("s_matrix_ladder: lmax must be non-negative");
  }
  if (checkpoint_interval < 1) {
    throw ConfigError("s_matrix_ladder: checkpoint interval must be >= 1");
  }
  SMatrixLadder out;
  out.s.resize(static_cast<std::size_t>(lmax) + 1);
  out.s[0] = s_matrix(0, p).s;
  const double beta = p.beta();
  for (int l = 0; l < lmax; ++l) {
    const auto i = static_cast<std::size_t>(l);
    out.s[i + 1] = out.s[i] * Complex(l + 1.0, -beta) / Complex(l + 1.0, beta);
    const int next = l + 1;
    if (next % checkpoint_interval == 0 || next == lmax) {
      const double drift = std::abs(out.s[i + 1] - s_matrix(next, p).s);
      out.checkpoints.push_back({next, drift});
      if (!(drift <= drift_tolerance)) {
        throw DriftError("s_matrix_ladder: drift " + std::to_string(drift) + " at l = " +
                         std::to_string(next));
      }
    }
  }
  return out;
}

Complex G_closed(double x, const PhysicalParams& p) {
  check_auxiliary_abscissa(x);
  const Complex s0 = s_matrix(0, p).s;
  return -2.0 * s0 * coulomb_phase(x, p.beta()) + s0;
}

Complex g_closed(double x, const PhysicalParams& p) {
  check_auxiliary_abscissa(x);
  if (p.beta() == 0.0) return {0.0, 0.0};
  const Complex s0 = s_matrix(0, p).s;
  return 2.0 * kI * p.beta() * s0 * coulomb_phase(x, p.beta()) / (1.0 - x);
}

std::string_view to_string(AmplitudeMethod m) {
  switch (m) {
    case AmplitudeMethod::closed_form:
      return "closed_form";
    case AmplitudeMethod::regularized_series:
      return "regularized_series";
  }
  return "unknown";
}

void check_scattering_angle(double theta) {
  if (!(theta > kForwardExclusion && theta <= std::numbers::pi)) {
    throw DomainError("scattering angle must lie in (0, pi]; got " + std::to_string(theta));
  }
}

AmplitudeResult closed_amplitude(double theta, const PhysicalParams& p) {
  check_scattering_angle(theta);
  AmplitudeResult r;
  r.theta = theta;
  r.method = AmplitudeMethod::closed_form;
  r.near_forward = theta < std::numbers::pi / 36.0;
  if (p.beta() == 0.0) {
    r.f = {0.0, 0.0};
    return r;
  }
  const double beta = p.beta();
  const double s = std::sin(0.5 * theta);
  const double s2 = s * s;
  // Gamma(1 - i beta) / (i Gamma(i beta))
  const Complex prefactor = gamma_ratio({1.0, -beta}, {0.0, beta}) / kI;
  r.f = ensure_finite(prefactor * std::exp(kI * (beta * std::log(s2))) / (2.0 * p.k() * s2),
                      "closed_amplitude");
  return r;
}

double differential_cross_section(double theta, const PhysicalParams& p) {
  return std::norm(closed_amplitude(theta, p).f);
}

double rutherford_cross_section(double theta, const PhysicalParams& p) {
  check_scattering_angle(theta);
  const double s = std::sin(0.5 * theta);
  const double s2 = s * s;
  return p.beta() * p.beta() / (4.0 * p.k() * p.k() * s2 * s2);
}

double ode_residual(double x, const PhysicalParams& p, double h, Stencil stencil) {
  const double reach = stencil == Stencil::central2 ? h : 2.0 * h;
  if (!(h > 0.0) || !(x - reach > -1.0 && x + reach < 1.0)) {
    throw DomainError("ode_residual: stencil leaves (-1, 1)");
  }
  Complex derivative;
  if (stencil == Stencil::central2) {
    derivative = (G_closed(x + h, p) - G_closed(x - h, p)) / (2.0 * h);
  } else {
    derivative = (-G_closed(x + 2.0 * h, p) + 8.0 * G_closed(x + h, p) - 8.0 * G_closed(x - h, p) +
                  G_closed(x - 2.0 * h, p)) /
                 (12.0 * h);
  }
  const Complex ib = kI * p.beta();
  const Complex s0 = s_matrix(0, p).s;
  return std::abs((1.0 - x) * derivative + ib * G_closed(x, p) - ib * s0);
}

}  // namespace coulomb
