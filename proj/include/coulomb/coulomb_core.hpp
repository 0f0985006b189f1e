#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "coulomb/special_functions.hpp"

namespace coulomb {

/// Wavenumber k (> 0, inverse length) and Coulomb strength beta (any sign;
/// beta > 0 attractive, beta < 0 repulsive).
class PhysicalParams {
public:
  PhysicalParams(double k, double beta);

  double k() const { return k_; }
  double beta() const { return beta_; }
  /// Incident velocity, known only when built from physical inputs.
  std::optional<double> velocity() const { return velocity_; }

private:
  friend PhysicalParams params_from_physical(double, double, double, double);

  double k_;
  double beta_;
  std::optional<double> velocity_;
};

/// k = sqrt(2 mu E) / hbar, v = sqrt(2 E / mu), beta = kappa / (hbar v).
PhysicalParams params_from_physical(double mu, double kappa, double energy, double hbar);

struct PartialWave {
  int l = 0;
  Complex s{1.0, 0.0};
  /// Phase shift in (-pi, pi], exp(2 i delta) = s.
  double delta = 0.0;
};

/// S_l = Gamma(l+1-i beta) / Gamma(l+1+i beta), delta_l = arg Gamma(l+1-i beta).
PartialWave s_matrix(int l, const PhysicalParams& p);

struct LadderCheckpoint {
  int l = 0;
  double drift = 0.0;  // |ladder S_l - direct S_l|
};

struct SMatrixLadder {
  std::vector<Complex> s;  // S_0 .. S_lmax
  std::vector<LadderCheckpoint> checkpoints;
};

/// S_0 .. S_lmax from S_0 and (l+1-i beta) S_l = (l+1+i beta) S_{l+1}.
/// Every `checkpoint_interval` steps (and at lmax) the ladder value is
/// compared with s_matrix(l); DriftError if the difference exceeds
/// `drift_tolerance`.
SMatrixLadder s_matrix_ladder(int lmax, const PhysicalParams& p, int checkpoint_interval = 64,
                              double drift_tolerance = 1e-10);

/// Closed-form auxiliary function G(x) = -2 S_0 exp[i beta ln((1-x)/2)] + S_0, x in [-1, 1).
Complex G_closed(double x, const PhysicalParams& p);
/// g(x) = G'(x) = 2 i beta S_0 exp[i beta ln((1-x)/2)] / (1 - x), x in [-1, 1).
Complex g_closed(double x, const PhysicalParams& p);

enum class AmplitudeMethod { closed_form, regularized_series };

std::string_view to_string(AmplitudeMethod m);

struct AmplitudeResult {
  double theta = 0.0;
  Complex f{};
  AmplitudeMethod method = AmplitudeMethod::closed_form;
  /// Absolute, units of |f|. Zero for the closed form.
  double error_estimate = 0.0;
  /// theta below pi/36, where the series converges slowly.
  bool near_forward = false;
};

/// Angles closer than this to zero are rejected.
inline constexpr double kForwardExclusion = 1e-9;

/// Throws DomainError unless theta lies in (kForwardExclusion, pi].
void check_scattering_angle(double theta);

/// f(theta) = Gamma(1-i beta) / (i Gamma(i beta)) exp[i beta ln sin^2(theta/2)] / (2k sin^2(theta/2)).
AmplitudeResult closed_amplitude(double theta, const PhysicalParams& p);

/// |f(theta)|^2.
double differential_cross_section(double theta, const PhysicalParams& p);

/// beta^2 / (4 k^2 sin^4(theta/2)), evaluated directly.
double rutherford_cross_section(double theta, const PhysicalParams& p);

enum class Stencil { central2, central4 };

/// |(1-x) G'(x) + i beta G(x) - i beta S_0| with G' a finite difference of
/// G_closed. The default 3-point stencil gives an O(h^2) residual.
double ode_residual(double x, const PhysicalParams& p, double h, Stencil stencil = Stencil::central2);

}  // namespace coulomb
