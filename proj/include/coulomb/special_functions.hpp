#pragma once

#include <complex>
#include <vector>

namespace coulomb {

using Complex = std::complex<double>;

/// Throws OverflowError if either component of `z` is NaN or infinite.
Complex ensure_finite(Complex z, const char* what);

/// Principal branch of log Gamma: analytic in the plane cut along the
/// negative real axis, real on the positive real axis. On the cut itself the
/// sign of a signed-zero imaginary part selects the side.
///
/// The argument is shifted to Re z >= 15 with the functional equation and the
/// Stirling series is evaluated there. Supported range: |z| <= 1e8 and
/// Re z >= -1000; outside it RangeError is thrown. Non-positive integers
/// throw PoleError, non-finite input DomainError.
Complex log_gamma(Complex z);

/// Gamma(a) / Gamma(b) evaluated as exp(log_gamma(a) - log_gamma(b)).
/// Throws OverflowError if the ratio is not representable.
Complex gamma_ratio(Complex a, Complex b);

/// P_0(x) .. P_L(x) from the upward three-term recurrence.
struct LegendreSequence {
  double x = 0.0;
  std::vector<double> values;

  int degree() const { return static_cast<int>(values.size()) - 1; }
  /// P_l(x), with P_{-1} = 0.
  double operator()(int l) const { return l < 0 ? 0.0 : values[static_cast<std::size_t>(l)]; }
};

LegendreSequence legendre_sequence(double x, int max_degree);

/// |(2l+1) x P_l - (l+1) P_{l+1} - l P_{l-1}| for 1 <= l < degree().
double legendre_recurrence_residual(const LegendreSequence& seq, int l);

/// P'_0(x) .. P'_L(x) from P'_{l+1} = (l+1) P_l + x P'_l.
std::vector<double> legendre_derivatives(const LegendreSequence& seq);

/// |(2l+1) P_l(x) - P'_{l+1}(x) + P'_{l-1}(x)|, derivatives taken from
/// legendre_derivatives (independent of the identity being checked).
double legendre_derivative_identity_residual(double x, int l);

}  // namespace coulomb
