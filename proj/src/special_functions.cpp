#include "coulomb/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {
namespace {

constexpr double kStirlingThreshold = 15.0;
constexpr double kMaxModulus = 1e8;
constexpr double kMinRealPart = -1000.0;

// B_{2m} / (2m (2m-1)), m = 1..8
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

// Valid for Re w >= kStirlingThreshold; truncation error below 1e-19 there.
Complex stirling_log_gamma(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = kStirlingCoefficients.back();
  for (std::size_t m = kStirlingCoefficients.size() - 1; m-- > 0;) {
    series = series * inv2 + kStirlingCoefficients[m];
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (w - 0.5) * std::log(w) - w + half_log_two_pi + series * inv;
}

void check_lgamma_argument(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
  }
  if (std::abs(z) > kMaxModulus || z.real() < kMinRealPart) {
    throw RangeError("log_gamma: argument outside supported range");
  }
}

}  // namespace

Complex ensure_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw OverflowError(std::string(what) + ": result not representable");
  }
  return z;
}

Complex log_gamma(Complex z) {
  check_lgamma_argument(z);
  if (z.real() >= kStirlingThreshold) {
    return stirling_log_gamma(z);
  }

  // log Gamma(z) = log Gamma(z + n) - sum_k log(z + k). Moduli are multiplied
  // in blocks (one log per block); arguments are summed, which keeps the
  // result on the principal branch.
  const int shift = static_cast<int>(std::ceil(kStirlingThreshold - z.real()));
  double log_modulus = 0.0;
  double block = 1.0;
  double arg_sum = 0.0;
  for (int k = 0; k < shift; ++k) {
    const Complex t = z + static_cast<double>(k);
    block *= std::abs(t);
    arg_sum += std::arg(t);
    if (block > 1e250 || block < 1e-250) {
      log_modulus += std::log(block);
      block = 1.0;
    }
  }
  log_modulus += std::log(block);
  return stirling_log_gamma(z + static_cast<double>(shift)) - Complex(log_modulus, arg_sum);
}

Complex gamma_ratio(Complex a, Complex b) {
  const Complex diff = log_gamma(a) - log_gamma(b);
  if (diff.real() > 709.0) {
    throw OverflowError("gamma_ratio: ratio overflows");
  }
  return ensure_finite(std::exp(diff), "gamma_ratio");
}

LegendreSequence legendre_sequence(double x, int max_degree) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError("legendre_sequence: |x| > 1");
  }
  if (max_degree < 0) {
    throw std::invalid_argument("legendre_sequence: negative degree");
  }
  LegendreSequence seq;
  seq.x = x;
  seq.values.resize(static_cast<std::size_t>(max_degree) + 1);
  auto& p = seq.values;
  p[0] = 1.0;
  if (max_degree >= 1) p[1] = x;
  for (int l = 1; l < max_degree; ++l) {
    const auto i = static_cast<std::size_t>(l);
    p[i + 1] = ((2.0 * l + 1.0) * x * p[i] - l * p[i - 1]) / (l + 1.0);
  }
  return seq;
}

double legendre_recurrence_residual(const LegendreSequence& seq, int l) {
  if (l < 1 || l >= seq.degree()) {
    throw std::out_of_range("legendre_recurrence_residual: l must be interior");
  }
  return std::abs((2.0 * l + 1.0) * seq.x * seq(l) - (l + 1.0) * seq(l + 1) - l * seq(l - 1));
}

std::vector<double> legendre_derivatives(const LegendreSequence& seq) {
  std::vector<double> d(seq.values.size(), 0.0);
  for (int l = 0; l + 1 <= seq.degree(); ++l) {
    const auto i = static_cast<std::size_t>(l);
    d[i + 1] = (l + 1.0) * seq.values[i] + seq.x * d[i];
  }
  return d;
}

double legendre_derivative_identity_residual(double x, int l) {
  if (l < 0) {
    throw std::invalid_argument("legendre_derivative_identity_residual: negative l");
  }
  const auto seq = legendre_sequence(x, l + 1);
  const auto d = legendre_derivatives(seq);
  const auto i = static_cast<std::size_t>(l);
  const double d_prev = l == 0 ? 0.0 : d[i - 1];
  return std::abs((2.0 * l + 1.0) * seq(l) - d[i + 1] + d_prev);
}

}  // namespace coulomb
