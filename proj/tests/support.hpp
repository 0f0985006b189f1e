#pragma once

// Test-only oracles. Nothing here calls into the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace coulomb::testing {

/// Coefficients (ascending powers) of P_l from the explicit sum
/// P_l(x) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k, l) x^(l-2k).
inline std::vector<long double> legendre_coefficients(int l) {
  auto binom = [](int n, int k) {
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  std::vector<long double> c(static_cast<std::size_t>(l) + 1, 0.0L);
  for (int k = 0; 2 * k <= l; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    c[static_cast<std::size_t>(l - 2 * k)] = sign * binom(l, k) * binom(2 * l - 2 * k, l) / std::ldexp(1.0L, l);
  }
  return c;
}

inline std::vector<long double> derivative(const std::vector<long double>& c) {
  if (c.size() <= 1) return {0.0L};
  std::vector<long double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long double>(i);
  return d;
}

inline long double evaluate(const std::vector<long double>& c, long double x) {
  long double v = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on a
/// long-double Legendre evaluation.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> nodes(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int l = 1; l < n; ++l) {
        const long double p2 = ((2 * l + 1) * x * p1 - l * p0) / (l + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double step = p1 / dp;
      x -= step;
      if (std::fabs(step) < 1e-19L) break;
    }
    nodes[static_cast<std::size_t>(i)] = static_cast<double>(x);
    weights[static_cast<std::size_t>(i)] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
  }
  return {nodes, weights};
}

inline double relative_error(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace coulomb::testing
