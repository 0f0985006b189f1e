#include "coulomb/kernels.hpp"

#include <exception>

#ifdef COULOMB_KIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace coulomb::kernels {
namespace {

// Runs body(i) for i in [0, n). Exceptions cannot leave an OpenMP region, so
// each task stores its own and the lowest-index one is rethrown afterwards.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#ifdef COULOMB_KIT_HAVE_OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
#else
  (void)threads;
#endif
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Complex damped_sum(std::span<const Complex> terms, double eps, Damping damping) {
  Complex sum{};
  for (std::size_t l = 0; l < terms.size(); ++l) {
    sum += terms[l] * damping_weight(damping, eps, static_cast<int>(l));
  }
  return sum;
}

}  // namespace

bool openmp_enabled() {
#ifdef COULOMB_KIT_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

std::vector<Complex> damped_sums_serial(std::span<const Complex> terms, std::span<const double> eps,
                                        Damping damping) {
  std::vector<Complex> out(eps.size());
  for (std::size_t j = 0; j < eps.size(); ++j) out[j] = damped_sum(terms, eps[j], damping);
  return out;
}

std::vector<Complex> damped_sums_omp(std::span<const Complex> terms, std::span<const double> eps,
                                     Damping damping, int threads) {
  std::vector<Complex> out(eps.size());
  parallel_for(eps.size(), threads, [&](std::size_t j) { out[j] = damped_sum(terms, eps[j], damping); });
  return out;
}

std::vector<AmplitudeResult> closed_amplitude_sweep_serial(std::span<const double> thetas,
                                                           const PhysicalParams& p) {
  std::vector<AmplitudeResult> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(closed_amplitude(t, p));
  return out;
}

std::vector<AmplitudeResult> closed_amplitude_sweep_omp(std::span<const double> thetas, const PhysicalParams& p,
                                                        int threads) {
  std::vector<AmplitudeResult> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) { out[i] = closed_amplitude(thetas[i], p); });
  return out;
}

std::vector<AmplitudeResult> series_amplitude_sweep_serial(std::span<const double> thetas,
                                                           const PhysicalParams& p, const SummationConfig& cfg,
                                                           bool compare_with_closed) {
  std::vector<AmplitudeResult> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(series_amplitude(t, p, cfg, compare_with_closed));
  return out;
}

std::vector<AmplitudeResult> series_amplitude_sweep_omp(std::span<const double> thetas, const PhysicalParams& p,
                                                        const SummationConfig& cfg, bool compare_with_closed,
                                                        int threads) {
  std::vector<AmplitudeResult> out(thetas.size());
  parallel_for(thetas.size(), threads,
               [&](std::size_t i) { out[i] = series_amplitude(thetas[i], p, cfg, compare_with_closed); });
  return out;
}

std::vector<double> delta_kernel_grid_serial(std::span<const double> xs, double eps, int max_degree) {
  return delta_kernel_demo(xs, eps, max_degree);
}

std::vector<double> delta_kernel_grid_omp(std::span<const double> xs, double eps, int max_degree, int threads) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) { out[i] = delta_kernel_value(xs[i], eps, max_degree); });
  return out;
}

std::vector<AmplitudeResult> closed_amplitude_sweep(std::span<const double> thetas, const PhysicalParams& p,
                                                    Execution exec) {
  return exec.parallel ? closed_amplitude_sweep_omp(thetas, p, exec.threads)
                       : closed_amplitude_sweep_serial(thetas, p);
}

std::vector<AmplitudeResult> series_amplitude_sweep(std::span<const double> thetas, const PhysicalParams& p,
                                                    const SummationConfig& cfg, bool compare_with_closed,
                                                    Execution exec) {
  return exec.parallel ? series_amplitude_sweep_omp(thetas, p, cfg, compare_with_closed, exec.threads)
                       : series_amplitude_sweep_serial(thetas, p, cfg, compare_with_closed);
}

std::vector<double> delta_kernel_grid(std::span<const double> xs, double eps, int max_degree, Execution exec) {
  return exec.parallel ? delta_kernel_grid_omp(xs, eps, max_degree, exec.threads)
                       : delta_kernel_grid_serial(xs, eps, max_degree);
}

}  // namespace coulomb::kernels
