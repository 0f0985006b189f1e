#pragma once

// Data-parallel kernels. Every function comes in a serial reference form and
// an OpenMP form with identical results: parallelism is only over independent
// tasks (eps values, grid points) and each task is summed serially, so the
// output is bit-identical for any thread count. Without OpenMP the *_omp
// functions run serially.

#include <span>
#include <vector>

#include "coulomb/coulomb_core.hpp"
#include "coulomb/summation.hpp"

namespace coulomb::kernels {

/// threads <= 0 means the OpenMP default.
struct Execution {
  bool parallel = true;
  int threads = 0;
};

/// sum_l terms[l] * w(eps_j, l) for each eps_j.
std::vector<Complex> damped_sums_serial(std::span<const Complex> terms, std::span<const double> eps,
                                        Damping damping);
std::vector<Complex> damped_sums_omp(std::span<const Complex> terms, std::span<const double> eps,
                                     Damping damping, int threads = 0);

std::vector<AmplitudeResult> closed_amplitude_sweep_serial(std::span<const double> thetas,
                                                           const PhysicalParams& p);
std::vector<AmplitudeResult> closed_amplitude_sweep_omp(std::span<const double> thetas, const PhysicalParams& p,
                                                        int threads = 0);

std::vector<AmplitudeResult> series_amplitude_sweep_serial(std::span<const double> thetas,
                                                           const PhysicalParams& p, const SummationConfig& cfg,
                                                           bool compare_with_closed = true);
std::vector<AmplitudeResult> series_amplitude_sweep_omp(std::span<const double> thetas, const PhysicalParams& p,
                                                        const SummationConfig& cfg,
                                                        bool compare_with_closed = true, int threads = 0);

std::vector<double> delta_kernel_grid_serial(std::span<const double> xs, double eps, int max_degree);
std::vector<double> delta_kernel_grid_omp(std::span<const double> xs, double eps, int max_degree,
                                          int threads = 0);

/// Dispatch helpers used by the CLI.
std::vector<AmplitudeResult> closed_amplitude_sweep(std::span<const double> thetas, const PhysicalParams& p,
                                                    Execution exec);
std::vector<AmplitudeResult> series_amplitude_sweep(std::span<const double> thetas, const PhysicalParams& p,
                                                    const SummationConfig& cfg, bool compare_with_closed,
                                                    Execution exec);
std::vector<double> delta_kernel_grid(std::span<const double> xs, double eps, int max_degree, Execution exec);

bool openmp_enabled();

}  // namespace coulomb::kernels
