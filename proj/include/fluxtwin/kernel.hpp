#pragma once

#include <complex>
#include <vector>

#include "fluxtwin/errors.hpp"

namespace fluxtwin::kernel {

enum class TimeMode { real, imaginary };

// Parameters of the reduced ring problem: free motion on the angular circle
// at fixed hyperradius, moment of inertia mu * radius^2.
struct KernelSpec {
  double mu = 1.0;
  double radius = 1.0;
  double time = 1.0;
  TimeMode mode = TimeMode::imaginary;
  double alpha = 0.0;
  int n_wind = 64;   // winding sum over |n| <= n_wind
  int n_modes = 64;  // mode sum over |m| <= n_modes
  double hbar = 1.0;
  double tail_tolerance = 1e-8;
  bool strict_tail = false;  // hard error vs advisory when the tail is large

  void validate() const;
  double moment_of_inertia() const { return mu * radius * radius; }
};

// Free one-dimensional kernel: Gaussian in real time, heat kernel in
// imaginary time.
std::complex<double> free_kernel_line(double mass, double time, TimeMode mode, double x,
                                      double y, double hbar = 1.0);

// Representation-weighted winding sum over deck images theta' + 2 pi n,
// weight exp(2 pi i alpha n). Satisfies the twisted boundary condition in
// theta up to the truncation tail.
std::complex<double> covering_sum_kernel_ring(const KernelSpec& spec, double theta,
                                              double theta_prime,
                                              double* tail_estimate = nullptr);

// Spectral-side evaluation over twisted ring modes exp(i (m+alpha) theta);
// equals the covering sum by Poisson summation.
std::complex<double> mode_sum_kernel_ring(const KernelSpec& spec, double theta,
                                          double theta_prime,
                                          double* tail_estimate = nullptr);

// Gauge-transformed kernel exp(-i alpha (theta - theta')) * covering sum;
// periodic in theta up to the truncation tail.
std::complex<double> gauge_transform_kernel(const KernelSpec& spec, double theta,
                                            double theta_prime,
                                            double* tail_estimate = nullptr);

enum class KernelKind { covering, mode, gauge };

struct KernelTable {
  std::vector<double> theta;
  std::vector<double> theta_prime;
  std::vector<std::vector<std::complex<double>>> value;  // [i][j]
  KernelSpec spec;
  KernelKind kind = KernelKind::covering;
  // Truncation plus roundoff error estimate, maximum over the grid.
  double tail_estimate = 0.0;
};

KernelTable build_kernel_table(const KernelSpec& spec, KernelKind kind, int n_theta,
                               int n_theta_prime);

}  // namespace fluxtwin::kernel
