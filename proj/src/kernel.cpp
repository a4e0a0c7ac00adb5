#include "fluxtwin/kernel.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace fluxtwin::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
using cplx = std::complex<double>;

// tail = last included term plus a roundoff allowance covering both the
// accumulation and the sensitivity of each term to rounding of its argument;
// residual checks compare against a multiple of this.
double with_roundoff_floor(double last_term, double abs_sum, double arg_sensitivity) {
  return last_term + DBL_EPSILON * (4.0 * abs_sum + 8.0 * arg_sensitivity);
}

void maybe_throw_tail(const KernelSpec& spec, double tail) {
  if (spec.strict_tail && tail > spec.tail_tolerance)
    throw TruncationError("truncation tail " + std::to_string(tail) +
                          " above tolerance; increase n_wind/n_modes");
}

}  // namespace

void KernelSpec::validate() const {
  if (!(mu > 0.0) || !(radius > 0.0)) throw Error("kernel spec needs mu > 0 and radius > 0");
  if (!(hbar > 0.0)) throw Error("kernel spec needs hbar > 0");
  if (n_wind < 1) throw Error("kernel spec needs n_wind >= 1");
  if (n_modes < 1) throw Error("kernel spec needs n_modes >= 1");
  if (mode == TimeMode::imaginary && !(time > 0.0))
    throw DegenerateTimeError("imaginary-time kernel needs time > 0");
  if (mode == TimeMode::real && time == 0.0)
    throw DegenerateTimeError("real-time kernel needs time != 0");
}

std::complex<double> free_kernel_line(double mass, double time, TimeMode mode, double x,
                                      double y, double hbar) {
  if (!(mass > 0.0) || !(hbar > 0.0)) throw Error("free kernel needs mass > 0 and hbar > 0");
  const double d = x - y;
  if (mode == TimeMode::imaginary) {
    if (!(time > 0.0)) throw DegenerateTimeError("imaginary-time kernel needs time > 0");
    return std::sqrt(mass / (kTwoPi * hbar * time)) *
           std::exp(-mass * d * d / (2.0 * hbar * time));
  }
  if (time == 0.0) throw DegenerateTimeError("real-time kernel needs time != 0");
  const cplx prefactor = std::sqrt(cplx(0.0, -mass / (kTwoPi * hbar * time)));
  return prefactor * std::exp(cplx(0.0, mass * d * d / (2.0 * hbar * time)));
}

std::complex<double> covering_sum_kernel_ring(const KernelSpec& spec, double theta,
                                              double theta_prime, double* tail_estimate) {
  spec.validate();
  const double inertia = spec.moment_of_inertia();
  const double delta = theta - theta_prime;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  double edge = 0.0;
  double arg_sensitivity = 0.0;
  for (int n = -spec.n_wind; n <= spec.n_wind; ++n) {
    const double z = delta - kTwoPi * n;
    const cplx term = std::polar(1.0, kTwoPi * spec.alpha * n) *
                      free_kernel_line(inertia, spec.time, spec.mode, z, 0.0, spec.hbar);
    sum += term;
    const double mag = std::abs(term);
    abs_sum += mag;
    // |d term / d z| * |z|: the Gaussian amplifies argument roundoff by z/width^2
    arg_sensitivity += mag * (std::abs(z) * inertia / (spec.hbar * std::abs(spec.time))) *
                       (std::abs(z) + kTwoPi);
    if (std::abs(n) == spec.n_wind) edge = std::max(edge, mag);
  }
  const double tail = with_roundoff_floor(edge, abs_sum, arg_sensitivity);
  if (tail_estimate) *tail_estimate = tail;
  maybe_throw_tail(spec, tail);
  return sum;
}

std::complex<double> mode_sum_kernel_ring(const KernelSpec& spec, double theta,
                                          double theta_prime, double* tail_estimate) {
  spec.validate();
  const double inertia = spec.moment_of_inertia();
  const double delta = theta - theta_prime;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  double edge = 0.0;
  double arg_sensitivity = 0.0;
  for (int m = -spec.n_modes; m <= spec.n_modes; ++m) {
    const double q = m + spec.alpha;
    const double rate = spec.hbar * q * q * spec.time / (2.0 * inertia);
    const cplx weight = spec.mode == TimeMode::imaginary
                            ? cplx(std::exp(-rate), 0.0)
                            : std::polar(1.0, -rate);
    const cplx term = std::polar(1.0, q * delta) * weight / kTwoPi;
    sum += term;
    const double mag = std::abs(term);
    abs_sum += mag;
    arg_sensitivity += mag * std::abs(q) * (std::abs(delta) + kTwoPi);
    if (std::abs(m) == spec.n_modes) edge = std::max(edge, mag);
  }
  const double tail = with_roundoff_floor(edge, abs_sum, arg_sensitivity);
  if (tail_estimate) *tail_estimate = tail;
  maybe_throw_tail(spec, tail);
  return sum;
}

std::complex<double> gauge_transform_kernel(const KernelSpec& spec, double theta,
                                            double theta_prime, double* tail_estimate) {
  const cplx twisted = covering_sum_kernel_ring(spec, theta, theta_prime, tail_estimate);
  return std::polar(1.0, -spec.alpha * (theta - theta_prime)) * twisted;
}

KernelTable build_kernel_table(const KernelSpec& spec, KernelKind kind, int n_theta,
                               int n_theta_prime) {
  spec.validate();
  if (n_theta < 1 || n_theta_prime < 1) throw Error("kernel table needs a nonempty grid");

  KernelTable table;
  table.spec = spec;
  table.kind = kind;
  table.theta.resize(n_theta);
  table.theta_prime.resize(n_theta_prime);
  for (int i = 0; i < n_theta; ++i) table.theta[i] = kTwoPi * i / n_theta;
  for (int j = 0; j < n_theta_prime; ++j) table.theta_prime[j] = kTwoPi * j / n_theta_prime;

  table.value.assign(n_theta, std::vector<cplx>(n_theta_prime));
  double worst_tail = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_theta_prime; ++j) {
      double tail = 0.0;
      switch (kind) {
        case KernelKind::covering:
          table.value[i][j] =
              covering_sum_kernel_ring(spec, table.theta[i], table.theta_prime[j], &tail);
          break;
        case KernelKind::mode:
          table.value[i][j] =
              mode_sum_kernel_ring(spec, table.theta[i], table.theta_prime[j], &tail);
          break;
        case KernelKind::gauge:
          table.value[i][j] =
              gauge_transform_kernel(spec, table.theta[i], table.theta_prime[j], &tail);
          break;
      }
      worst_tail = std::max(worst_tail, tail);
    }
  }
  table.tail_estimate = worst_tail;
  return table;
}

}  // namespace fluxtwin::kernel
