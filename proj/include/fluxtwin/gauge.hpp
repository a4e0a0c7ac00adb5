#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "fluxtwin/coords.hpp"
#include "fluxtwin/errors.hpp"
#include "fluxtwin/twin.hpp"

namespace fluxtwin::gauge {

// One dimensionless flux parameter per ordered particle triple. Values are
// stored as arbitrary reals; physics is periodic under alpha -> alpha + 1 at
// the Wilson-loop level, enforced only in reporting.
struct FluxSet {
  int n = 3;
  std::map<coords::Triple, double> alpha;

  FluxSet() = default;
  FluxSet(int particles, std::map<coords::Triple, double> a);

  static FluxSet single(double a);            // n = 3
  static FluxSet zero(int particles);
  static FluxSet uniform(int particles, double a);

  double at(const coords::Triple& t) const;
  void set(const coords::Triple& t, double a);
  void validate() const;  // keys must be exactly the C(n,3) triples
};

// Components of the gauge one-form at a point; sum_i A[i] = 0.
struct GaugeVector {
  std::vector<double> A;
};

GaugeVector gauge_potential(const coords::MassSystem& ms, const FluxSet& flux,
                            const coords::Configuration& c, double hbar = 1.0,
                            double epsilon = coords::kDefaultEpsilon);

using ScalarField = std::function<std::complex<double>(const coords::Configuration&)>;

// Central finite difference of f plus (i/hbar) A_i f, per component.
std::vector<std::complex<double>> covariant_gradient(
    const ScalarField& f, const coords::MassSystem& ms, const FluxSet& flux,
    const coords::Configuration& c, double step, double hbar = 1.0,
    double epsilon = coords::kDefaultEpsilon);

// exp((i/hbar) Int_path A), evaluated as exp(i sum_t alpha_t dtheta_t) with
// unwrapped angle increments (exact for this flat connection).
std::complex<double> wilson_line(const coords::MassSystem& ms, const FluxSet& flux,
                                 const coords::Trajectory& path,
                                 double epsilon = coords::kDefaultEpsilon);

// Integer winding of every triple along a closed trajectory.
std::map<coords::Triple, int> loop_windings(const coords::MassSystem& ms,
                                            const coords::Trajectory& loop,
                                            double epsilon = coords::kDefaultEpsilon);

std::complex<double> wilson_loop(const coords::MassSystem& ms, const FluxSet& flux,
                                 const coords::Trajectory& loop,
                                 double epsilon = coords::kDefaultEpsilon);

// Circulation of A around a closed trajectory: hbar sum_t alpha_t 2 pi w_t.
double loop_flux(const coords::MassSystem& ms, const FluxSet& flux,
                 const coords::Trajectory& loop, double hbar = 1.0,
                 double epsilon = coords::kDefaultEpsilon);

// Reference line integral of sum_i A_i dx_i by adaptive Gauss-Legendre
// quadrature over the polyline. Slow; kept as the cross-check for the
// unwrapped-angle evaluation.
double line_integral_quadrature(const coords::MassSystem& ms, const FluxSet& flux,
                                const coords::Trajectory& path, double hbar = 1.0,
                                double epsilon = coords::kDefaultEpsilon);

// Value of the one-dimensional unitary representation on a pure word:
// exp(2 pi i sum_t alpha_t w_t) through the word's strand trajectory.
std::complex<double> rep_value(const twin::TwinWord& w, const coords::MassSystem& ms,
                               const FluxSet& flux,
                               double epsilon = coords::kDefaultEpsilon);

}  // namespace fluxtwin::gauge
