#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "fluxtwin/errors.hpp"

namespace fluxtwin::spectral {

enum class RingBc { twisted, gauge };

// Angular ring at fixed hyperradius. "twisted" carries the flux in the wrap
// phase of the second difference; "gauge" carries it in uniform link phases
// with a periodic wrap. The two matrices are exactly unitarily equivalent.
struct RingGrid {
  int N = 64;
  double r = 1.0;
  double mu = 1.0;
  double alpha = 0.0;
  RingBc bc_kind = RingBc::twisted;
  double hbar = 1.0;

  void validate() const;  // N >= 8
  double spacing() const;
};

// Radial disk problem in the measure-weighted form u = sqrt(r) psi: the
// operator -(hbar^2/2mu)(d^2/dr^2 - (nu^2 - 1/4)/r^2) + V(r) with Dirichlet
// walls at the inner cutoff and at R.
struct RadialGrid {
  int M = 128;
  double R = 1.0;
  double epsilon_core = 0.0;  // <= 0 selects the default R / (10 M^2)
  double nu = 0.0;            // effective angular order |m + alpha|
  double mu = 1.0;
  std::vector<double> potential;  // optional V at the M interior nodes
  double hbar = 1.0;

  void validate() const;
  double effective_core() const;
  double spacing() const;
  double node(int j) const;  // j = 0 .. M-1
};

struct SpectrumTable {
  std::vector<double> energy;    // ascending
  std::vector<double> residual;  // ||H v - E v|| per reported pair
  std::map<std::string, std::string> meta;

  int count() const { return static_cast<int>(energy.size()); }
};

Eigen::MatrixXcd build_ring_hamiltonian(const RingGrid& g);

struct Tridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd sub;
};

Tridiagonal build_radial_hamiltonian(const RadialGrid& g);

// Continuum twisted-ring levels hbar^2 (m + alpha)^2 / (2 mu r^2), m ranging
// over [-m_range, m_range], sorted.
SpectrumTable ring_levels_analytic(double mu, double r, double alpha, int m_range,
                                   double hbar = 1.0);

// Disk levels hbar^2 j_{nu,k}^2 / (2 mu R^2) from the Bessel-zero oracle.
SpectrumTable disk_levels_analytic(double mu, double R, double nu, int k_count,
                                   double hbar = 1.0);

// k smallest eigenvalues with residual check (<= 1e-8 per pair).
SpectrumTable spectrum(const Eigen::MatrixXcd& hamiltonian, int k);
SpectrumTable spectrum(const Tridiagonal& hamiltonian, int k);

struct EquivalenceReport {
  int N = 0;
  double alpha = 0.0;
  double max_entry_deviation = 0.0;
  double max_spectrum_deviation = 0.0;  // relative to the spectral scale
  bool entry_pass = false;
  bool spectrum_pass = false;

  bool pass() const { return entry_pass && spectrum_pass; }
  std::string summary() const;
};

// Conjugates the twisted matrix by W = diag(exp(i alpha theta_j)) and checks
// it equals the gauge matrix entrywise (<= 1e-13), with sorted spectra
// agreeing to 1e-10 relative.
EquivalenceReport unitary_equivalence_check(const RingGrid& g);

}  // namespace fluxtwin::spectral
