#pragma once

#include <array>
#include <compare>
#include <vector>

#include "fluxtwin/errors.hpp"

namespace fluxtwin::coords {

// Coincidence exclusion radius, in mu0-normalized length units. Evaluations
// with a triple radius at or below this are hard errors, never clamped.
inline constexpr double kDefaultEpsilon = 1e-9;

// Ordered particle triple, 0-based, i < j < k. Serialized forms (JSON flux
// keys, CLI output) use 1-based labels; conversion happens at the boundary.
struct Triple {
  int i = 0;
  int j = 1;
  int k = 2;
  auto operator<=>(const Triple&) const = default;
};

std::vector<Triple> all_triples(int n);

struct MassSystem {
  std::vector<double> m;  // n >= 3 particle masses, all > 0
  double mu0 = 1.0;       // reference mass scale used to give r length units

  MassSystem() = default;
  explicit MassSystem(std::vector<double> masses, double mu0_scale = 1.0);

  int n() const { return static_cast<int>(m.size()); }
  void validate() const;
};

struct ReducedMasses {
  double mu1;  // pair (i,j)
  double mu2;  // (i,j) pair against k
  double mu3;  // total mass of the triple
};

struct Configuration {
  std::vector<double> x;

  Configuration() = default;
  explicit Configuration(std::vector<double> positions) : x(std::move(positions)) {}
  int n() const { return static_cast<int>(x.size()); }
};

struct JacobiPoint {
  double xi1 = 0.0;  // relative coordinate of the pair
  double xi2 = 0.0;  // pair center of mass against the third particle
  double xi3 = 0.0;  // center of mass
};

// Polar point on the punctured relative plane. theta is stored in [0, 2pi);
// sheet counts full turns so that theta + 2*pi*sheet is the unwrapped angle.
struct HyperPolarPoint {
  double r = 0.0;
  double theta = 0.0;
  int sheet = 0;
  double xi3 = 0.0;

  double theta_unwrapped() const;
};

// Time-ordered polyline in n-particle configuration space. Between adjacent
// samples every particle moves linearly.
struct Trajectory {
  std::vector<double> t;
  std::vector<Configuration> x;

  int n() const { return x.empty() ? 0 : x.front().n(); }
  std::size_t size() const { return t.size(); }
  void validate() const;
  bool is_closed(double tol = 1e-12) const;
};

ReducedMasses reduced_masses(const MassSystem& ms, const Triple& triple);

// Jacobi map and inverse for a three-particle system (or a selected triple).
JacobiPoint to_jacobi(const MassSystem& ms, const Configuration& c);
JacobiPoint to_jacobi(const MassSystem& ms, const Configuration& c, const Triple& triple);
Configuration from_jacobi(const MassSystem& ms, const JacobiPoint& j);

// The linear map xi = J x for n = 3; row-major. Pulling the kinetic form
// diag(1/m_i) back through it gives diag(1/mu_i).
std::array<std::array<double, 3>, 3> jacobi_matrix(const MassSystem& ms);

HyperPolarPoint to_hyperpolar(const MassSystem& ms, const JacobiPoint& j,
                              double epsilon = kDefaultEpsilon);
JacobiPoint from_hyperpolar(const MassSystem& ms, const HyperPolarPoint& p);

// Mass-weighted distance of the triple from its coincidence locus.
double triple_radius(const MassSystem& ms, const Configuration& c, const Triple& triple);

// Angle of the triple's relative position on the punctured plane, resolved to
// [0, 2pi) by a two-argument arctangent. Counterclockwise motion in the
// (sqrt(mu1) xi1, sqrt(mu2) xi2) plane increases theta; this orientation is
// the global convention for windings and Wilson phases.
double triple_angle(const MassSystem& ms, const Configuration& c, const Triple& triple,
                    double epsilon = kDefaultEpsilon);

// Total unwrapped change of the triple angle along a trajectory. Polyline
// segments are bisected until every sub-step moves the angle by less than
// max_step; each sampled point must stay outside the coincidence radius.
double unwrapped_angle_delta(const MassSystem& ms, const Trajectory& traj,
                             const Triple& triple, double epsilon = kDefaultEpsilon,
                             double max_step = 1.5707963267948966,
                             int max_depth = 48);

// Smallest triple radius seen over all triples and all samples of a
// trajectory (segment midpoints included once).
double min_triple_radius(const MassSystem& ms, const Trajectory& traj);

}  // namespace fluxtwin::coords
