#include "fluxtwin/coords.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fluxtwin::coords {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_two_pi(double a) {
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

void check_triple(const MassSystem& ms, const Triple& t) {
  if (!(0 <= t.i && t.i < t.j && t.j < t.k && t.k < ms.n()))
    throw Error("triple (" + std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                std::to_string(t.k) + ") out of range for n=" + std::to_string(ms.n()));
}

}  // namespace

std::vector<Triple> all_triples(int n) {
  std::vector<Triple> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

MassSystem::MassSystem(std::vector<double> masses, double mu0_scale)
    : m(std::move(masses)), mu0(mu0_scale) {
  validate();
}

void MassSystem::validate() const {
  if (n() < 3) throw InvalidMassError("need at least 3 particles");
  for (double mi : m)
    if (!(mi > 0.0) || !std::isfinite(mi))
      throw InvalidMassError("masses must be strictly positive and finite");
  if (!(mu0 > 0.0) || !std::isfinite(mu0))
    throw InvalidMassError("mu0 must be strictly positive and finite");
}

double HyperPolarPoint::theta_unwrapped() const { return theta + kTwoPi * sheet; }

void Trajectory::validate() const {
  if (t.size() != x.size()) throw Error("trajectory time/position length mismatch");
  if (t.size() < 2) throw Error("trajectory needs at least two samples");
  const int dim = x.front().n();
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (!std::isfinite(t[s])) throw Error("non-finite trajectory time");
    if (x[s].n() != dim) throw Error("trajectory dimension changes over time");
    for (double xi : x[s].x)
      if (!std::isfinite(xi)) throw Error("non-finite trajectory position");
    if (s > 0 && !(t[s] > t[s - 1])) throw Error("trajectory times must increase");
  }
}

bool Trajectory::is_closed(double tol) const {
  if (t.size() < 2) return false;
  double scale = 1.0;
  for (double xi : x.front().x) scale = std::max(scale, std::abs(xi));
  for (int i = 0; i < n(); ++i)
    if (std::abs(x.front().x[i] - x.back().x[i]) > tol * scale) return false;
  return true;
}

ReducedMasses reduced_masses(const MassSystem& ms, const Triple& triple) {
  ms.validate();
  check_triple(ms, triple);
  const double mi = ms.m[triple.i], mj = ms.m[triple.j], mk = ms.m[triple.k];
  return {mi * mj / (mi + mj), (mi + mj) * mk / (mi + mj + mk), mi + mj + mk};
}

JacobiPoint to_jacobi(const MassSystem& ms, const Configuration& c) {
  if (ms.n() != 3 || c.n() != 3) throw Error("to_jacobi without a triple needs n = 3");
  return to_jacobi(ms, c, Triple{0, 1, 2});
}

JacobiPoint to_jacobi(const MassSystem& ms, const Configuration& c, const Triple& triple) {
  check_triple(ms, triple);
  if (c.n() != ms.n()) throw Error("configuration and mass system disagree on n");
  const double mi = ms.m[triple.i], mj = ms.m[triple.j], mk = ms.m[triple.k];
  const double xi = c.x[triple.i], xj = c.x[triple.j], xk = c.x[triple.k];
  JacobiPoint out;
  out.xi1 = xi - xj;
  out.xi2 = (mi * (xi - xk) + mj * (xj - xk)) / (mi + mj);
  out.xi3 = (mi * xi + mj * xj + mk * xk) / (mi + mj + mk);
  return out;
}

Configuration from_jacobi(const MassSystem& ms, const JacobiPoint& j) {
  if (ms.n() != 3) throw Error("from_jacobi needs n = 3");
  const double m1 = ms.m[0], m2 = ms.m[1], m3 = ms.m[2];
  const double m12 = m1 + m2, mtot = m12 + m3;
  const double x3 = j.xi3 - (m12 / mtot) * j.xi2;
  const double c12 = j.xi3 + (m3 / mtot) * j.xi2;
  return Configuration{{c12 + (m2 / m12) * j.xi1, c12 - (m1 / m12) * j.xi1, x3}};
}

std::array<std::array<double, 3>, 3> jacobi_matrix(const MassSystem& ms) {
  if (ms.n() != 3) throw Error("jacobi_matrix needs n = 3");
  const double m1 = ms.m[0], m2 = ms.m[1], m3 = ms.m[2];
  const double m12 = m1 + m2, mtot = m12 + m3;
  return {{{1.0, -1.0, 0.0},
           {m1 / m12, m2 / m12, -1.0},
           {m1 / mtot, m2 / mtot, m3 / mtot}}};
}

HyperPolarPoint to_hyperpolar(const MassSystem& ms, const JacobiPoint& j, double epsilon) {
  if (ms.n() != 3) throw Error("to_hyperpolar needs n = 3");
  const ReducedMasses mu = reduced_masses(ms, Triple{0, 1, 2});
  const double rho2 = mu.mu1 * j.xi1 * j.xi1 + mu.mu2 * j.xi2 * j.xi2;
  const double r = std::sqrt(rho2 / ms.mu0);
  if (r <= epsilon)
    throw CoincidenceError("hyperpolar point within coincidence radius (r = " +
                           std::to_string(r) + ")");
  HyperPolarPoint out;
  out.r = r;
  out.theta = wrap_to_two_pi(std::atan2(std::sqrt(mu.mu2) * j.xi2, std::sqrt(mu.mu1) * j.xi1));
  out.sheet = 0;
  out.xi3 = j.xi3;
  return out;
}

JacobiPoint from_hyperpolar(const MassSystem& ms, const HyperPolarPoint& p) {
  if (ms.n() != 3) throw Error("from_hyperpolar needs n = 3");
  const ReducedMasses mu = reduced_masses(ms, Triple{0, 1, 2});
  const double a = p.theta_unwrapped();
  JacobiPoint out;
  out.xi1 = std::sqrt(ms.mu0 / mu.mu1) * p.r * std::cos(a);
  out.xi2 = std::sqrt(ms.mu0 / mu.mu2) * p.r * std::sin(a);
  out.xi3 = p.xi3;
  return out;
}

double triple_radius(const MassSystem& ms, const Configuration& c, const Triple& triple) {
  check_triple(ms, triple);
  if (c.n() != ms.n()) throw Error("configuration and mass system disagree on n");
  const double mi = ms.m[triple.i], mj = ms.m[triple.j], mk = ms.m[triple.k];
  const double xi = c.x[triple.i], xj = c.x[triple.j], xk = c.x[triple.k];
  const double q = mi * mj * (xi - xj) * (xi - xj) + mi * mk * (xi - xk) * (xi - xk) +
                   mj * mk * (xj - xk) * (xj - xk);
  return std::sqrt(q / (ms.mu0 * (mi + mj + mk)));
}

double triple_angle(const MassSystem& ms, const Configuration& c, const Triple& triple,
                    double epsilon) {
  if (triple_radius(ms, c, triple) <= epsilon)
    throw CoincidenceError("triple angle evaluated within coincidence radius");
  const double mi = ms.m[triple.i], mj = ms.m[triple.j], mk = ms.m[triple.k];
  const double xi = c.x[triple.i], xj = c.x[triple.j], xk = c.x[triple.k];
  const double num = std::sqrt(mi * mj * mk / (mi + mj + mk)) * (mi * (xi - xk) + mj * (xj - xk));
  const double den = mi * mj * (xi - xj);
  return wrap_to_two_pi(std::atan2(num, den));
}

namespace {

// Principal angle increment between two configurations, bisecting until the
// step is below max_step. Within one linear segment the angle cannot move by
// pi or more, so the principal value of each accepted sub-step is exact.
double refine_delta(const MassSystem& ms, const Triple& triple, double epsilon,
                    double max_step, const std::vector<double>& xa, double ta,
                    const std::vector<double>& xb, double tb, int depth, int max_depth) {
  const double pd = std::remainder(tb - ta, kTwoPi);
  if (std::abs(pd) < max_step) return pd;
  if (depth >= max_depth)
    throw SamplingError("angle unwrapping not resolved at maximum refinement depth");
  std::vector<double> xm(xa.size());
  for (std::size_t q = 0; q < xa.size(); ++q) xm[q] = 0.5 * (xa[q] + xb[q]);
  const Configuration cm{xm};
  const double tm = triple_angle(ms, cm, triple, epsilon);
  return refine_delta(ms, triple, epsilon, max_step, xa, ta, xm, tm, depth + 1, max_depth) +
         refine_delta(ms, triple, epsilon, max_step, xm, tm, xb, tb, depth + 1, max_depth);
}

}  // namespace

double unwrapped_angle_delta(const MassSystem& ms, const Trajectory& traj,
                             const Triple& triple, double epsilon, double max_step,
                             int max_depth) {
  traj.validate();
  double total = 0.0;
  double prev_angle = triple_angle(ms, traj.x.front(), triple, epsilon);
  for (std::size_t s = 0; s + 1 < traj.size(); ++s) {
    const double next_angle = triple_angle(ms, traj.x[s + 1], triple, epsilon);
    total += refine_delta(ms, triple, epsilon, max_step, traj.x[s].x, prev_angle,
                          traj.x[s + 1].x, next_angle, 0, max_depth);
    prev_angle = next_angle;
  }
  return total;
}

double min_triple_radius(const MassSystem& ms, const Trajectory& traj) {
  traj.validate();
  double best = std::numeric_limits<double>::infinity();
  const std::vector<Triple> triples = all_triples(traj.n());
  std::vector<double> xm(traj.n());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    for (const Triple& tr : triples) best = std::min(best, triple_radius(ms, traj.x[s], tr));
    if (s + 1 < traj.size()) {
      for (int q = 0; q < traj.n(); ++q) xm[q] = 0.5 * (traj.x[s].x[q] + traj.x[s + 1].x[q]);
      const Configuration cm{xm};
      for (const Triple& tr : triples) best = std::min(best, triple_radius(ms, cm, tr));
    }
  }
  return best;
}

}  // namespace fluxtwin::coords
