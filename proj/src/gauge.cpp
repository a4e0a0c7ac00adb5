#include "fluxtwin/gauge.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fluxtwin::gauge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

}  // namespace

FluxSet::FluxSet(int particles, std::map<coords::Triple, double> a)
    : n(particles), alpha(std::move(a)) {
  validate();
}

FluxSet FluxSet::single(double a) { return uniform(3, a); }

FluxSet FluxSet::zero(int particles) { return uniform(particles, 0.0); }

FluxSet FluxSet::uniform(int particles, double a) {
  FluxSet f;
  f.n = particles;
  for (const coords::Triple& t : coords::all_triples(particles)) f.alpha[t] = a;
  f.validate();
  return f;
}

double FluxSet::at(const coords::Triple& t) const {
  const auto it = alpha.find(t);
  if (it == alpha.end()) throw Error("flux set has no entry for requested triple");
  return it->second;
}

void FluxSet::set(const coords::Triple& t, double a) {
  if (alpha.find(t) == alpha.end()) throw Error("flux set has no entry for requested triple");
  alpha[t] = a;
}

void FluxSet::validate() const {
  if (n < 3) throw Error("flux set needs n >= 3");
  const std::vector<coords::Triple> triples = coords::all_triples(n);
  if (alpha.size() != triples.size())
    throw Error("flux set must hold exactly one value per triple");
  for (const coords::Triple& t : triples) {
    const auto it = alpha.find(t);
    if (it == alpha.end()) throw Error("flux set is missing a triple");
    if (!std::isfinite(it->second)) throw Error("flux parameter must be finite");
  }
}

GaugeVector gauge_potential(const coords::MassSystem& ms, const FluxSet& flux,
                            const coords::Configuration& c, double hbar, double epsilon) {
  ms.validate();
  flux.validate();
  if (ms.n() != flux.n || c.n() != flux.n)
    throw Error("gauge_potential: inconsistent particle counts");

  GaugeVector out;
  out.A.assign(c.n(), 0.0);
  for (const auto& [t, a] : flux.alpha) {
    if (coords::triple_radius(ms, c, t) <= epsilon)
      throw CoincidenceError("gauge potential evaluated within coincidence radius");
    const double mj = ms.m[t.i], mk = ms.m[t.j], ml = ms.m[t.k];
    const double xj = c.x[t.i], xk = c.x[t.j], xl = c.x[t.k];
    const double den = mj * mk * (xj - xk) * (xj - xk) + mk * ml * (xk - xl) * (xk - xl) +
                       ml * mj * (xl - xj) * (xl - xj);
    const double pre = -hbar * a * std::sqrt(mj * mk * ml * (mj + mk + ml)) / den;
    out.A[t.i] += pre * (xk - xl);
    out.A[t.j] += pre * (xl - xj);
    out.A[t.k] += pre * (xj - xk);
  }
  return out;
}

std::vector<cplx> covariant_gradient(const ScalarField& f, const coords::MassSystem& ms,
                                     const FluxSet& flux, const coords::Configuration& c,
                                     double step, double hbar, double epsilon) {
  if (!(step > 0.0)) throw Error("covariant_gradient needs step > 0");
  const GaugeVector A = gauge_potential(ms, flux, c, hbar, epsilon);
  const cplx fc = f(c);
  std::vector<cplx> out(c.n());
  coords::Configuration probe = c;
  for (int i = 0; i < c.n(); ++i) {
    probe.x[i] = c.x[i] + step;
    const cplx fp = f(probe);
    probe.x[i] = c.x[i] - step;
    const cplx fm = f(probe);
    probe.x[i] = c.x[i];
    out[i] = (fp - fm) / (2.0 * step) + cplx(0.0, A.A[i] / hbar) * fc;
  }
  return out;
}

namespace {

// Sum over triples of alpha * (unwrapped angle increment).
double weighted_angle_delta(const coords::MassSystem& ms, const FluxSet& flux,
                            const coords::Trajectory& path, double epsilon) {
  path.validate();
  if (ms.n() != path.n() || flux.n != path.n())
    throw Error("trajectory, masses and flux set disagree on n");
  double phase = 0.0;
  for (const auto& [t, a] : flux.alpha)
    phase += a * coords::unwrapped_angle_delta(ms, path, t, epsilon);
  return phase;
}

void require_closed(const coords::Trajectory& loop) {
  if (!loop.is_closed(1e-12)) throw InvalidLoopError("trajectory endpoints do not match");
}

}  // namespace

cplx wilson_line(const coords::MassSystem& ms, const FluxSet& flux,
                 const coords::Trajectory& path, double epsilon) {
  return std::polar(1.0, weighted_angle_delta(ms, flux, path, epsilon));
}

std::map<coords::Triple, int> loop_windings(const coords::MassSystem& ms,
                                            const coords::Trajectory& loop, double epsilon) {
  loop.validate();
  require_closed(loop);
  std::map<coords::Triple, int> out;
  for (const coords::Triple& t : coords::all_triples(loop.n())) {
    const double turns = coords::unwrapped_angle_delta(ms, loop, t, epsilon) / kTwoPi;
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 1e-6)
      throw SamplingError("closed loop produced non-integer winding " + std::to_string(turns));
    out[t] = static_cast<int>(nearest);
  }
  return out;
}

cplx wilson_loop(const coords::MassSystem& ms, const FluxSet& flux,
                 const coords::Trajectory& loop, double epsilon) {
  const std::map<coords::Triple, int> w = loop_windings(ms, loop, epsilon);
  double turns = 0.0;
  for (const auto& [t, wt] : w) turns += flux.at(t) * wt;
  return std::polar(1.0, kTwoPi * turns);
}

double loop_flux(const coords::MassSystem& ms, const FluxSet& flux,
                 const coords::Trajectory& loop, double hbar, double epsilon) {
  const std::map<coords::Triple, int> w = loop_windings(ms, loop, epsilon);
  double total = 0.0;
  for (const auto& [t, wt] : w) total += flux.at(t) * wt;
  return hbar * kTwoPi * total;
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNode = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeight = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct SegmentIntegrand {
  const coords::MassSystem& ms;
  const FluxSet& flux;
  const std::vector<double>& xa;
  const std::vector<double>& xb;
  double hbar;
  double epsilon;

  // A(x(s)) . dx/ds at parameter s in [0, 1]
  double operator()(double s) const {
    std::vector<double> x(xa.size());
    for (std::size_t q = 0; q < xa.size(); ++q) x[q] = xa[q] + s * (xb[q] - xa[q]);
    const GaugeVector A = gauge_potential(ms, flux, coords::Configuration{x}, hbar, epsilon);
    double dot = 0.0;
    for (std::size_t q = 0; q < xa.size(); ++q) dot += A.A[q] * (xb[q] - xa[q]);
    return dot;
  }
};

double gl8(const SegmentIntegrand& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int q = 0; q < 8; ++q) sum += kGlWeight[q] * f(mid + half * kGlNode[q]);
  return sum * half;
}

double adaptive(const SegmentIntegrand& f, double a, double b, double whole, double tol,
                int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl8(f, a, mid), right = gl8(f, mid, b);
  if (std::abs(left + right - whole) <= tol || depth >= 28) return left + right;
  return adaptive(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double line_integral_quadrature(const coords::MassSystem& ms, const FluxSet& flux,
                                const coords::Trajectory& path, double hbar, double epsilon) {
  path.validate();
  if (ms.n() != path.n() || flux.n != path.n())
    throw Error("trajectory, masses and flux set disagree on n");
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const SegmentIntegrand f{ms, flux, path.x[s].x, path.x[s + 1].x, hbar, epsilon};
    const double whole = gl8(f, 0.0, 1.0);
    total += adaptive(f, 0.0, 1.0, whole, 1e-11 * std::max(1.0, std::abs(whole)), 0);
  }
  return total;
}

cplx rep_value(const twin::TwinWord& w, const coords::MassSystem& ms, const FluxSet& flux,
               double epsilon) {
  if (!is_pure(w)) throw NotALoopError("rep_value needs a pure word");
  const coords::Trajectory traj = twin::word_to_trajectory(w);
  const std::map<coords::Triple, int> wind = twin::winding_numbers(traj, ms, epsilon);
  double turns = 0.0;
  for (const auto& [t, wt] : wind) turns += flux.at(t) * wt;
  return std::polar(1.0, kTwoPi * turns);
}

}  // namespace fluxtwin::gauge
