#include "fluxtwin/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "fluxtwin/bessel.hpp"
#include "fluxtwin/coords.hpp"
#include "fluxtwin/errors.hpp"
#include "fluxtwin/gauge.hpp"
#include "fluxtwin/kernel.hpp"
#include "fluxtwin/spectral.hpp"
#include "fluxtwin/twin.hpp"

namespace fluxtwin::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
using cplx = std::complex<double>;
using coords::Configuration;
using coords::MassSystem;
using coords::Trajectory;
using coords::Triple;
using gauge::FluxSet;
using twin::TwinWord;

struct CheckFailure : Error {
  using Error::Error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw CheckFailure(msg);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

MassSystem random_masses(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mass(0.3, 2.7);
  std::vector<double> m(n);
  for (double& mi : m) mi = mass(rng);
  return MassSystem(std::move(m));
}

// Closed loop in the n = 3 relative plane with a given winding, with radial
// and center-of-mass wobble. The last sample is a copy of the first.
Trajectory relative_plane_loop(const MassSystem& ms, int winding, std::mt19937_64& rng,
                               int samples_per_turn = 360) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double theta0 = kTwoPi * uni(rng);
  const double r0 = 0.5 + uni(rng);
  const double wobble_r = 0.35 * uni(rng);
  const double wobble_theta = 0.5 * uni(rng);  // angular motion that never winds
  const double wobble_c = 0.5 * uni(rng);
  const double ph1 = kTwoPi * uni(rng), ph2 = kTwoPi * uni(rng), ph3 = kTwoPi * uni(rng);
  const int samples = samples_per_turn * std::max(1, std::abs(winding));

  Trajectory traj;
  for (int s = 0; s <= samples; ++s) {
    const double u = static_cast<double>(s) / samples;
    coords::HyperPolarPoint p;
    p.r = r0 * (1.0 + wobble_r * std::cos(kTwoPi * u + ph1));
    p.theta = theta0 + kTwoPi * winding * u + wobble_theta * std::sin(kTwoPi * u + ph3);
    p.sheet = 0;
    p.xi3 = wobble_c * std::sin(kTwoPi * u + ph2);
    traj.t.push_back(u);
    traj.x.push_back(coords::from_jacobi(ms, coords::from_hyperpolar(ms, p)));
  }
  traj.x.back() = traj.x.front();
  return traj;
}

TwinWord random_pure_word(std::mt19937_64& rng, int n, int base_length) {
  std::uniform_int_distribution<int> letter(1, n - 1);
  std::uniform_int_distribution<int> len(0, base_length);
  TwinWord w{n, {}};
  const int l = len(rng);
  for (int q = 0; q < l; ++q) w.letters.push_back(letter(rng));
  // close up: bubble-sort the slot occupancy back to the identity
  twin::Permutation p = twin::induced_permutation(w);
  std::vector<int> at_slot(n);
  for (int s = 0; s < n; ++s) at_slot[p.images[s]] = s;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (at_slot[j] > at_slot[j + 1]) {
        std::swap(at_slot[j], at_slot[j + 1]);
        w.letters.push_back(j + 1);
        moved = true;
      }
    }
  }
  return w;
}

double spectrum_scale(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 1.0;
  for (double v : a) s = std::max(s, std::abs(v));
  for (double v : b) s = std::max(s, std::abs(v));
  return s;
}

double max_sorted_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), "spectrum size mismatch");
  double worst = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, std::abs(a[q] - b[q]));
  return worst / spectrum_scale(a, b);
}

std::vector<double> eigenvalues_of(const spectral::RingGrid& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(spectral::build_ring_hamiltonian(g),
                                                    Eigen::EigenvaluesOnly);
  return {s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size()};
}

// ---------------------------------------------------------------------------
// acceptance checks
// ---------------------------------------------------------------------------

// 50 random loops, windings -2..2, random masses: circulation from raw
// quadrature of A.dx agrees with 2 pi hbar alpha times the unwrapped-angle
// winding integer to 1e-6.
std::string check_circulation_quantization() {
  std::mt19937_64 rng(20260801);
  std::uniform_real_distribution<double> alpha_dist(0.15, 0.85);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const MassSystem ms = random_masses(rng, 3);
    const double alpha = alpha_dist(rng);
    const FluxSet flux = FluxSet::single(alpha);
    const int winding = trial % 5 - 2;
    const Trajectory loop = relative_plane_loop(ms, winding, rng);

    const std::map<Triple, int> w = gauge::loop_windings(ms, loop);
    require(w.at(Triple{0, 1, 2}) == winding, "unwrapped winding disagrees with construction");

    const double circulation = gauge::line_integral_quadrature(ms, flux, loop);
    const double dev = std::abs(circulation / (kTwoPi * alpha) - winding);
    worst = std::max(worst, dev);
    require(dev <= 1e-6, "quadrature circulation off by " + num(dev) + " turns");

    const double closed_form = gauge::loop_flux(ms, flux, loop);
    require(std::abs(closed_form - kTwoPi * alpha * winding) <= 1e-12 * std::max(1.0, std::abs(closed_form)),
            "loop_flux disagrees with 2 pi hbar alpha w");
  }
  return "50 loops, worst quadrature deviation " + num(worst) + " turns";
}

// n = 4 loop encircling only the (1,2,3) coincidence: Wilson phase is
// alpha_123 turns, untouched by the other three flux parameters.
std::string check_flux_locality() {
  const MassSystem ms(std::vector<double>{1.0, 1.3, 0.8, 1.7});
  FluxSet flux = FluxSet::zero(4);
  flux.set(Triple{0, 1, 2}, 0.2);
  flux.set(Triple{0, 1, 3}, 0.3);
  flux.set(Triple{0, 2, 3}, 0.4);
  flux.set(Triple{1, 2, 3}, 0.5);

  const MassSystem sub(std::vector<double>{1.0, 1.3, 0.8});
  Trajectory loop;
  const int samples = 720;
  for (int s = 0; s <= samples; ++s) {
    const double u = static_cast<double>(s) / samples;
    coords::HyperPolarPoint p;
    p.r = 0.6;
    p.theta = kTwoPi * u;
    p.xi3 = 0.0;
    const Configuration c3 = coords::from_jacobi(sub, coords::from_hyperpolar(sub, p));
    loop.t.push_back(u);
    loop.x.push_back(Configuration{{c3.x[0], c3.x[1], c3.x[2], 40.0}});
  }
  loop.x.back() = loop.x.front();

  const std::map<Triple, int> w = gauge::loop_windings(ms, loop);
  require(w.at(Triple{0, 1, 2}) == 1, "loop does not wind once around the 123 coincidence");
  require(w.at(Triple{0, 1, 3}) == 0 && w.at(Triple{0, 2, 3}) == 0 && w.at(Triple{1, 2, 3}) == 0,
          "loop winds a distant triple");

  const cplx value = gauge::wilson_loop(ms, flux, loop);
  double turns = std::arg(value) / kTwoPi;
  if (turns < 0.0) turns += 1.0;
  require(std::abs(turns - 0.2) <= 1e-6, "Wilson phase " + num(turns) + " turns, expected 0.2");

  const double quad_turns = gauge::line_integral_quadrature(ms, flux, loop) / kTwoPi;
  require(std::abs(quad_turns - 0.2) <= 1e-6,
          "quadrature phase " + num(quad_turns) + " turns, expected 0.2");

  FluxSet perturbed = flux;
  perturbed.set(Triple{0, 1, 3}, 0.3 + 0.111);
  perturbed.set(Triple{0, 2, 3}, 0.4 - 0.2333);
  perturbed.set(Triple{1, 2, 3}, 0.5 + 0.777);
  const cplx shifted = gauge::wilson_loop(ms, perturbed, loop);
  require(std::abs(shifted - value) <= 1e-9, "Wilson value depends on distant fluxes");
  return "phase " + num(turns) + " turns; insensitive to distant fluxes";
}

// 1000 random pure-word pairs on n in {3,4}: rep_value is a homomorphism and
// matches the Wilson loop of the word's strand trajectory.
std::string check_representation_property() {
  std::mt19937_64 rng(20260803);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    const MassSystem ms = random_masses(rng, n);
    FluxSet flux = FluxSet::zero(n);
    for (const Triple& t : coords::all_triples(n)) flux.set(t, uni(rng));

    const TwinWord u = random_pure_word(rng, n, 12);
    const TwinWord v = random_pure_word(rng, n, 12);
    require(u.length() <= 24 && v.length() <= 24, "pure word construction too long");

    const cplx ru = gauge::rep_value(u, ms, flux);
    const cplx rv = gauge::rep_value(v, ms, flux);
    const cplx ruv = gauge::rep_value(twin::concat(u, v), ms, flux);
    const double dev = std::abs(ruv - ru * rv);
    worst = std::max(worst, dev);
    require(dev <= 1e-9, "homomorphism violated by " + num(dev));
    require(std::abs(std::abs(ru) - 1.0) <= 1e-12, "rep value not unit modulus");

    const cplx wl = gauge::wilson_loop(ms, flux, twin::word_to_trajectory(u));
    require(std::abs(ru - wl) <= 1e-9, "rep value disagrees with Wilson loop");
  }
  return "1000 pairs, worst homomorphism deviation " + num(worst);
}

// Winding of (t1 t2)^{3k} is k times the generator winding (+1 by the
// orientation convention) and does not depend on the masses.
std::string check_winding_homomorphism() {
  const TwinWord gen{3, {1, 2}};
  const MassSystem equal(std::vector<double>{1.0, 1.0, 1.0});
  for (int k = -3; k <= 3; ++k) {
    const TwinWord w = twin::word_power(gen, 3 * k);
    const auto wind = twin::winding_numbers(twin::word_to_trajectory(w), equal);
    require(wind.at(Triple{0, 1, 2}) == k,
            "winding of (t1 t2)^" + std::to_string(3 * k) + " is not " + std::to_string(k));
  }
  std::mt19937_64 rng(20260804);
  const TwinWord base = twin::word_power(gen, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const MassSystem ms = random_masses(rng, 3);
    const auto wind = twin::winding_numbers(twin::word_to_trajectory(base), ms);
    require(wind.at(Triple{0, 1, 2}) == 1, "winding changed under a mass change");
  }
  return "windings k * (+1) for k in -3..3; mass independent";
}

// Covering and mode sums agree on a 32 x 32 grid; twist and periodicity
// residuals stay within ten times the reported tail; the gauge kernel is a
// pure phase times the twisted one.
std::string check_kernel_equivalences() {
  const double mu = 1.3, radius = 0.9;
  const double inertia = mu * radius * radius;
  double worst_poisson = 0.0;
  for (double y : {0.05, 0.5, 5.0}) {
    for (double alpha : {0.0, 0.37, 0.5}) {
      kernel::KernelSpec spec;
      spec.mu = mu;
      spec.radius = radius;
      spec.alpha = alpha;
      spec.time = y * 2.0 * inertia;  // hbar = 1
      spec.n_wind = 64;
      spec.n_modes = 64;

      const cplx twist_phase = std::polar(1.0, kTwoPi * alpha);
      for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
          const double th = kTwoPi * i / 32.0, tp = kTwoPi * j / 32.0;
          double tail_cov = 0.0, tail_shift = 0.0;
          const cplx cov = kernel::covering_sum_kernel_ring(spec, th, tp, &tail_cov);
          const cplx mode = kernel::mode_sum_kernel_ring(spec, th, tp);
          worst_poisson = std::max(worst_poisson, std::abs(cov - mode));
          require(std::abs(cov - mode) <= 1e-8, "covering vs mode " + num(std::abs(cov - mode)));

          const cplx cov_up = kernel::covering_sum_kernel_ring(spec, th + kTwoPi, tp, &tail_shift);
          const double tail = 10.0 * std::max(tail_cov, tail_shift);
          require(std::abs(cov_up - twist_phase * cov) <= tail,
                  "twist residual above tail bound");

          const cplx g = kernel::gauge_transform_kernel(spec, th, tp);
          const cplx g_up = kernel::gauge_transform_kernel(spec, th + kTwoPi, tp);
          require(std::abs(g_up - g) <= tail, "gauge periodicity residual above tail bound");
          require(std::abs(std::abs(g) - std::abs(cov)) <= 1e-12,
                  "gauge kernel modulus differs from twisted kernel");
        }
      }
    }
  }
  return "max |covering - mode| = " + num(worst_poisson);
}

// Twisted and gauge ring Hamiltonians are exactly unitarily equivalent, and
// spectra are invariant under alpha -> alpha + 1 and alpha -> -alpha.
std::string check_hamiltonian_equivalence() {
  double worst_entry = 0.0, worst_spec = 0.0;
  for (int N : {32, 64, 128}) {
    for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
      spectral::RingGrid g;
      g.N = N;
      g.r = 1.1;
      g.mu = 0.8;
      g.alpha = alpha;
      const spectral::EquivalenceReport rep = spectral::unitary_equivalence_check(g);
      worst_entry = std::max(worst_entry, rep.max_entry_deviation);
      worst_spec = std::max(worst_spec, rep.max_spectrum_deviation);
      require(rep.pass(), "equivalence failed: " + rep.summary());

      for (spectral::RingBc bc : {spectral::RingBc::twisted, spectral::RingBc::gauge}) {
        spectral::RingGrid base = g;
        base.bc_kind = bc;
        spectral::RingGrid plus = base;
        plus.alpha = alpha + 1.0;
        spectral::RingGrid minus = base;
        minus.alpha = -alpha;
        const std::vector<double> e0 = eigenvalues_of(base);
        require(max_sorted_deviation(e0, eigenvalues_of(plus)) <= 1e-10,
                "spectrum moved under alpha -> alpha + 1");
        require(max_sorted_deviation(e0, eigenvalues_of(minus)) <= 1e-10,
                "spectrum moved under alpha -> -alpha");
      }
    }
  }
  return "max entry dev " + num(worst_entry) + ", max spectrum dev " + num(worst_spec);
}

double fitted_order(const std::vector<double>& grids, const std::vector<double>& errors) {
  // least-squares slope of ln(err) against ln(1/grid)
  const std::size_t m = grids.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t q = 0; q < m; ++q) {
    const double x = -std::log(grids[q]), y = std::log(errors[q]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Ring levels converge at order 2 to hbar^2 (m+alpha)^2 / (2 mu r^2); the
// radial nu = 1/2 ground state converges at order 2 to the half-integer disk
// level; half-integer flux makes every ring level doubly degenerate.
std::string check_analytic_spectra() {
  const double mu = 0.8;
  std::vector<double> grids, errors;
  for (int N : {32, 64, 128, 256}) {
    spectral::RingGrid g;
    g.N = N;
    g.r = 1.1;
    g.mu = mu;
    g.alpha = 0.3;
    const spectral::SpectrumTable discrete =
        spectral::spectrum(spectral::build_ring_hamiltonian(g), 4);
    const spectral::SpectrumTable exact = spectral::ring_levels_analytic(mu, 1.1, 0.3, N / 2);
    double err = 0.0;
    for (int q = 0; q < 4; ++q)
      err = std::max(err, std::abs(discrete.energy[q] - exact.energy[q]) / exact.energy[q]);
    grids.push_back(N);
    errors.push_back(err);
  }
  const double ring_order = fitted_order(grids, errors);
  require(std::abs(ring_order - 2.0) <= 0.2,
          "ring convergence order " + num(ring_order) + " outside 2.0 +- 0.2");

  const double R = 1.3;
  const double disk_ground = kPi * kPi / (2.0 * mu * R * R);  // j_{1/2,1} = pi
  grids.clear();
  errors.clear();
  for (int M : {32, 64, 128, 256}) {
    spectral::RadialGrid g;
    g.M = M;
    g.R = R;
    g.nu = 0.5;
    g.mu = mu;
    const spectral::SpectrumTable discrete =
        spectral::spectrum(spectral::build_radial_hamiltonian(g), 1);
    grids.push_back(M);
    errors.push_back(std::abs(discrete.energy[0] - disk_ground) / disk_ground);
  }
  const double radial_order = fitted_order(grids, errors);
  require(std::abs(radial_order - 2.0) <= 0.2,
          "radial convergence order " + num(radial_order) + " outside 2.0 +- 0.2");

  spectral::RingGrid half;
  half.N = 64;
  half.r = 1.1;
  half.mu = mu;
  half.alpha = 0.5;
  const spectral::SpectrumTable levels =
      spectral::spectrum(spectral::build_ring_hamiltonian(half), 64);
  for (int q = 0; q + 1 < 64; q += 2) {
    const double rel = std::abs(levels.energy[q] - levels.energy[q + 1]) /
                       std::max(levels.energy[q + 1], 1e-300);
    require(rel <= 1e-9, "half-flux level pair " + std::to_string(q) + " split by " + num(rel));
  }
  return "ring order " + num(ring_order) + ", radial order " + num(radial_order);
}

// Jacobi quadratic-form and kinetic-form identities plus round trips on 1e4
// random mass/configuration draws.
std::string check_coordinate_identities() {
  std::mt19937_64 rng(20260808);
  std::normal_distribution<double> pos(0.0, 2.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const MassSystem ms = random_masses(rng, 3);
    const Configuration c{{pos(rng), pos(rng), pos(rng)}};
    const coords::JacobiPoint j = coords::to_jacobi(ms, c);
    const coords::ReducedMasses mu = coords::reduced_masses(ms, Triple{0, 1, 2});

    double mass_form = 0.0;
    for (int q = 0; q < 3; ++q) mass_form += ms.m[q] * c.x[q] * c.x[q];
    const double jacobi_form =
        mu.mu1 * j.xi1 * j.xi1 + mu.mu2 * j.xi2 * j.xi2 + mu.mu3 * j.xi3 * j.xi3;
    require(std::abs(mass_form - jacobi_form) <= 1e-10 * std::max(mass_form, 1e-300),
            "quadratic-form identity violated");

    const auto J = coords::jacobi_matrix(ms);
    const double inv_mu[3] = {1.0 / mu.mu1, 1.0 / mu.mu2, 1.0 / mu.mu3};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double entry = 0.0;
        for (int q = 0; q < 3; ++q) entry += J[a][q] * J[b][q] / ms.m[q];
        const double target = a == b ? inv_mu[a] : 0.0;
        require(std::abs(entry - target) <= 1e-12 * std::max(1.0, inv_mu[0]),
                "kinetic-form identity violated");
      }
    }

    const Configuration back = coords::from_jacobi(ms, j);
    double scale = 1.0;
    for (double v : c.x) scale = std::max(scale, std::abs(v));
    for (int q = 0; q < 3; ++q)
      require(std::abs(back.x[q] - c.x[q]) <= 1e-12 * scale, "Jacobi round trip violated");
  }
  return "10000 draws pass at 1e-10 / 1e-12";
}

// reduce_word is idempotent and permutation-preserving on 1e4 random words;
// the fixed small cases hold.
std::string check_word_algebra() {
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<int> strand_count(2, 6);
  std::uniform_int_distribution<int> word_length(0, 64);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = strand_count(rng);
    std::uniform_int_distribution<int> letter(1, n - 1);
    TwinWord w{n, {}};
    const int l = word_length(rng);
    for (int q = 0; q < l; ++q) w.letters.push_back(letter(rng));

    const TwinWord r = twin::reduce_word(w);
    const TwinWord rr = twin::reduce_word(r);
    require(rr.letters == r.letters, "reduce_word not idempotent");
    require(twin::induced_permutation(r).images == twin::induced_permutation(w).images,
            "reduce_word changed the induced permutation");
    require(r.length() <= w.length(), "reduce_word grew a word");
  }
  require(twin::reduce_word(TwinWord{3, {1, 1}}).letters.empty(), "[1,1] must cancel");
  require(twin::reduce_word(TwinWord{5, {1, 3, 1}}).letters == std::vector<int>{3},
          "[1,3,1] must reduce to [3]");
  require(twin::reduce_word(TwinWord{3, {1, 2, 1}}).letters == (std::vector<int>{1, 2, 1}),
          "[1,2,1] must be irreducible");
  require(twin::is_pure(TwinWord{3, {1, 2, 1, 2, 1, 2}}), "(t1 t2)^3 must be pure");
  return "10000 words; fixed cases hold";
}

// ---------------------------------------------------------------------------
// module invariants beyond the acceptance set
// ---------------------------------------------------------------------------

std::string check_coords_translation_scale() {
  std::mt19937_64 rng(20260810);
  std::normal_distribution<double> pos(0.0, 1.5);
  std::uniform_real_distribution<double> lam(0.2, 5.0);
  // dyadic positions and shifts keep the additions exact, so the angle (a
  // function of coordinate differences only) must not move by a single ulp
  std::uniform_int_distribution<long> lattice(-(1L << 23), 1L << 23);
  const auto dyadic = [&]() { return std::ldexp(static_cast<double>(lattice(rng)), -20); };
  for (int trial = 0; trial < 2000; ++trial) {
    const MassSystem ms = random_masses(rng, 4);
    Configuration c{{dyadic(), dyadic(), dyadic(), dyadic()}};
    const Triple t{0, 1, 3};
    if (coords::triple_radius(ms, c, t) < 1e-3) continue;
    const double a = dyadic();
    Configuration moved = c;
    for (double& v : moved.x) v += a;
    require(coords::triple_angle(ms, c, t) == coords::triple_angle(ms, moved, t),
            "triple angle not exactly translation invariant");

    const MassSystem m3 = random_masses(rng, 3);
    const Configuration c3{{pos(rng), pos(rng), pos(rng)}};
    const coords::JacobiPoint j = coords::to_jacobi(m3, c3);
    const coords::ReducedMasses mu = coords::reduced_masses(m3, Triple{0, 1, 2});
    if (mu.mu1 * j.xi1 * j.xi1 + mu.mu2 * j.xi2 * j.xi2 < 1e-6) continue;
    const double l = lam(rng);
    coords::JacobiPoint scaled = j;
    scaled.xi1 *= l;
    scaled.xi2 *= l;
    scaled.xi3 *= l;
    const coords::HyperPolarPoint p = coords::to_hyperpolar(m3, j);
    const coords::HyperPolarPoint q = coords::to_hyperpolar(m3, scaled);
    require(std::abs(q.r - l * p.r) <= 1e-12 * q.r, "hyperradius not scale covariant");
    require(std::abs(std::remainder(q.theta - p.theta, kTwoPi)) <= 1e-12,
            "angle not scale invariant");
  }
  return "2000 draws";
}

std::string check_coords_angle_continuity() {
  std::mt19937_64 rng(20260811);
  for (int trial = 0; trial < 50; ++trial) {
    const MassSystem ms = random_masses(rng, 3);
    const int winding = trial % 5 - 2;
    const Trajectory loop = relative_plane_loop(ms, winding, rng, 180);
    const Triple t{0, 1, 2};
    const double total = coords::unwrapped_angle_delta(ms, loop, t);
    const double start = coords::triple_angle(ms, loop.x.front(), t);
    const double end = coords::triple_angle(ms, loop.x.back(), t);
    require(std::abs(std::remainder(total - (end - start), kTwoPi)) <= 1e-9,
            "unwrapped total inconsistent with endpoint angles");
  }
  return "50 loops";
}

std::string check_twin_purity_closure() {
  std::mt19937_64 rng(20260812);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    const MassSystem ms = random_masses(rng, n);
    const TwinWord u = random_pure_word(rng, n, 10);
    const TwinWord v = random_pure_word(rng, n, 10);
    require(twin::is_pure(twin::concat(u, v)), "purity not closed under concatenation");
    require(twin::is_pure(twin::reversed(u)), "purity not closed under inverse");

    const auto wu = twin::winding_numbers(twin::word_to_trajectory(u), ms);
    const auto wv = twin::winding_numbers(twin::word_to_trajectory(v), ms);
    const auto wuv = twin::winding_numbers(twin::word_to_trajectory(twin::concat(u, v)), ms);
    for (const Triple& t : coords::all_triples(n))
      require(wuv.at(t) == wu.at(t) + wv.at(t), "winding not additive under concatenation");
  }
  return "300 pure-word pairs";
}

std::string check_twin_winding_reversal() {
  std::mt19937_64 rng(20260813);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    const MassSystem ms = random_masses(rng, n);
    const TwinWord u = random_pure_word(rng, n, 10);
    const auto wu = twin::winding_numbers(twin::word_to_trajectory(u), ms);
    const auto wr = twin::winding_numbers(twin::word_to_trajectory(twin::reversed(u)), ms);
    for (const Triple& t : coords::all_triples(n))
      require(wr.at(t) == -wu.at(t), "winding of reversed word is not negated");
  }
  return "200 pure words";
}

std::string check_gauge_flatness() {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double step = 1e-5;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    const MassSystem ms = random_masses(rng, n);
    FluxSet flux = FluxSet::zero(n);
    for (const Triple& t : coords::all_triples(n)) flux.set(t, uni(rng));
    // keep particles separated so high derivatives of A stay tame
    std::vector<double> x(n);
    for (int q = 0; q < n; ++q) x[q] = 1.5 * q + 0.6 * uni(rng);
    const Configuration c{x};

    auto potential_at = [&](int comp, int along, double offset) {
      Configuration probe = c;
      probe.x[along] += offset;
      return gauge::gauge_potential(ms, flux, probe).A[comp];
    };
    double scale = 1.0;
    for (double a : gauge::gauge_potential(ms, flux, c).A) scale = std::max(scale, std::abs(a));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dji = (potential_at(j, i, step) - potential_at(j, i, -step)) / (2 * step);
        const double dij = (potential_at(i, j, step) - potential_at(i, j, -step)) / (2 * step);
        require(std::abs(dji - dij) <= 1e-6 * std::max(1.0, scale),
                "curl component " + num(dji - dij) + " off the coincidence set");
      }
    }
  }
  return "200 points, all curls vanish to O(step^2)";
}

std::string check_gauge_potential_sum_zero() {
  std::mt19937_64 rng(20260815);
  std::normal_distribution<double> pos(0.0, 2.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + trial % 3;
    const MassSystem ms = random_masses(rng, n);
    FluxSet flux = FluxSet::zero(n);
    for (const Triple& t : coords::all_triples(n)) flux.set(t, uni(rng));
    std::vector<double> x(n);
    for (double& v : x) v = pos(rng);
    const Configuration c{x};
    bool near = false;
    for (const Triple& t : coords::all_triples(n))
      if (coords::triple_radius(ms, c, t) < 1e-2) near = true;
    if (near) continue;
    const gauge::GaugeVector A = gauge::gauge_potential(ms, flux, c);
    double sum = 0.0, scale = 1e-300;
    for (double a : A.A) {
      sum += a;
      scale += std::abs(a);
    }
    require(std::abs(sum) <= 1e-12 * scale, "gauge components do not sum to zero");
  }
  return "500 points";
}

std::string check_gauge_alpha_periodicity() {
  std::mt19937_64 rng(20260816);
  for (int trial = 0; trial < 40; ++trial) {
    const MassSystem ms = random_masses(rng, 3);
    const int winding = trial % 5 - 2;
    const Trajectory loop = relative_plane_loop(ms, winding, rng, 240);
    const double alpha = 0.1 + 0.2 * (trial % 4);
    const cplx w0 = gauge::wilson_loop(ms, FluxSet::single(alpha), loop);
    const cplx w1 = gauge::wilson_loop(ms, FluxSet::single(alpha + 1.0), loop);
    require(std::abs(w0 - w1) <= 1e-12, "Wilson loop not periodic in alpha");
    require(std::abs(std::abs(w0) - 1.0) <= 1e-12, "Wilson loop not unit modulus");
  }
  return "40 loops";
}

std::string check_kernel_hermiticity_positivity() {
  kernel::KernelSpec spec;
  spec.mu = 1.3;
  spec.radius = 0.9;
  spec.time = 0.7;
  spec.n_wind = 64;
  spec.n_modes = 64;
  for (double alpha : {0.0, 0.37}) {
    spec.alpha = alpha;
    const kernel::KernelTable table =
        kernel::build_kernel_table(spec, kernel::KernelKind::covering, 24, 24);
    double scale = 0.0;
    for (const auto& row : table.value)
      for (const cplx& v : row) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) {
        require(std::abs(table.value[i][j] - std::conj(table.value[j][i])) <= 1e-12 * scale,
                "imaginary-time kernel not Hermitian");
        if (alpha == 0.0)
          require(table.value[i][j].imag() == 0.0 && table.value[i][j].real() > 0.0,
                  "alpha = 0 heat kernel not real positive");
      }
    }
  }
  return "24 x 24 tables, alpha in {0, 0.37}";
}

std::string check_kernel_semigroup() {
  kernel::KernelSpec spec;
  spec.mu = 1.3;
  spec.radius = 0.9;
  spec.alpha = 0.37;
  spec.n_wind = 64;
  const double tau = 0.4, sigma = 0.7;
  const int quad_points = 512;
  for (double th : {0.3, 2.1}) {
    for (double tp : {1.0, 4.4}) {
      kernel::KernelSpec a = spec, b = spec, ab = spec;
      a.time = tau;
      b.time = sigma;
      ab.time = tau + sigma;
      cplx integral = 0.0;
      for (int q = 0; q < quad_points; ++q) {
        const double phi = kTwoPi * q / quad_points;
        integral += kernel::covering_sum_kernel_ring(a, th, phi) *
                    kernel::covering_sum_kernel_ring(b, phi, tp);
      }
      integral *= kTwoPi / quad_points;
      const cplx direct = kernel::covering_sum_kernel_ring(ab, th, tp);
      require(std::abs(integral - direct) <= 1e-6 * std::max(1.0, std::abs(direct)),
              "composition violates the semigroup law");
    }
  }
  return "4 point pairs, trapezoid with 512 nodes";
}

std::string check_kernel_mode_reindex() {
  kernel::KernelSpec spec;
  spec.mu = 1.3;
  spec.radius = 0.9;
  spec.time = 0.6;
  spec.alpha = 0.37;
  spec.n_wind = 64;
  spec.n_modes = 64;
  kernel::KernelSpec shifted = spec;
  shifted.alpha = spec.alpha + 1.0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const double th = kTwoPi * i / 16.0, tp = kTwoPi * j / 16.0;
      double t0 = 0.0, t1 = 0.0;
      const cplx m0 = kernel::mode_sum_kernel_ring(spec, th, tp, &t0);
      const cplx m1 = kernel::mode_sum_kernel_ring(shifted, th, tp, &t1);
      require(std::abs(m0 - m1) <= 10.0 * (t0 + t1),
              "mode sum moved under alpha -> alpha + 1 beyond the edge terms");
      const cplx c0 = kernel::covering_sum_kernel_ring(spec, th, tp);
      const cplx c1 = kernel::covering_sum_kernel_ring(shifted, th, tp);
      require(std::abs(c0 - c1) <= 1e-12 * std::max(1.0, std::abs(c0)),
              "covering sum not pointwise periodic in alpha");
    }
  }
  return "16 x 16 grid";
}

std::string check_spectral_positivity() {
  for (double alpha : {0.0, 0.3, 0.5}) {
    spectral::RingGrid g;
    g.N = 48;
    g.alpha = alpha;
    const spectral::SpectrumTable s = spectral::spectrum(spectral::build_ring_hamiltonian(g), 8);
    require(s.energy.front() >= -1e-12, "free ring has a negative level");
  }
  double previous = -1.0;
  for (double nu : {0.5, 1.0, 2.0, 4.0}) {
    spectral::RadialGrid g;
    g.M = 200;
    g.nu = nu;
    const spectral::SpectrumTable s = spectral::spectrum(spectral::build_radial_hamiltonian(g), 1);
    require(s.energy[0] >= -1e-12, "radial problem has a negative level at V = 0");
    require(s.energy[0] > previous, "radial ground state not increasing in nu");
    previous = s.energy[0];
  }
  return "ring and radial kinetic operators positive; centrifugal term monotone";
}

// ---------------------------------------------------------------------------

struct Entry {
  std::string name;
  std::string (*body)();
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"circulation-quantization", check_circulation_quantization},
      {"flux-locality", check_flux_locality},
      {"representation-property", check_representation_property},
      {"winding-homomorphism", check_winding_homomorphism},
      {"kernel-equivalences", check_kernel_equivalences},
      {"hamiltonian-equivalence", check_hamiltonian_equivalence},
      {"analytic-spectra", check_analytic_spectra},
      {"coordinate-identities", check_coordinate_identities},
      {"word-algebra", check_word_algebra},
      {"coords-translation-scale", check_coords_translation_scale},
      {"coords-angle-continuity", check_coords_angle_continuity},
      {"twin-purity-closure", check_twin_purity_closure},
      {"twin-winding-reversal", check_twin_winding_reversal},
      {"gauge-flatness", check_gauge_flatness},
      {"gauge-potential-sum-zero", check_gauge_potential_sum_zero},
      {"gauge-alpha-periodicity", check_gauge_alpha_periodicity},
      {"kernel-hermiticity-positivity", check_kernel_hermiticity_positivity},
      {"kernel-semigroup", check_kernel_semigroup},
      {"kernel-mode-reindex", check_kernel_mode_reindex},
      {"spectral-positivity", check_spectral_positivity},
  };
  return entries;
}

const std::map<std::string, std::vector<std::string>>& suites() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"acceptance",
       {"circulation-quantization", "flux-locality", "representation-property",
        "winding-homomorphism", "kernel-equivalences", "hamiltonian-equivalence",
        "analytic-spectra", "coordinate-identities", "word-algebra"}},
      {"coords", {"coordinate-identities", "coords-translation-scale", "coords-angle-continuity"}},
      {"twin",
       {"word-algebra", "winding-homomorphism", "twin-purity-closure", "twin-winding-reversal"}},
      {"gauge",
       {"circulation-quantization", "flux-locality", "representation-property", "gauge-flatness",
        "gauge-potential-sum-zero", "gauge-alpha-periodicity"}},
      {"kernel",
       {"kernel-equivalences", "kernel-hermiticity-positivity", "kernel-semigroup",
        "kernel-mode-reindex"}},
      {"spectral", {"hamiltonian-equivalence", "analytic-spectra", "spectral-positivity"}},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out{"all"};
  for (const auto& [name, checks] : suites()) out.push_back(name);
  return out;
}

std::vector<std::string> checks_in_suite(const std::string& suite) {
  if (suite == "all") {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.push_back(e.name);
    return out;
  }
  const auto it = suites().find(suite);
  if (it == suites().end()) throw ConfigError("unknown suite '" + suite + "'");
  return it->second;
}

CheckResult run_check(const std::string& name) {
  for (const Entry& e : registry()) {
    if (e.name != name) continue;
    CheckResult result;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.detail = e.body();
      result.pass = true;
    } catch (const std::exception& ex) {
      result.pass = false;
      result.detail = ex.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
  throw ConfigError("unknown check '" + name + "'");
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  for (const std::string& name : checks_in_suite(suite)) out.push_back(run_check(name));
  return out;
}

}  // namespace fluxtwin::verify
