#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fluxtwin/bessel.hpp"
#include "fluxtwin/spectral.hpp"

using namespace fluxtwin;
using spectral::RingBc;
using spectral::RingGrid;
using spectral::RadialGrid;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

std::vector<double> circulant_levels(const RingGrid& g) {
  const double h = g.spacing();
  const double t0 = g.hbar * g.hbar / (2.0 * g.mu * g.r * g.r * h * h);
  std::vector<double> out;
  for (int k = 0; k < g.N; ++k) {
    const double s = std::sin(0.5 * h * (k + g.alpha));
    out.push_back(4.0 * t0 * s * s);
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("bessel function values") {
  // half-integer closed form J_{1/2}(x) = sqrt(2/(pi x)) sin x
  for (double x : {0.5, 3.0, 10.0, 20.0, 40.0}) {
    const double expected = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
    CHECK(bessel::bessel_j(0.5, x) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(bessel::bessel_j(0.0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-12));
  CHECK(bessel::bessel_j(1.0, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-12));
  CHECK(bessel::bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel::bessel_j(2.3, 0.0) == 0.0);
}

TEST_CASE("bessel zeros") {
  // nu = 1/2 zeros are k pi
  const std::vector<double> half = bessel::bessel_j_zeros(0.5, 6);
  for (int k = 0; k < 6; ++k) CHECK(half[k] == doctest::Approx((k + 1) * kPi).epsilon(1e-12));

  const std::vector<double> j0 = bessel::bessel_j_zeros(0.0, 3);
  CHECK(j0[0] == doctest::Approx(2.404825557695773).epsilon(1e-12));
  CHECK(j0[1] == doctest::Approx(5.520078110286311).epsilon(1e-12));
  CHECK(j0[2] == doctest::Approx(8.653727912911011).epsilon(1e-12));

  CHECK(bessel::bessel_j_zeros(1.0, 0).empty());

  // zeros increase with nu and interlace for a unit step of nu
  const std::vector<double> a = bessel::bessel_j_zeros(0.7, 5);
  const std::vector<double> b = bessel::bessel_j_zeros(1.7, 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(a[k] < b[k]);
    if (k + 1 < 5) CHECK(b[k] < a[k + 1]);
  }
}

TEST_CASE("ring hamiltonian construction") {
  RingGrid tiny;
  tiny.N = 4;
  CHECK_THROWS_AS(tiny.validate(), Error);

  RingGrid g;
  g.N = 16;
  g.r = 1.1;
  g.mu = 0.8;

  // alpha = 0: both kinds coincide with the real circulant second difference
  g.alpha = 0.0;
  g.bc_kind = RingBc::twisted;
  const Eigen::MatrixXcd tw0 = spectral::build_ring_hamiltonian(g);
  g.bc_kind = RingBc::gauge;
  const Eigen::MatrixXcd ga0 = spectral::build_ring_hamiltonian(g);
  CHECK((tw0 - ga0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(tw0.imag().cwiseAbs().maxCoeff() == 0.0);

  g.alpha = 0.3;
  g.bc_kind = RingBc::twisted;
  const Eigen::MatrixXcd tw = spectral::build_ring_hamiltonian(g);
  CHECK((tw - tw.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);

  // the diagonal phase conjugation maps twisted to gauge exactly
  const spectral::EquivalenceReport rep = spectral::unitary_equivalence_check(g);
  CHECK(rep.entry_pass);
  CHECK(rep.spectrum_pass);
  CHECK(rep.max_entry_deviation <= 1e-13);
}

TEST_CASE("ring spectrum against the circulant closed form") {
  RingGrid g;
  g.N = 32;
  g.r = 0.9;
  g.mu = 1.4;
  g.alpha = 0.3;
  g.bc_kind = RingBc::gauge;
  const spectral::SpectrumTable s =
      spectral::spectrum(spectral::build_ring_hamiltonian(g), g.N);
  const std::vector<double> exact = circulant_levels(g);
  for (int k = 0; k < g.N; ++k)
    CHECK(std::abs(s.energy[k] - exact[k]) <= 1e-10 * std::max(1.0, exact.back()));

  // twisted kind carries the same spectrum
  g.bc_kind = RingBc::twisted;
  const spectral::SpectrumTable st =
      spectral::spectrum(spectral::build_ring_hamiltonian(g), g.N);
  for (int k = 0; k < g.N; ++k)
    CHECK(std::abs(st.energy[k] - exact[k]) <= 1e-10 * std::max(1.0, exact.back()));
}

TEST_CASE("half flux degeneracy") {
  RingGrid g;
  g.N = 24;
  g.alpha = 0.5;
  const spectral::SpectrumTable s =
      spectral::spectrum(spectral::build_ring_hamiltonian(g), g.N);
  for (int q = 0; q + 1 < g.N; q += 2)
    CHECK(std::abs(s.energy[q] - s.energy[q + 1]) <= 1e-9 * std::max(s.energy[q + 1], 1e-300));
}

TEST_CASE("analytic ring levels") {
  const spectral::SpectrumTable free = spectral::ring_levels_analytic(1.0, 1.0, 0.0, 2);
  const std::vector<double> expected{0.0, 0.5, 0.5, 2.0, 2.0};
  REQUIRE(free.count() == 5);
  for (int q = 0; q < 5; ++q) CHECK(free.energy[q] == doctest::Approx(expected[q]).epsilon(1e-15));

  const spectral::SpectrumTable half = spectral::ring_levels_analytic(1.0, 1.0, 0.5, 2);
  CHECK(half.energy[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(half.energy[1] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(half.energy[2] == doctest::Approx(1.125).epsilon(1e-15));

  const spectral::SpectrumTable a = spectral::ring_levels_analytic(0.7, 1.3, 0.3, 8);
  const spectral::SpectrumTable b = spectral::ring_levels_analytic(0.7, 1.3, 1.3, 8);
  for (int q = 0; q < a.count() - 2; ++q)
    CHECK(a.energy[q] == doctest::Approx(b.energy[q]).epsilon(1e-12));
}

TEST_CASE("radial hamiltonian") {
  const double mu = 0.8, R = 1.3;

  // nu = 1/2: the centrifugal term vanishes and the ground state approaches
  // the half-integer disk level hbar^2 pi^2 / (2 mu R^2)
  RadialGrid g;
  g.M = 400;
  g.R = R;
  g.nu = 0.5;
  g.mu = mu;
  const spectral::SpectrumTable s = spectral::spectrum(spectral::build_radial_hamiltonian(g), 3);
  const double expected = kPi * kPi / (2.0 * mu * R * R);
  CHECK(s.energy[0] == doctest::Approx(expected).epsilon(1e-4));
  CHECK(s.energy[1] == doctest::Approx(4.0 * expected).epsilon(1e-3));

  // lowest level strictly increases with the angular order
  double previous = -1.0;
  for (double nu : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    RadialGrid gg;
    gg.M = 160;
    gg.nu = nu;
    const spectral::SpectrumTable t =
        spectral::spectrum(spectral::build_radial_hamiltonian(gg), 1);
    CHECK(t.energy[0] > previous);
    previous = t.energy[0];
  }

  // nu = 0 approaches the Bessel-zero disk level from above, but only
  // logarithmically: the Dirichlet core acts like a 2D s-wave hard core
  const double j01 = bessel::bessel_j_zeros(0.0, 1)[0];
  const double disk0 = j01 * j01 / 2.0;
  double prev_err = 1.0;
  for (int M : {100, 400, 800}) {
    RadialGrid gg;
    gg.M = M;
    gg.nu = 0.0;
    const spectral::SpectrumTable t =
        spectral::spectrum(spectral::build_radial_hamiltonian(gg), 1);
    const double rel = (t.energy[0] - disk0) / disk0;
    CHECK(rel > 0.0);
    CHECK(rel < prev_err);
    prev_err = rel;
  }
  CHECK(prev_err < 0.2);

  // grid validation
  RadialGrid bad;
  bad.M = 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  RadialGrid core;
  core.epsilon_core = 2.0;
  core.R = 1.0;
  CHECK_THROWS_AS(core.validate(), Error);
  RadialGrid vsize;
  vsize.potential = {1.0, 2.0};
  CHECK_THROWS_AS(vsize.validate(), Error);

  // a confining radial potential raises every level
  RadialGrid with_v;
  with_v.M = 100;
  with_v.nu = 0.5;
  with_v.potential.assign(100, 5.0);
  const spectral::SpectrumTable shifted =
      spectral::spectrum(spectral::build_radial_hamiltonian(with_v), 2);
  RadialGrid bare = with_v;
  bare.potential.clear();
  const spectral::SpectrumTable plain =
      spectral::spectrum(spectral::build_radial_hamiltonian(bare), 2);
  CHECK(shifted.energy[0] == doctest::Approx(plain.energy[0] + 5.0).epsilon(1e-12));
}

TEST_CASE("disk levels analytic") {
  const double mu = 0.8, R = 1.3;
  const spectral::SpectrumTable half = spectral::disk_levels_analytic(mu, R, 0.5, 4);
  for (int k = 0; k < 4; ++k) {
    const double z = (k + 1) * kPi;
    CHECK(half.energy[k] == doctest::Approx(z * z / (2.0 * mu * R * R)).epsilon(1e-12));
  }
  CHECK(spectral::disk_levels_analytic(mu, R, 1.0, 0).count() == 0);

  const spectral::SpectrumTable lo = spectral::disk_levels_analytic(1.0, 1.0, 0.4, 4);
  const spectral::SpectrumTable hi = spectral::disk_levels_analytic(1.0, 1.0, 1.4, 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(lo.energy[k] < hi.energy[k]);
    if (k + 1 < 4) CHECK(hi.energy[k] < lo.energy[k + 1]);
  }
}

TEST_CASE("spectrum operation") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 5.0;
  d(1, 1) = -3.0;
  const spectral::SpectrumTable s = spectral::spectrum(d, 2);
  CHECK(s.energy[0] == doctest::Approx(-3.0));
  CHECK(s.energy[1] == doctest::Approx(5.0));

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(spectral::spectrum(bad, 2), InvalidOperatorError);

  std::mt19937_64 rng(37);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(64, 64);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j <= i; ++j) {
      const cplx v(gauss(rng), i == j ? 0.0 : gauss(rng));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  const spectral::SpectrumTable full = spectral::spectrum(h, 64);
  for (double r : full.residual) CHECK(r <= 1e-8 * 64.0);
  CHECK(std::is_sorted(full.energy.begin(), full.energy.end()));
}

TEST_CASE("unitary equivalence across alpha") {
  for (double alpha : {0.0, 0.25, 0.3, 0.5, 0.75}) {
    RingGrid g;
    g.N = 32;
    g.alpha = alpha;
    const spectral::EquivalenceReport rep = spectral::unitary_equivalence_check(g);
    CHECK(rep.pass());
  }

  // integer flux shifts are invisible in gauge-kind spectra
  RingGrid a;
  a.N = 40;
  a.alpha = 0.2;
  a.bc_kind = RingBc::gauge;
  RingGrid b = a;
  b.alpha = 1.2;
  const spectral::SpectrumTable sa = spectral::spectrum(spectral::build_ring_hamiltonian(a), 40);
  const spectral::SpectrumTable sb = spectral::spectrum(spectral::build_ring_hamiltonian(b), 40);
  for (int q = 0; q < 40; ++q)
    CHECK(std::abs(sa.energy[q] - sb.energy[q]) <= 1e-10 * std::max(1.0, sa.energy.back()));
}
