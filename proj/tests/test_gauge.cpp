#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fluxtwin/coords.hpp"
#include "fluxtwin/gauge.hpp"
#include "fluxtwin/twin.hpp"

using namespace fluxtwin;
using coords::Configuration;
using coords::MassSystem;
using coords::Triple;
using gauge::FluxSet;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

coords::Trajectory arc(const MassSystem& ms, double theta0, double theta1, double r,
                       int samples) {
  coords::Trajectory traj;
  for (int s = 0; s <= samples; ++s) {
    const double u = static_cast<double>(s) / samples;
    coords::HyperPolarPoint p;
    p.r = r;
    p.theta = theta0 + (theta1 - theta0) * u;
    traj.t.push_back(u);
    traj.x.push_back(coords::from_jacobi(ms, coords::from_hyperpolar(ms, p)));
  }
  return traj;
}

coords::Trajectory circle(const MassSystem& ms, int winding, double r, int samples_per_turn) {
  coords::Trajectory traj =
      arc(ms, 0.0, kTwoPi * winding, r, samples_per_turn * std::max(1, std::abs(winding)));
  traj.x.back() = traj.x.front();
  return traj;
}

}  // namespace

TEST_CASE("flux set") {
  FluxSet f = FluxSet::single(0.25);
  CHECK(f.at({0, 1, 2}) == 0.25);
  CHECK(FluxSet::zero(4).alpha.size() == 4);
  CHECK(FluxSet::zero(5).alpha.size() == 10);
  CHECK_THROWS_AS(f.at({0, 1, 3}), Error);

  FluxSet broken = f;
  broken.alpha.erase({0, 1, 2});
  CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("gauge potential closed form") {
  const MassSystem equal({1.0, 1.0, 1.0});
  const double alpha = 0.37;
  const FluxSet flux = FluxSet::single(alpha);
  const Configuration c{{1.0, -1.0, 0.0}};
  const gauge::GaugeVector A = gauge::gauge_potential(equal, flux, c);

  const double s3 = std::sqrt(3.0);
  CHECK(A.A[0] == doctest::Approx(alpha * s3 / 6.0).epsilon(1e-13));
  CHECK(A.A[1] == doctest::Approx(alpha * s3 / 6.0).epsilon(1e-13));
  CHECK(A.A[2] == doctest::Approx(-alpha * s3 / 3.0).epsilon(1e-13));

  // finite-difference gradient of the triple angle is the oracle
  const double step = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Configuration plus = c, minus = c;
    plus.x[i] += step;
    minus.x[i] -= step;
    const double grad = std::remainder(coords::triple_angle(equal, plus, {0, 1, 2}) -
                                           coords::triple_angle(equal, minus, {0, 1, 2}),
                                       kTwoPi) /
                        (2.0 * step);
    CHECK(std::abs(A.A[i] - alpha * grad) <= 1e-8);
  }

  // translation invariance and degree -1 homogeneity
  double sum = 0.0;
  for (double a : A.A) sum += a;
  CHECK(std::abs(sum) <= 1e-15);
  const Configuration doubled{{2.0, -2.0, 0.0}};
  const gauge::GaugeVector A2 = gauge::gauge_potential(equal, flux, doubled);
  for (int i = 0; i < 3; ++i) CHECK(A2.A[i] == doctest::Approx(A.A[i] / 2.0).epsilon(1e-13));

  CHECK_THROWS_AS(gauge::gauge_potential(equal, flux, Configuration{{0.2, 0.2, 0.2}}),
                  CoincidenceError);

  // hbar scales the potential linearly
  const gauge::GaugeVector Ah = gauge::gauge_potential(equal, flux, c, 3.0);
  CHECK(Ah.A[0] == doctest::Approx(3.0 * A.A[0]).epsilon(1e-14));
}

TEST_CASE("covariant gradient") {
  const MassSystem ms({1.0, 2.0, 0.5});
  const Configuration c{{0.9, -0.7, 0.2}};
  const double step = 1e-5;

  const auto unit = [](const Configuration&) { return cplx(1.0, 0.0); };
  const auto zero_flux = FluxSet::single(0.0);
  for (const cplx& v : gauge::covariant_gradient(unit, ms, zero_flux, c, step))
    CHECK(std::abs(v) <= 1e-11);

  const FluxSet flux = FluxSet::single(0.41);
  const gauge::GaugeVector A = gauge::gauge_potential(ms, flux, c);
  const auto grad = gauge::covariant_gradient(unit, ms, flux, c, step);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(grad[i] - cplx(0.0, A.A[i])) <= 1e-11);

  // transporting a smooth g by the gauge phase turns the covariant gradient
  // into the plain gradient of g times the phase
  const double alpha = 0.41;
  const auto theta = [&](const Configuration& x) {
    return coords::triple_angle(ms, x, {0, 1, 2});
  };
  const double theta0 = theta(c);
  const auto g = [](const Configuration& x) {
    return cplx(std::sin(0.3 * x.x[0] + 0.2 * x.x[1]), 0.1 * x.x[2]);
  };
  const auto f = [&](const Configuration& x) {
    return std::polar(1.0, -alpha * (theta(x) - theta0)) * g(x);
  };
  const auto cov = gauge::covariant_gradient(f, ms, flux, c, step);
  for (int i = 0; i < 3; ++i) {
    Configuration plus = c, minus = c;
    plus.x[i] += step;
    minus.x[i] -= step;
    const cplx plain = (g(plus) - g(minus)) / (2.0 * step);
    CHECK(std::abs(cov[i] - plain) <= 1e-8);  // phase(c) = 1 at the base point
  }
}

TEST_CASE("wilson line") {
  const MassSystem ms({1.0, 1.3, 0.6});
  const double alpha = 0.33;
  const FluxSet flux = FluxSet::single(alpha);

  coords::Trajectory constant;
  constant.t = {0.0, 1.0};
  constant.x = {Configuration{{1.0, -1.0, 0.3}}, Configuration{{1.0, -1.0, 0.3}}};
  CHECK(std::abs(gauge::wilson_line(ms, flux, constant) - cplx(1.0, 0.0)) <= 1e-15);

  const coords::Trajectory quarter = arc(ms, 0.2, 0.2 + kPi / 2, 1.0, 200);
  const cplx expected = std::polar(1.0, alpha * kPi / 2);
  CHECK(std::abs(gauge::wilson_line(ms, flux, quarter) - expected) <= 1e-12);

  // quadrature oracle for the exponent
  const double quad = gauge::line_integral_quadrature(ms, flux, quarter);
  CHECK(quad == doctest::Approx(alpha * kPi / 2).epsilon(1e-8));

  coords::Trajectory back = quarter;
  std::reverse(back.x.begin(), back.x.end());
  const cplx rev = gauge::wilson_line(ms, flux, back);
  CHECK(std::abs(rev - std::conj(gauge::wilson_line(ms, flux, quarter))) <= 1e-13);
}

TEST_CASE("wilson loop and circulation") {
  const MassSystem ms({0.8, 1.1, 1.9});
  const double alpha = 0.27;
  const FluxSet flux = FluxSet::single(alpha);

  const coords::Trajectory once = circle(ms, 1, 1.0, 360);
  CHECK(std::abs(gauge::wilson_loop(ms, flux, once) - std::polar(1.0, kTwoPi * alpha)) <= 1e-12);
  CHECK(gauge::loop_flux(ms, flux, once) == doctest::Approx(kTwoPi * alpha).epsilon(1e-12));
  CHECK(gauge::line_integral_quadrature(ms, flux, once) ==
        doctest::Approx(kTwoPi * alpha).epsilon(1e-7));

  const coords::Trajectory twice = circle(ms, 2, 0.7, 360);
  CHECK(gauge::loop_flux(ms, flux, twice) == doctest::Approx(2.0 * kTwoPi * alpha).epsilon(1e-12));
  CHECK(gauge::loop_flux(ms, flux, twice, 2.5) ==
        doctest::Approx(2.5 * 2.0 * kTwoPi * alpha).epsilon(1e-12));

  // a small loop away from the puncture encloses nothing
  coords::Trajectory contractible;
  const int samples = 100;
  for (int s = 0; s <= samples; ++s) {
    const double u = kTwoPi * s / samples;
    coords::HyperPolarPoint p;
    p.r = 1.0 + 0.1 * std::cos(u);
    p.theta = 0.5 + 0.1 * std::sin(u);
    contractible.t.push_back(static_cast<double>(s) / samples);
    contractible.x.push_back(coords::from_jacobi(ms, coords::from_hyperpolar(ms, p)));
  }
  contractible.x.back() = contractible.x.front();
  CHECK(std::abs(gauge::wilson_loop(ms, flux, contractible) - cplx(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(gauge::loop_flux(ms, flux, contractible)) <= 1e-12);

  // open paths are rejected
  const coords::Trajectory open_path = arc(ms, 0.0, 1.0, 1.0, 50);
  CHECK_THROWS_AS(gauge::wilson_loop(ms, flux, open_path), InvalidLoopError);

  // a segment passing through the coincidence tube is a hard error
  const coords::Configuration left = coords::from_jacobi(ms, {-1.0, 1e-13, 0.0});
  const coords::Configuration right = coords::from_jacobi(ms, {1.0, 1e-13, 0.0});
  coords::Trajectory through;
  through.t = {0.0, 1.0};
  through.x = {left, right};
  CHECK_THROWS_AS(gauge::wilson_line(ms, flux, through), CoincidenceError);
}

TEST_CASE("rep value") {
  const MassSystem ms({1.0, 1.0, 1.0});
  const double alpha = 0.31;
  const FluxSet flux = FluxSet::single(alpha);

  CHECK(std::abs(gauge::rep_value(twin::TwinWord{3, {}}, ms, flux) - cplx(1.0, 0.0)) <= 1e-15);

  const twin::TwinWord braid{3, {1, 2, 1, 2, 1, 2}};
  const cplx value = gauge::rep_value(braid, ms, flux);
  CHECK(std::abs(value - std::polar(1.0, kTwoPi * alpha)) <= 1e-12);

  const cplx square = gauge::rep_value(twin::concat(braid, braid), ms, flux);
  CHECK(std::abs(square - value * value) <= 1e-12);

  CHECK(std::abs(value - gauge::wilson_loop(ms, flux, twin::word_to_trajectory(braid))) <= 1e-12);

  CHECK_THROWS_AS(gauge::rep_value(twin::TwinWord{3, {1}}, ms, flux), NotALoopError);
}

TEST_CASE("n-body flux locality") {
  const MassSystem ms({1.0, 1.3, 0.8, 1.7});
  FluxSet flux = FluxSet::zero(4);
  flux.set({0, 1, 2}, 0.2);
  flux.set({0, 1, 3}, 0.3);
  flux.set({0, 2, 3}, 0.4);
  flux.set({1, 2, 3}, 0.5);

  const MassSystem sub({1.0, 1.3, 0.8});
  coords::Trajectory loop;
  const int samples = 720;
  for (int s = 0; s <= samples; ++s) {
    coords::HyperPolarPoint p;
    p.r = 0.5;
    p.theta = kTwoPi * s / samples;
    const Configuration c3 = coords::from_jacobi(sub, coords::from_hyperpolar(sub, p));
    loop.t.push_back(static_cast<double>(s) / samples);
    loop.x.push_back(Configuration{{c3.x[0], c3.x[1], c3.x[2], 30.0}});
  }
  loop.x.back() = loop.x.front();

  const auto w = gauge::loop_windings(ms, loop);
  CHECK(w.at({0, 1, 2}) == 1);
  CHECK(w.at({0, 1, 3}) == 0);
  CHECK(w.at({0, 2, 3}) == 0);
  CHECK(w.at({1, 2, 3}) == 0);

  const cplx value = gauge::wilson_loop(ms, flux, loop);
  CHECK(std::abs(value - std::polar(1.0, kTwoPi * 0.2)) <= 1e-12);

  FluxSet perturbed = flux;
  perturbed.set({0, 1, 3}, 0.9);
  CHECK(std::abs(gauge::wilson_loop(ms, perturbed, loop) - value) <= 1e-12);
}

TEST_CASE("alpha periodicity and unitarity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> mass(0.2, 3.0);
  const MassSystem ms({mass(rng), mass(rng), mass(rng)});
  const coords::Trajectory loop = circle(ms, -2, 1.2, 240);
  for (double alpha : {0.0, 0.3, 0.77}) {
    const cplx a = gauge::wilson_loop(ms, FluxSet::single(alpha), loop);
    const cplx b = gauge::wilson_loop(ms, FluxSet::single(alpha + 1.0), loop);
    CHECK(std::abs(a - b) <= 1e-12);
    CHECK(std::abs(std::abs(a) - 1.0) <= 1e-12);
  }
}
