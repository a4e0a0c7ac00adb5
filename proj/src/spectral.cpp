#include "fluxtwin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fluxtwin/bessel.hpp"

namespace fluxtwin::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Unit phase with the trigonometry done in extended precision. Matrix entries
// scale like N^2, so a correctly rounded phase is what keeps the discrete
// gauge transformation an identity at the 1e-13 entry level.
cplx unit_phase(double arg) {
  const long double a = arg;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

}  // namespace

void RingGrid::validate() const {
  if (N < 8) throw Error("ring grid needs N >= 8");
  if (!(r > 0.0) || !(mu > 0.0) || !(hbar > 0.0))
    throw Error("ring grid needs positive r, mu, hbar");
  if (!std::isfinite(alpha)) throw Error("ring grid needs finite alpha");
}

double RingGrid::spacing() const { return kTwoPi / N; }

void RadialGrid::validate() const {
  if (M < 4) throw Error("radial grid needs M >= 4");
  if (!(R > 0.0) || !(mu > 0.0) || !(hbar > 0.0))
    throw Error("radial grid needs positive R, mu, hbar");
  if (!(nu >= 0.0)) throw Error("radial grid needs nu >= 0");
  const double core = effective_core();
  if (!(core > 0.0) || !(core < R)) throw Error("radial grid needs 0 < epsilon_core < R");
  if (!potential.empty() && static_cast<int>(potential.size()) != M)
    throw Error("radial potential must have one sample per interior node");
}

double RadialGrid::effective_core() const {
  return epsilon_core > 0.0 ? epsilon_core : R / (10.0 * M * M);
}

double RadialGrid::spacing() const { return (R - effective_core()) / (M + 1); }

double RadialGrid::node(int j) const { return effective_core() + spacing() * (j + 1); }

Eigen::MatrixXcd build_ring_hamiltonian(const RingGrid& g) {
  g.validate();
  const double h = g.spacing();
  const double t0 = g.hbar * g.hbar / (2.0 * g.mu * g.r * g.r * h * h);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(g.N, g.N);
  for (int j = 0; j < g.N; ++j) H(j, j) = 2.0 * t0;
  if (g.bc_kind == RingBc::twisted) {
    for (int j = 0; j + 1 < g.N; ++j) {
      H(j, j + 1) = -t0;
      H(j + 1, j) = -t0;
    }
    const cplx twist = unit_phase(kTwoPi * g.alpha);
    H(g.N - 1, 0) = -t0 * twist;
    H(0, g.N - 1) = -t0 * std::conj(twist);
  } else {
    const cplx link = unit_phase(g.alpha * h);
    for (int j = 0; j < g.N; ++j) {
      const int jn = (j + 1) % g.N;
      H(j, jn) = -t0 * link;
      H(jn, j) = -t0 * std::conj(link);
    }
  }
  return H;
}

Tridiagonal build_radial_hamiltonian(const RadialGrid& g) {
  g.validate();
  const double h = g.spacing();
  const double kin = g.hbar * g.hbar / (2.0 * g.mu);
  Tridiagonal T;
  T.diag.resize(g.M);
  T.sub = Eigen::VectorXd::Constant(g.M - 1, -kin / (h * h));
  const double centrifugal = g.nu * g.nu - 0.25;
  for (int j = 0; j < g.M; ++j) {
    const double rj = g.node(j);
    T.diag(j) = kin * (2.0 / (h * h) + centrifugal / (rj * rj)) +
                (g.potential.empty() ? 0.0 : g.potential[j]);
  }
  return T;
}

SpectrumTable ring_levels_analytic(double mu, double r, double alpha, int m_range,
                                   double hbar) {
  if (!(mu > 0.0) || !(r > 0.0) || !(hbar > 0.0))
    throw Error("ring levels need positive mu, r, hbar");
  if (m_range < 0) throw Error("ring levels need m_range >= 0");
  SpectrumTable out;
  for (int m = -m_range; m <= m_range; ++m) {
    const double q = m + alpha;
    out.energy.push_back(hbar * hbar * q * q / (2.0 * mu * r * r));
  }
  std::sort(out.energy.begin(), out.energy.end());
  out.residual.assign(out.energy.size(), 0.0);
  out.meta = {{"kind", "ring_analytic"}, {"mu", fmt(mu)},   {"r", fmt(r)},
              {"alpha", fmt(alpha)},     {"hbar", fmt(hbar)}};
  return out;
}

SpectrumTable disk_levels_analytic(double mu, double R, double nu, int k_count, double hbar) {
  if (!(mu > 0.0) || !(R > 0.0) || !(hbar > 0.0))
    throw Error("disk levels need positive mu, R, hbar");
  if (!(nu >= 0.0)) throw Error("disk levels need nu >= 0");
  SpectrumTable out;
  for (double z : bessel::bessel_j_zeros(nu, k_count))
    out.energy.push_back(hbar * hbar * z * z / (2.0 * mu * R * R));
  out.residual.assign(out.energy.size(), 0.0);
  out.meta = {{"kind", "disk_analytic"}, {"mu", fmt(mu)},   {"R", fmt(R)},
              {"nu", fmt(nu)},           {"hbar", fmt(hbar)}};
  return out;
}

namespace {

constexpr double kResidualBound = 1e-8;  // ||H v - E v|| per unit eigenvector

void check_residuals(SpectrumTable& table) {
  for (double r : table.residual)
    if (!(r <= kResidualBound))
      throw Error("eigenpair residual above bound; grid too large for the solver");
}

}  // namespace

SpectrumTable spectrum(const Eigen::MatrixXcd& hamiltonian, int k) {
  const int n = static_cast<int>(hamiltonian.rows());
  if (hamiltonian.cols() != n || n < 1) throw InvalidOperatorError("spectrum needs a square matrix");
  if (k < 0 || k > n) throw Error("requested eigenvalue count out of range");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidOperatorError("spectrum needs a Hermitian matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");

  SpectrumTable out;
  for (int q = 0; q < k; ++q) {
    const double e = solver.eigenvalues()(q);
    const Eigen::VectorXcd v = solver.eigenvectors().col(q);
    out.energy.push_back(e);
    out.residual.push_back((hamiltonian * v - e * v).norm());
  }
  out.meta = {{"kind", "dense_hermitian"}, {"n", std::to_string(n)}};
  check_residuals(out);
  return out;
}

SpectrumTable spectrum(const Tridiagonal& hamiltonian, int k) {
  const int n = static_cast<int>(hamiltonian.diag.size());
  if (n < 1 || hamiltonian.sub.size() != n - 1)
    throw InvalidOperatorError("spectrum needs a consistent tridiagonal");
  if (k < 0 || k > n) throw Error("requested eigenvalue count out of range");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(hamiltonian.diag, hamiltonian.sub);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");

  SpectrumTable out;
  for (int q = 0; q < k; ++q) {
    const double e = solver.eigenvalues()(q);
    const Eigen::VectorXd v = solver.eigenvectors().col(q);
    Eigen::VectorXd hv = hamiltonian.diag.cwiseProduct(v);
    for (int j = 0; j + 1 < n; ++j) {
      hv(j) += hamiltonian.sub(j) * v(j + 1);
      hv(j + 1) += hamiltonian.sub(j) * v(j);
    }
    out.energy.push_back(e);
    out.residual.push_back((hv - e * v).norm());
  }
  out.meta = {{"kind", "tridiagonal"}, {"n", std::to_string(n)}};
  check_residuals(out);
  return out;
}

std::string EquivalenceReport::summary() const {
  std::ostringstream os;
  os << "N=" << N << " alpha=" << alpha << " max_entry=" << max_entry_deviation
     << " max_spectrum=" << max_spectrum_deviation << (pass() ? " pass" : " FAIL");
  return os.str();
}

EquivalenceReport unitary_equivalence_check(const RingGrid& g) {
  RingGrid tw = g;
  tw.bc_kind = RingBc::twisted;
  RingGrid ga = g;
  ga.bc_kind = RingBc::gauge;
  const Eigen::MatrixXcd h_tw = build_ring_hamiltonian(tw);
  const Eigen::MatrixXcd h_ga = build_ring_hamiltonian(ga);

  // Conjugate by W = diag(exp(i alpha theta_j)) in extended precision: the
  // entries are O(N^2) and the identity holds to their last few ulps, so the
  // check itself must not round more than the matrix constructions did.
  const double h = g.spacing();
  using lcplx = std::complex<long double>;
  std::vector<lcplx> w(g.N);
  for (int j = 0; j < g.N; ++j) {
    const long double arg = static_cast<long double>(g.alpha) * h * j;
    w[j] = {std::cos(arg), std::sin(arg)};
  }
  EquivalenceReport rep;
  rep.N = g.N;
  rep.alpha = g.alpha;
  rep.max_entry_deviation = 0.0;
  for (int j = 0; j < g.N; ++j) {
    for (int k = 0; k < g.N; ++k) {
      const lcplx conjugated =
          std::conj(w[j]) * lcplx(h_tw(j, k).real(), h_tw(j, k).imag()) * w[k];
      const double dev = static_cast<double>(
          std::abs(conjugated - lcplx(h_ga(j, k).real(), h_ga(j, k).imag())));
      rep.max_entry_deviation = std::max(rep.max_entry_deviation, dev);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s_tw(h_tw, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s_ga(h_ga, Eigen::EigenvaluesOnly);
  const double scale =
      std::max({1.0, s_tw.eigenvalues().cwiseAbs().maxCoeff(),
                s_ga.eigenvalues().cwiseAbs().maxCoeff()});
  rep.max_spectrum_deviation =
      (s_tw.eigenvalues() - s_ga.eigenvalues()).cwiseAbs().maxCoeff() / scale;

  rep.entry_pass = rep.max_entry_deviation <= 1e-13;
  rep.spectrum_pass = rep.max_spectrum_deviation <= 1e-10;
  return rep;
}

}  // namespace fluxtwin::spectral
