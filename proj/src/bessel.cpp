#include "fluxtwin/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fluxtwin::bessel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 12.0;

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order.
struct GaussRule {
  std::vector<double> node;
  std::vector<double> weight;

  explicit GaussRule(int order) : node(order), weight(order) {
    for (int i = 0; i < (order + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < order; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = order * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      node[i] = -z;
      node[order - 1 - i] = z;
      weight[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      weight[order - 1 - i] = weight[i];
    }
  }

  template <typename F>
  double integrate(const F& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t q = 0; q < node.size(); ++q) sum += weight[q] * f(mid + half * node[q]);
    return sum * half;
  }
};

double bessel_j_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half_x = 0.5 * x;
  double term = std::pow(half_x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int j = 1; j <= 400; ++j) {
    term *= -(half_x * half_x) / (j * (j + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double bessel_j_integral(double nu, double x) {
  static const GaussRule oscillatory(256);
  static const GaussRule damped(96);
  const double main_part = oscillatory.integrate(
      [nu, x](double tau) { return std::cos(nu * tau - x * std::sin(tau)); }, 0.0, kPi);
  double cut_part = 0.0;
  const double s = std::sin(nu * kPi);
  if (s != 0.0) {
    // exp(-nu t - x sinh t) decays fast for the x > cutoff range handled here
    cut_part = s * damped.integrate(
                       [nu, x](double t) { return std::exp(-nu * t - x * std::sinh(t)); },
                       0.0, 4.0);
  }
  return (main_part - cut_part) / kPi;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0 || !std::isfinite(nu) || !std::isfinite(x))
    throw Error("bessel_j needs finite nu >= 0 and x >= 0");
  return x <= kSeriesCutoff ? bessel_j_series(nu, x) : bessel_j_integral(nu, x);
}

std::vector<double> bessel_j_zeros(double nu, int count) {
  if (count < 0) throw Error("bessel_j_zeros needs count >= 0");
  std::vector<double> zeros;
  if (count == 0) return zeros;

  const double step = kPi / 8.0;
  double a = std::max(0.1, nu);  // J_nu > 0 on (0, j_{nu,1})
  double fa = bessel_j(nu, a);
  if (!(fa > 0.0))
    throw OracleError("bessel zero scan started past the first zero (nu = " +
                      std::to_string(nu) + ")");
  const double x_max = std::max(1e4, nu + count * 8.0);
  while (static_cast<int>(zeros.size()) < count) {
    const double b = a + step;
    if (b > x_max) throw OracleError("bessel zero bracketing failed");
    const double fb = bessel_j(nu, b);
    if ((fa > 0.0) != (fb > 0.0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = bessel_j(nu, mid);
        if ((flo > 0.0) == (fmid > 0.0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

}  // namespace fluxtwin::bessel
