#pragma once

#include <vector>

#include "fluxtwin/errors.hpp"

namespace fluxtwin::bessel {

// Bessel function of the first kind, nu >= 0, x >= 0. Power series below
// x = 12, Schlaefli integral representation above (quadrature).
double bessel_j(double nu, double x);

// First `count` positive zeros of J_nu, by sign-change scan and bisection.
// Bracketing failure raises OracleError.
std::vector<double> bessel_j_zeros(double nu, int count);

}  // namespace fluxtwin::bessel
