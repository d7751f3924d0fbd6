#pragma once

#include <complex>

namespace catbell {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), any complex z.
/// Relative accuracy ~1e-14 in the closed upper half-plane; the lower
/// half-plane uses w(z) = 2 exp(-z^2) - w(-z) and inherits exp(-z^2) growth.
std::complex<double> faddeeva_w(std::complex<double> z);

std::complex<double> erfc(std::complex<double> z);
std::complex<double> erf(std::complex<double> z);

}  // namespace catbell
