#include "catbell/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace catbell {
namespace {

// Weideman's rational series: w(z) = 2 p(Z)/(L - iz)^2 + 1/(sqrt(pi)(L - iz)),
// Z = (L + iz)/(L - iz), with p's coefficients the Fourier coefficients of
// exp(-t^2)(L^2 + t^2) under t = L tan(theta/2).
constexpr int kTerms = 48;

struct WeidemanTable {
  double L;
  std::array<double, kTerms> a;  // a[n-1] multiplies Z^(n-1)

  WeidemanTable() {
    const int M = 2 * kTerms;
    L = std::sqrt(kTerms / std::numbers::sqrt2);
    std::array<double, 2 * M> f{};
    for (int k = -M + 1; k <= M - 1; ++k) {
      const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
      f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int n = 1; n <= kTerms; ++n) {
      double s = 0.0;
      for (int k = -M + 1; k <= M - 1; ++k) {
        s += f[static_cast<std::size_t>(k + M)] * std::cos(std::numbers::pi * n * k / M);
      }
      a[static_cast<std::size_t>(n - 1)] = s / (2 * M);
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

std::complex<double> w_upper(std::complex<double> z) {
  const auto& t = table();
  const std::complex<double> I(0, 1);
  const auto den = t.L - I * z;
  const auto Z = (t.L + I * z) / den;
  std::complex<double> p(t.a[kTerms - 1]);
  for (int n = kTerms - 2; n >= 0; --n) p = p * Z + t.a[static_cast<std::size_t>(n)];
  return 2.0 * p / (den * den) + 1.0 / (std::sqrt(std::numbers::pi) * den);
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() >= 0.0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

std::complex<double> erfc(std::complex<double> z) {
  if (z.imag() == 0.0) return std::erfc(z.real());
  const std::complex<double> I(0, 1);
  if (z.real() >= 0.0) return std::exp(-z * z) * faddeeva_w(I * z);
  return 2.0 - std::exp(-z * z) * faddeeva_w(-I * z);
}

std::complex<double> erf(std::complex<double> z) {
  if (z.imag() == 0.0) return std::erf(z.real());
  if (std::abs(z) < 0.5) {
    // Maclaurin series; 1 - erfc(z) cancels badly near the origin.
    const auto z2 = z * z;
    std::complex<double> term = z, sum = z;
    for (int n = 1; n < 40; ++n) {
      term *= -z2 / static_cast<double>(n);
      const auto add = term / static_cast<double>(2 * n + 1);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum * (2.0 / std::sqrt(std::numbers::pi));
  }
  return 1.0 - erfc(z);
}

}  // namespace catbell
