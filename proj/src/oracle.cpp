#include "catbell/oracle.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

namespace catbell {
namespace {

// <b|D(z)|c> = exp[(z conj(c) - conj(z) c)/2] <b|c + z>, as a logarithm.
Complex log_displacement_element(const Complex& b, const Complex& c, const Complex& z) {
  return 0.5 * (z * std::conj(c) - std::conj(z) * c) + log_overlap(b, c + z);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Complex characteristic_fn(const State& s, const Complex& za, const Complex& zb) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "chi needs two modes");
  Complex chi(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      chi += std::conj(s.coeff(i)) * s.coeff(j) *
             std::exp(log_displacement_element(s.amp(i, 0), s.amp(j, 0), za) +
                      log_displacement_element(s.amp(i, 1), s.amp(j, 1), zb));
    }
  }
  return chi;
}

double PhaseSpaceGrid::mass() const { return values.sum() * spacing() * spacing(); }

double default_extent(const State& s) {
  double amax = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (int m = 0; m < s.modes(); ++m) amax = std::max(amax, std::abs(s.amp(i, m)));
  }
  return 3.0 * amax + 3.0;
}

PhaseSpaceGrid wigner_marginal_grid(const State& s, int points_per_axis) {
  return wigner_marginal_grid(s, points_per_axis, default_extent(s));
}

PhaseSpaceGrid wigner_marginal_grid(const State& s, int n, double extent) {
  if (!is_power_of_two(n) || n < 64) {
    throw DomainError(ErrorCode::kInvalidArgument, "points per axis must be a power of two >= 64");
  }
  if (!(extent >= default_extent(s) - 1e-12)) {
    throw DomainError(ErrorCode::kInvalidArgument, "grid extent below 3 max|amp| + 3");
  }
  PhaseSpaceGrid g;
  g.extent = extent;
  g.points_per_axis = n;
  const double dx = g.spacing();
  const double dt = std::numbers::pi / (n * dx);  // 2 dt dx = 2 pi / n
  const double T = 0.5 * n * dt;
  const Complex I(0, 1);

  // Pre-twiddle so that the sum over t_k = -T + k dt becomes a plain DFT.
  std::vector<Complex> pre(static_cast<std::size_t>(n)), post(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    pre[static_cast<std::size_t>(k)] = std::exp(2.0 * I * (k * dt) * extent);
    post[static_cast<std::size_t>(k)] = std::exp(2.0 * I * T * (g.x(k)));
  }

  Eigen::MatrixXcd chi(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      chi(a, b) = characteristic_fn(s, Complex(0, -T + a * dt), Complex(0, -T + b * dt)) *
                  pre[static_cast<std::size_t>(a)] * pre[static_cast<std::size_t>(b)];
    }
  }

  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(n)), out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) in[static_cast<std::size_t>(b)] = chi(a, b);
    fft.fwd(out, in);
    for (int b = 0; b < n; ++b) chi(a, b) = out[static_cast<std::size_t>(b)];
  }
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) in[static_cast<std::size_t>(a)] = chi(a, b);
    fft.fwd(out, in);
    for (int a = 0; a < n; ++a) chi(a, b) = out[static_cast<std::size_t>(a)];
  }

  const double scale = (dt / std::numbers::pi) * (dt / std::numbers::pi);
  g.values.resize(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      g.values(a, b) = (chi(a, b) * post[static_cast<std::size_t>(a)] *
                        post[static_cast<std::size_t>(b)])
                           .real() *
                       scale;
    }
  }
  if (std::abs(g.mass() - 1.0) > 1e-4) {
    throw DomainError(ErrorCode::kGridTooCoarse, "grid marginal mass deviates from 1");
  }
  return g;
}

QuadrantProbs grid_quadrant_probs(const PhaseSpaceGrid& g) {
  const int n = g.points_per_axis;
  const int half = n / 2;  // x(half) == 0
  // Boole weights over half + 1 nodes (half intervals, a multiple of 4).
  std::vector<double> w(static_cast<std::size_t>(half + 1));
  for (int k = 0; k <= half; ++k) {
    double c;
    if (k == 0 || k == half) c = 7;
    else if (k % 2 == 1) c = 32;
    else if (k % 4 == 2) c = 12;
    else c = 14;
    w[static_cast<std::size_t>(k)] = c * 2.0 * g.spacing() / 45.0;
  }
  auto node = [&](bool positive, int k) { return positive ? (half + k) % n : half - k; };
  QuadrantProbs q;
  for (int ka = 0; ka <= half; ++ka) {
    for (int kb = 0; kb <= half; ++kb) {
      const double wk = w[static_cast<std::size_t>(ka)] * w[static_cast<std::size_t>(kb)];
      q.pp += wk * g.values(node(true, ka), node(true, kb));
      q.pm += wk * g.values(node(true, ka), node(false, kb));
      q.mp += wk * g.values(node(false, ka), node(true, kb));
      q.mm += wk * g.values(node(false, ka), node(false, kb));
    }
  }
  return q;
}

}  // namespace catbell
