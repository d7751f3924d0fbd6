#pragma once

// Test-only oracles and fixtures. Nothing here calls into the homodyne
// closed forms; the quadrature works directly on the wavefunction.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "catbell/cstate.hpp"
#include "catbell/homodyne.hpp"
#include "catbell/local_ops.hpp"

namespace catbell::testing {

// Adaptive Gauss-Kronrod (7/15) on [a, b].
inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                            double tol, int depth = 0) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double v = f(c - h * xk[static_cast<std::size_t>(i)]) +
                     f(c + h * xk[static_cast<std::size_t>(i)]);
    k += wk[static_cast<std::size_t>(i)] * v;
    if (i % 2 == 1) g += wg[static_cast<std::size_t>(i / 2)] * v;
  }
  k *= h;
  g *= h;
  if (std::abs(k - g) <= tol || depth > 40) return k;
  return gauss_kronrod(f, a, c, 0.5 * tol, depth + 1) +
         gauss_kronrod(f, c, b, 0.5 * tol, depth + 1);
}

/// Quadrant probabilities of |psi|^2 by nested adaptive quadrature, truncated
/// where the Gaussian tails are below double precision.
inline QuadrantProbs quadrant_probs_by_quadrature(const State& s, double tol = 1e-12) {
  double reach = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    reach = std::max({reach, std::abs(s.amp(i, 0).real()), std::abs(s.amp(i, 1).real())});
  }
  const double R = reach + 7.0;
  auto quadrant = [&](double a0, double a1, double b0, double b1) {
    return gauss_kronrod(
        [&](double xa) {
          return gauss_kronrod([&](double xb) { return quadrature_density(s, xa, xb); }, b0, b1,
                               tol);
        },
        a0, a1, tol);
  };
  QuadrantProbs q;
  q.pp = quadrant(0, R, 0, R);
  q.pm = quadrant(0, R, -R, 0);
  q.mp = quadrant(-R, 0, 0, R);
  q.mm = quadrant(-R, 0, -R, 0);
  return q;
}

/// Random normalized two-mode state with 1..max_terms terms and |amp| <= amp_radius.
inline State random_state(std::mt19937_64& rng, int max_terms, double amp_radius,
                          int modes = 2) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_real_distribution<double> u(-1.0, 1.0), r(0.0, 1.0), ang(-std::numbers::pi,
                                                                       std::numbers::pi);
  const int n = nterms(rng);
  State::CoeffVector c(n);
  State::AmpMatrix m(n, modes);
  for (int i = 0; i < n; ++i) {
    c(i) = Complex(u(rng), u(rng));
    for (int k = 0; k < modes; ++k) {
      m(i, k) = std::polar(amp_radius * std::sqrt(r(rng)), ang(rng));
    }
  }
  return normalize(State(std::move(c), std::move(m)));
}

/// N{cos(d) (|a,a> + |-a,-a>) + sin(d) (|a,-a> - |-a,a>)}, unnormalized kets,
/// N = {2(1 + cos(2d) e^{-4a^2})}^{-1/2}.
inline State rotated_ecs_closed_form(double alpha, double d) {
  const double N = 1.0 / std::sqrt(2.0 * (1.0 + std::cos(2 * d) * std::exp(-4 * alpha * alpha)));
  const Complex a(alpha);
  return State::from_terms({{N * std::cos(d), {a, a}},
                            {N * std::cos(d), {-a, -a}},
                            {N * std::sin(d), {a, -a}},
                            {-N * std::sin(d), {-a, a}}});
}

/// Eight-term transcription of V(phi) (x) V(theta) acting on |Phi+>, with
/// beta = a + i angle/a and gamma = a - i angle/a. Unnormalized.
inline State physical_ecs_transcribed(double alpha, double phi, double theta) {
  const Complex I(0, 1);
  const Complex bp(alpha, phi / alpha), gp(alpha, -phi / alpha);
  const Complex bt(alpha, theta / alpha), gt(alpha, -theta / alpha);
  const Complex ep = std::exp(I * (phi - theta)), em = std::exp(-I * (phi - theta));
  return State::from_terms({{-ep, {bp, gt}},
                            {I * ep, {bp, -gt}},
                            {-I * ep, {-bp, gt}},
                            {-ep, {-bp, -gt}},
                            {-em, {gp, bt}},
                            {-I * em, {gp, -bt}},
                            {I * em, {-gp, bt}},
                            {-em, {-gp, -bt}}});
}

/// Four-term expansion of V(phi, a)|a>, up to global phase.
inline State v_on_alpha_transcribed(double alpha, double phi) {
  const Complex I(0, 1);
  const Complex b(alpha, phi / alpha), g(alpha, -phi / alpha);
  const Complex ep = std::exp(I * phi), em = std::exp(-I * phi);
  return State::from_terms({{0.5 * ep, {b}},
                            {0.5 * I * ep, {-b}},
                            {0.5 * I * em, {-g}},
                            {-0.5 * em, {g}}});
}

}  // namespace catbell::testing
