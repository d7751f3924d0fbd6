#pragma once

// Joint amplitude-quadrature statistics of two-mode coherent superpositions.
//
// Quadrature convention: a coherent state |b> has x-wavefunction
//   A_b(x) = (2/pi)^{1/4} exp[-(x - b)^2 + (b^2 - |b|^2)/2],
// i.e. a Gaussian centered at Re b with variance 1/4. In this scale the
// operator a + a^dagger reads 2x, which is why quadrature_correlations()
// (in the a + a^dagger convention) carries factors of 4 relative to x-moments.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "catbell/cstate.hpp"

namespace catbell {

/// A_b(x) for a single mode.
Complex quadrature_amplitude(const Complex& b, double x);

/// Two-mode probability density |psi(xa, xb)|^2 evaluated from the wavefunction.
double quadrature_density(const State& s, double xa, double xb);

/// One Hermitian-paired term of the marginal:
///   Re{ coeff * conj(A_bra0(xa)) A_ket0(xa) * conj(A_bra1(xb)) A_ket1(xb) }.
/// conj(A_b(x)) A_c(x) = <b|c> sqrt(2/pi) exp[-2(x - m)^2] with m = (conj(b) + c)/2.
struct CrossTerm {
  Complex coeff;  // conj(c_i) c_j, doubled for i < j
  std::array<Complex, 2> bra;
  std::array<Complex, 2> ket;

  Complex weight() const;  // coeff <bra0|ket0><bra1|ket1>
  Complex center(int mode) const;
};

class MarginalMixture {
 public:
  explicit MarginalMixture(std::vector<CrossTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<CrossTerm>& terms() const { return terms_; }
  double operator()(double xa, double xb) const;
  /// Closed-form total mass.
  double mass() const;
  /// Closed-form one-dimensional marginal of one mode.
  double single_mode(int mode, double x) const;

 private:
  std::vector<CrossTerm> terms_;
};

MarginalMixture marginal(const State& s);

struct QuadrantProbs {
  double pp = 0, pm = 0, mp = 0, mm = 0;

  double sum() const { return pp + pm + mp + mm; }
  double correlation() const { return pp + mm - pm - mp; }
};

QuadrantProbs quadrant_probs(const MarginalMixture& m);

/// <sign(xa) sign(xb)>.
double correlation(const State& s);

/// cos(2 delta) erf(sqrt2 alpha)^2 / (1 + cos(2 delta) e^{-4 alpha^2}).
double correlation_ideal_closed_form(double alpha, double delta);

/// <X_A X_B> in the a + a^dagger convention; `amp` for X^(1), `phase` for X^(2).
struct QuadratureCorrelations {
  double amp = 0;
  double phase = 0;
};

QuadratureCorrelations quadrature_correlations(double alpha, double delta);
QuadratureCorrelations quadrature_correlations(const State& s);

/// Rejection sampler for the joint (xa, xb) distribution.
///
/// Envelope: by Cauchy-Schwarz |sum c_i f_i|^2 <= (sum |c_i|)(sum |c_i| |f_i|^2), and
/// |f_i|^2 is a product Gaussian, so p <= C^2 q with q the |c_i|-weighted
/// Gaussian mixture and C = sum |c_i|. The bound is exact, not heuristic.
class HomodyneSampler {
 public:
  explicit HomodyneSampler(const State& s);

  std::array<double, 2> operator()(std::mt19937_64& rng) const;
  double acceptance_rate() const { return 1.0 / bound_; }

 private:
  State state_;
  std::vector<double> cumulative_;
  double bound_ = 1.0;
};

std::vector<std::array<double, 2>> sample_homodyne(const State& s, std::size_t n,
                                                   std::uint64_t seed);

/// Error rate 1/2 erfc(sqrt2 alpha) for telling |alpha> from |-alpha> by sign.
double discrimination_error(double alpha);

}  // namespace catbell
