#include "catbell/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catbell/faddeeva.hpp"

namespace catbell {
namespace {

const double kLogAmpNorm = 0.25 * std::log(2.0 / std::numbers::pi);  // log (2/pi)^{1/4}

Complex log_amplitude(const Complex& b, double x) {
  const Complex d = x - b;
  return kLogAmpNorm - d * d + 0.5 * (b * b - std::norm(b));
}

// log[conj(A_b(x)) A_c(x)]; real part is bounded above by log sqrt(2/pi).
Complex log_pair(const Complex& b, const Complex& c, double x) {
  return std::conj(log_amplitude(b, x)) + log_amplitude(c, x);
}

// Integrals of conj(A_b) A_c over x > 0 and x < 0, i.e. <b|c> (1 +- erf(z))/2 with
// z = sqrt2 m. The exp(-z^2) from erfc(z) = exp(-z^2) w(iz) is folded into the
// overlap exponent; the sum has real part -((Re b)^2 + (Re c)^2) <= 0, and w is
// evaluated in the upper half-plane where |w| <= 1.
struct HalfLine {
  Complex plus;
  Complex minus;
};

HalfLine half_line(const Complex& b, const Complex& c) {
  const Complex lo = log_overlap(b, c);
  const Complex z = std::numbers::sqrt2 * 0.5 * (std::conj(b) + c);
  const Complex ov = std::exp(lo);
  const Complex I(0, 1);
  if (z.real() >= 0.0) {
    const Complex tail = 0.5 * std::exp(lo - z * z) * faddeeva_w(I * z);
    return {ov - tail, tail};
  }
  const Complex tail = 0.5 * std::exp(lo - z * z) * faddeeva_w(-I * z);
  return {tail, ov - tail};
}

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex quadrature_amplitude(const Complex& b, double x) { return std::exp(log_amplitude(b, x)); }

double quadrature_density(const State& s, double xa, double xb) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "density needs two modes");
  Complex psi(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    psi += s.coeff(i) * std::exp(log_amplitude(s.amp(i, 0), xa) + log_amplitude(s.amp(i, 1), xb));
  }
  return std::norm(psi);
}

Complex CrossTerm::weight() const {
  return coeff * std::exp(log_overlap(bra[0], ket[0]) + log_overlap(bra[1], ket[1]));
}

Complex CrossTerm::center(int mode) const {
  return 0.5 * (std::conj(bra[static_cast<std::size_t>(mode)]) + ket[static_cast<std::size_t>(mode)]);
}

double MarginalMixture::operator()(double xa, double xb) const {
  double p = 0.0;
  for (const auto& t : terms_) {
    p += (t.coeff * std::exp(log_pair(t.bra[0], t.ket[0], xa) + log_pair(t.bra[1], t.ket[1], xb)))
             .real();
  }
  return p;
}

double MarginalMixture::mass() const {
  double m = 0.0;
  for (const auto& t : terms_) m += t.weight().real();
  return m;
}

double MarginalMixture::single_mode(int mode, double x) const {
  const auto k = static_cast<std::size_t>(mode);
  const auto o = static_cast<std::size_t>(1 - mode);
  double p = 0.0;
  for (const auto& t : terms_) {
    p += (t.coeff * std::exp(log_pair(t.bra[k], t.ket[k], x) + log_overlap(t.bra[o], t.ket[o])))
             .real();
  }
  return p;
}

MarginalMixture marginal(const State& s) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "marginal needs two modes");
  if (s.empty() || std::abs(norm_squared(s) - 1.0) > 1e-8) {
    throw DomainError(ErrorCode::kUnnormalized, "marginal needs a normalized state");
  }
  std::vector<CrossTerm> terms;
  terms.reserve(static_cast<std::size_t>(s.size() * (s.size() + 1) / 2));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (Eigen::Index j = i; j < s.size(); ++j) {
      const double mult = i == j ? 1.0 : 2.0;
      terms.push_back({mult * std::conj(s.coeff(i)) * s.coeff(j),
                       {s.amp(i, 0), s.amp(i, 1)},
                       {s.amp(j, 0), s.amp(j, 1)}});
    }
  }
  return MarginalMixture(std::move(terms));
}

QuadrantProbs quadrant_probs(const MarginalMixture& m) {
  QuadrantProbs q;
  for (const auto& t : m.terms()) {
    const HalfLine a = half_line(t.bra[0], t.ket[0]);
    const HalfLine b = half_line(t.bra[1], t.ket[1]);
    const Complex pp = t.coeff * a.plus * b.plus;
    const Complex pm = t.coeff * a.plus * b.minus;
    const Complex mp = t.coeff * a.minus * b.plus;
    const Complex mm = t.coeff * a.minus * b.minus;
    if (!finite(pp) || !finite(pm) || !finite(mp) || !finite(mm)) {
      throw DomainError(ErrorCode::kComplexErf, "non-finite quadrant integral");
    }
    q.pp += pp.real();
    q.pm += pm.real();
    q.mp += mp.real();
    q.mm += mm.real();
  }
  return q;
}

double correlation(const State& s) {
  const MarginalMixture m = marginal(s);
  double e = 0.0;
  for (const auto& t : m.terms()) {
    const HalfLine a = half_line(t.bra[0], t.ket[0]);
    const HalfLine b = half_line(t.bra[1], t.ket[1]);
    const Complex v = t.coeff * (a.plus - a.minus) * (b.plus - b.minus);
    if (!finite(v)) throw DomainError(ErrorCode::kComplexErf, "non-finite correlation term");
    e += v.real();
  }
  return e;
}

double correlation_ideal_closed_form(double alpha, double delta) {
  const double c = std::cos(2.0 * delta);
  const double e = std::erf(std::numbers::sqrt2 * alpha);
  return c * e * e / (1.0 + c * std::exp(-4.0 * alpha * alpha));
}

QuadratureCorrelations quadrature_correlations(double alpha, double delta) {
  const double c = std::cos(2.0 * delta);
  const double ov = std::exp(-4.0 * alpha * alpha);
  const double den = 1.0 + c * ov;
  return {4.0 * alpha * alpha * c / den, -4.0 * alpha * alpha * ov / den};
}

QuadratureCorrelations quadrature_correlations(const State& s) {
  return {two_mode_quadrature_moment(s, false).real(), two_mode_quadrature_moment(s, true).real()};
}

HomodyneSampler::HomodyneSampler(const State& s) : state_(s) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "sampler needs two modes");
  if (s.empty() || std::abs(norm_squared(s) - 1.0) > 1e-8) {
    throw DomainError(ErrorCode::kUnnormalized, "sampler needs a normalized state");
  }
  double total = 0.0;
  cumulative_.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    total += std::abs(s.coeff(i));
    cumulative_.push_back(total);
  }
  for (auto& c : cumulative_) c /= total;
  bound_ = total * total;
  if (!std::isfinite(bound_) || bound_ > 1e6) {
    throw DomainError(ErrorCode::kSamplerEnvelope, "rejection envelope too loose for this state");
  }
}

std::array<double, 2> HomodyneSampler::operator()(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 0.5);
  const double total = std::sqrt(bound_);
  for (;;) {
    const double u = unif(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto k = static_cast<Eigen::Index>(
        std::min<std::ptrdiff_t>(it - cumulative_.begin(), state_.size() - 1));
    const double xa = state_.amp(k, 0).real() + gauss(rng);
    const double xb = state_.amp(k, 1).real() + gauss(rng);

    Complex psi(0);
    double envelope = 0.0;
    for (Eigen::Index i = 0; i < state_.size(); ++i) {
      const Complex f = std::exp(log_amplitude(state_.amp(i, 0), xa) +
                                 log_amplitude(state_.amp(i, 1), xb));
      psi += state_.coeff(i) * f;
      envelope += std::abs(state_.coeff(i)) * std::norm(f);
    }
    envelope *= total;  // C^2 q(x) = C * sum |c_i| |f_i|^2
    const double p = std::norm(psi);
    if (p > envelope * (1.0 + 1e-9)) {
      throw DomainError(ErrorCode::kSamplerEnvelope, "density exceeded the rejection envelope");
    }
    if (unif(rng) * envelope < p) return {xa, xb};
  }
}

std::vector<std::array<double, 2>> sample_homodyne(const State& s, std::size_t n,
                                                   std::uint64_t seed) {
  if (n == 0) throw DomainError(ErrorCode::kInvalidArgument, "sample count must be positive");
  const HomodyneSampler sampler(s);
  std::mt19937_64 rng(seed);
  std::vector<std::array<double, 2>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler(rng));
  return out;
}

double discrimination_error(double alpha) {
  if (!(alpha >= 0)) throw DomainError(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  return 0.5 * std::erfc(std::numbers::sqrt2 * alpha);
}

}  // namespace catbell
