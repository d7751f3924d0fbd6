#pragma once

// Finite superpositions of one- and two-mode coherent states.
//
// A state is  sum_i c_i |a_i1>|a_i2>  stored column-wise: one coefficient
// vector and one amplitude matrix (terms x modes). Every operation here is an
// exact termwise map, so nothing is ever truncated to a Fock basis.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "catbell/error.hpp"

namespace catbell {

inline constexpr Eigen::Index kMaxTerms = 4096;
inline constexpr double kMergeTol = 1e-12;
inline constexpr double kDefaultPruneTol = 1e-14;
inline constexpr double kMinNormSquared = 1e-30;

template <typename Scalar>
using ComplexT = std::complex<Scalar>;

template <typename Scalar>
inline bool is_finite(const ComplexT<Scalar>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// <b|g> for coherent states: exp(-|b|^2/2 - |g|^2/2 + conj(b) g).
template <typename Scalar>
inline ComplexT<Scalar> log_overlap(const ComplexT<Scalar>& b, const ComplexT<Scalar>& g) {
  return -Scalar(0.5) * (std::norm(b) + std::norm(g)) + std::conj(b) * g;
}

template <typename Scalar>
inline ComplexT<Scalar> overlap(const ComplexT<Scalar>& b, const ComplexT<Scalar>& g) {
  return std::exp(log_overlap(b, g));
}

template <typename Scalar = double>
class SuperpositionState {
 public:
  using Complex = ComplexT<Scalar>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using AmpMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  SuperpositionState() = default;

  /// Rows of `amps` are terms, columns are modes. Zero terms is allowed (the
  /// zero vector); normalize() rejects it.
  SuperpositionState(CoeffVector coeffs, AmpMatrix amps)
      : coeffs_(std::move(coeffs)), amps_(std::move(amps)) {
    if (amps_.cols() != 1 && amps_.cols() != 2) {
      throw DomainError(ErrorCode::kInvalidArgument, "mode count must be 1 or 2");
    }
    if (coeffs_.size() != amps_.rows()) {
      throw DomainError(ErrorCode::kInvalidArgument, "coefficient/amplitude row mismatch");
    }
    if (coeffs_.size() > kMaxTerms) {
      throw DomainError(ErrorCode::kTermBudget,
                        "term budget exceeded: " + std::to_string(coeffs_.size()));
    }
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      bool ok = is_finite(coeffs_(i));
      for (Eigen::Index m = 0; m < amps_.cols(); ++m) ok = ok && is_finite(amps_(i, m));
      if (!ok) throw DomainError(ErrorCode::kNonFinite, "non-finite coefficient or amplitude");
    }
  }

  static SuperpositionState coherent(const Complex& a) {
    CoeffVector c(1);
    c << Complex(1);
    AmpMatrix m(1, 1);
    m << a;
    return {std::move(c), std::move(m)};
  }

  static SuperpositionState coherent(const Complex& a, const Complex& b) {
    CoeffVector c(1);
    c << Complex(1);
    AmpMatrix m(1, 2);
    m << a, b;
    return {std::move(c), std::move(m)};
  }

  /// Builds from (coeff, amplitudes) pairs; every amplitude list must share a length.
  static SuperpositionState from_terms(
      const std::vector<std::pair<Complex, std::vector<Complex>>>& terms) {
    if (terms.empty()) throw DomainError(ErrorCode::kInvalidArgument, "empty term list");
    const auto modes = static_cast<Eigen::Index>(terms.front().second.size());
    CoeffVector c(static_cast<Eigen::Index>(terms.size()));
    AmpMatrix m(c.size(), modes);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const auto& [coeff, amps] = terms[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(amps.size()) != modes) {
        throw DomainError(ErrorCode::kModeMismatch, "terms disagree on mode count");
      }
      c(i) = coeff;
      for (Eigen::Index k = 0; k < modes; ++k) m(i, k) = amps[static_cast<std::size_t>(k)];
    }
    return {std::move(c), std::move(m)};
  }

  int modes() const { return static_cast<int>(amps_.cols()); }
  Eigen::Index size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.size() == 0; }

  const CoeffVector& coeffs() const { return coeffs_; }
  const AmpMatrix& amps() const { return amps_; }
  const Complex& coeff(Eigen::Index i) const { return coeffs_(i); }
  const Complex& amp(Eigen::Index i, int mode) const { return amps_(i, mode); }

  void check_mode(int mode) const {
    if (mode < 0 || mode >= modes()) {
      throw DomainError(ErrorCode::kInvalidMode, "invalid mode index " + std::to_string(mode));
    }
  }

 private:
  CoeffVector coeffs_;
  AmpMatrix amps_{AmpMatrix::Zero(0, 1)};
};

using State = SuperpositionState<double>;
using Complex = std::complex<double>;

/// Overlap matrix G(i, j) = <row i of `a` | row j of `b`>, product over modes.
template <typename Scalar>
Eigen::Matrix<ComplexT<Scalar>, Eigen::Dynamic, Eigen::Dynamic> gram_matrix(
    const SuperpositionState<Scalar>& a, const SuperpositionState<Scalar>& b) {
  if (a.modes() != b.modes()) throw DomainError(ErrorCode::kModeMismatch, "mode-count mismatch");
  Eigen::Matrix<ComplexT<Scalar>, Eigen::Dynamic, Eigen::Dynamic> g(a.size(), b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      ComplexT<Scalar> e(0);
      for (int m = 0; m < a.modes(); ++m) e += log_overlap(a.amp(i, m), b.amp(j, m));
      g(i, j) = std::exp(e);
    }
  }
  return g;
}

template <typename Scalar>
Eigen::Matrix<ComplexT<Scalar>, Eigen::Dynamic, Eigen::Dynamic> gram_matrix(
    const SuperpositionState<Scalar>& s) {
  return gram_matrix(s, s);
}

template <typename Scalar>
ComplexT<Scalar> inner_product(const SuperpositionState<Scalar>& a,
                               const SuperpositionState<Scalar>& b) {
  return a.coeffs().dot(gram_matrix(a, b) * b.coeffs());
}

template <typename Scalar>
Scalar norm_squared(const SuperpositionState<Scalar>& s) {
  return inner_product(s, s).real();
}

template <typename Scalar>
Scalar fidelity(const SuperpositionState<Scalar>& a, const SuperpositionState<Scalar>& b) {
  return std::norm(inner_product(a, b)) / (norm_squared(a) * norm_squared(b));
}

template <typename Scalar>
SuperpositionState<Scalar> scale(const SuperpositionState<Scalar>& s, const ComplexT<Scalar>& k) {
  return {s.coeffs() * k, s.amps()};
}

/// Concatenation of term lists (vector addition without merging).
template <typename Scalar>
SuperpositionState<Scalar> operator+(const SuperpositionState<Scalar>& a,
                                     const SuperpositionState<Scalar>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.modes() != b.modes()) throw DomainError(ErrorCode::kModeMismatch, "mode-count mismatch");
  typename SuperpositionState<Scalar>::CoeffVector c(a.size() + b.size());
  c << a.coeffs(), b.coeffs();
  typename SuperpositionState<Scalar>::AmpMatrix m(c.size(), a.modes());
  m << a.amps(), b.amps();
  return {std::move(c), std::move(m)};
}

template <typename Scalar>
SuperpositionState<Scalar> normalize(const SuperpositionState<Scalar>& s) {
  const Scalar n2 = s.empty() ? Scalar(0) : norm_squared(s);
  if (!(n2 > Scalar(kMinNormSquared))) {
    throw DomainError(ErrorCode::kZeroNorm, "cannot normalize a state with vanishing norm");
  }
  return scale(s, ComplexT<Scalar>(Scalar(1) / std::sqrt(n2)));
}

/// D(z)|g> = exp[(z conj(g) - conj(z) g)/2] |g + z>.
template <typename Scalar>
SuperpositionState<Scalar> displace(const SuperpositionState<Scalar>& s, int mode,
                                    const ComplexT<Scalar>& z) {
  s.check_mode(mode);
  auto c = s.coeffs();
  auto m = s.amps();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const auto g = m(i, mode);
    c(i) *= std::exp(Scalar(0.5) * (z * std::conj(g) - std::conj(z) * g));
    m(i, mode) = g + z;
  }
  return {std::move(c), std::move(m)};
}

/// |g> -> |e^{i theta} g>.
template <typename Scalar>
SuperpositionState<Scalar> phase_shift(const SuperpositionState<Scalar>& s, int mode,
                                       Scalar theta) {
  s.check_mode(mode);
  auto m = s.amps();
  if (theta == Scalar(0)) return s;
  const auto rot = std::polar(Scalar(1), theta);
  // Exact sign flip for pi so that P(pi)P(pi) is the identity bit-for-bit.
  if (std::abs(std::remainder(theta, Scalar(2) * std::numbers::pi_v<Scalar>)) ==
      std::numbers::pi_v<Scalar>) {
    m.col(mode) = -m.col(mode);
  } else {
    m.col(mode) *= rot;
  }
  return {s.coeffs(), std::move(m)};
}

/// Self-Kerr evolution for t = pi/Omega: |g> -> e^{-i pi/4}/sqrt2 (|g> + i|-g>).
/// Doubles the term count; prune() merges coincident amplitudes afterwards.
template <typename Scalar>
SuperpositionState<Scalar> kerr_pi(const SuperpositionState<Scalar>& s, int mode) {
  s.check_mode(mode);
  const Eigen::Index n = s.size();
  if (2 * n > kMaxTerms) {
    throw DomainError(ErrorCode::kTermBudget, "kerr_pi would exceed the term budget");
  }
  const ComplexT<Scalar> f =
      std::polar(Scalar(1) / std::sqrt(Scalar(2)), -std::numbers::pi_v<Scalar> / Scalar(4));
  typename SuperpositionState<Scalar>::CoeffVector c(2 * n);
  c << s.coeffs() * f, s.coeffs() * (f * ComplexT<Scalar>(0, 1));
  typename SuperpositionState<Scalar>::AmpMatrix m(2 * n, s.modes());
  m << s.amps(), s.amps();
  m.col(mode).tail(n) = -m.col(mode).tail(n);
  return {std::move(c), std::move(m)};
}

/// Balanced beam splitter: |b>|g> -> |(b+g)/sqrt2>|(b-g)/sqrt2>.
template <typename Scalar>
SuperpositionState<Scalar> beam_splitter_5050(const SuperpositionState<Scalar>& s) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "beam splitter needs two modes");
  const Scalar r = std::numbers::sqrt2_v<Scalar> / Scalar(2);
  typename SuperpositionState<Scalar>::AmpMatrix m(s.size(), 2);
  m.col(0) = (s.amps().col(0) + s.amps().col(1)) * r;
  m.col(1) = (s.amps().col(0) - s.amps().col(1)) * r;
  return {s.coeffs(), std::move(m)};
}

/// Merges terms whose amplitude tuples agree within kMergeTol, then drops
/// terms with |coeff| < tol. First-occurrence order is kept.
template <typename Scalar>
SuperpositionState<Scalar> prune(const SuperpositionState<Scalar>& s,
                                 Scalar tol = Scalar(kDefaultPruneTol)) {
  if (tol < Scalar(0)) throw DomainError(ErrorCode::kInvalidArgument, "prune tolerance < 0");
  const Eigen::Index n = s.size();
  std::vector<Eigen::Index> rep;
  std::vector<ComplexT<Scalar>> acc;
  rep.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    bool merged = false;
    for (std::size_t k = 0; k < rep.size(); ++k) {
      if ((s.amps().row(i) - s.amps().row(rep[k])).cwiseAbs().maxCoeff() < Scalar(kMergeTol)) {
        acc[k] += s.coeff(i);
        merged = true;
        break;
      }
    }
    if (!merged) {
      rep.push_back(i);
      acc.push_back(s.coeff(i));
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < rep.size(); ++k) {
    if (std::abs(acc[k]) >= tol && std::abs(acc[k]) > Scalar(0)) keep.push_back(k);
  }
  typename SuperpositionState<Scalar>::CoeffVector c(static_cast<Eigen::Index>(keep.size()));
  typename SuperpositionState<Scalar>::AmpMatrix m(c.size(), s.modes());
  for (Eigen::Index r = 0; r < c.size(); ++r) {
    const auto k = keep[static_cast<std::size_t>(r)];
    c(r) = acc[k];
    m.row(r) = s.amps().row(rep[k]);
  }
  return {std::move(c), std::move(m)};
}

/// Quadrature moments in the a + a^dagger convention: <b|X1|g> = <b|g>(conj(b) + g),
/// <b|X2|g> = i(conj(b) - g)<b|g>.
template <typename Scalar>
ComplexT<Scalar> two_mode_quadrature_moment(const SuperpositionState<Scalar>& s, bool phase) {
  if (s.modes() != 2) throw DomainError(ErrorCode::kModeMismatch, "moment needs two modes");
  const ComplexT<Scalar> I(0, 1);
  auto x = [&](const ComplexT<Scalar>& b, const ComplexT<Scalar>& g) {
    return phase ? I * (std::conj(b) - g) : std::conj(b) + g;
  };
  ComplexT<Scalar> total(0), norm(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      const auto w = std::conj(s.coeff(i)) * s.coeff(j) *
                     std::exp(log_overlap(s.amp(i, 0), s.amp(j, 0)) +
                              log_overlap(s.amp(i, 1), s.amp(j, 1)));
      norm += w;
      total += w * x(s.amp(i, 0), s.amp(j, 0)) * x(s.amp(i, 1), s.amp(j, 1));
    }
  }
  return total / norm;
}

}  // namespace catbell
