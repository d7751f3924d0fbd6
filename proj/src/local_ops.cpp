#include "catbell/local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catbell {
namespace {

constexpr double kSpanTol = 1e-12;

State two_term(Complex a1, Complex a2, Complex b1, Complex b2, double sign) {
  return normalize(State::from_terms({{Complex(1), {a1, a2}}, {Complex(sign), {b1, b2}}}));
}

// +1 when the amplitude is +alpha, -1 when -alpha.
int span_sign(const Complex& amp, const Complex& alpha) {
  const double scale = std::max(1.0, std::abs(alpha));
  if (std::abs(amp - alpha) < kSpanTol * scale) return +1;
  if (std::abs(amp + alpha) < kSpanTol * scale) return -1;
  throw DomainError(ErrorCode::kNotInQubitSpan, "amplitude outside the {+alpha, -alpha} span");
}

// Applies the 2x2 map |a> -> m00|a> + m10|-a>, |-a> -> m01|a> + m11|-a> on `mode`.
State apply_span_matrix(const State& s, int mode, const Complex& alpha, Complex m00, Complex m10,
                        Complex m01, Complex m11) {
  s.check_mode(mode);
  const Eigen::Index n = s.size();
  State::CoeffVector c(2 * n);
  State::AmpMatrix m(2 * n, s.modes());
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool plus = span_sign(s.amp(i, mode), alpha) > 0;
    m.row(2 * i) = s.amps().row(i);
    m.row(2 * i + 1) = s.amps().row(i);
    m(2 * i, mode) = alpha;
    m(2 * i + 1, mode) = -alpha;
    c(2 * i) = s.coeff(i) * (plus ? m00 : m01);
    c(2 * i + 1) = s.coeff(i) * (plus ? m10 : m11);
  }
  return prune(State(std::move(c), std::move(m)));
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kIdealR: return "ideal-r";
    case OpKind::kIdealRPrime: return "ideal-rprime";
    case OpKind::kPhysicalV: return "physical-v";
  }
  return "unknown";
}

OpKind parse_op_kind(std::string_view name) {
  if (name == "ideal-r") return OpKind::kIdealR;
  if (name == "ideal-rprime") return OpKind::kIdealRPrime;
  if (name == "physical-v") return OpKind::kPhysicalV;
  throw DomainError(ErrorCode::kInvalidArgument, "unknown operation kind: " + std::string(name));
}

State build_phi_plus(Complex alpha) { return two_term(alpha, alpha, -alpha, -alpha, +1); }
State build_phi_minus(Complex alpha) { return two_term(alpha, alpha, -alpha, -alpha, -1); }
State build_psi_plus(Complex alpha) { return two_term(alpha, -alpha, -alpha, alpha, +1); }
State build_psi_minus(Complex alpha) { return two_term(alpha, -alpha, -alpha, alpha, -1); }

State build_cat(Complex alpha, int sign) {
  return normalize(
      State::from_terms({{Complex(1), {alpha}}, {Complex(sign >= 0 ? 1.0 : -1.0), {-alpha}}}));
}

Complex qubit_amplitude(const State& s, int mode) {
  s.check_mode(mode);
  if (s.empty()) throw DomainError(ErrorCode::kNotInQubitSpan, "empty state");
  Complex alpha = s.amp(0, mode);
  // Canonical representative: positive real part, or positive imaginary part on the axis.
  if (alpha.real() < 0 || (alpha.real() == 0 && alpha.imag() < 0)) alpha = -alpha;
  for (Eigen::Index i = 1; i < s.size(); ++i) span_sign(s.amp(i, mode), alpha);
  return alpha;
}

State ideal_R(const State& s, int mode, double phi, bool renorm) {
  const Complex alpha = qubit_amplitude(s, mode);
  const double c = std::cos(phi), sn = std::sin(phi);
  State out = apply_span_matrix(s, mode, alpha, c, sn, sn, -c);
  return renorm ? normalize(out) : out;
}

State ideal_Rprime(const State& s, int mode, double phi, bool renorm) {
  const Complex alpha = qubit_amplitude(s, mode);
  const double c = std::cos(2 * phi), sn = std::sin(2 * phi);
  State out = apply_span_matrix(s, mode, alpha, sn, c, c, -sn);
  return renorm ? normalize(out) : out;
}

State uz_exact(const State& s, int mode, double angle) {
  const Complex alpha = qubit_amplitude(s, mode);
  auto c = s.coeffs();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    c(i) *= std::polar(1.0, span_sign(s.amp(i, mode), alpha) * angle);
  }
  return {std::move(c), s.amps()};
}

State uz_displacement(const State& s, int mode, double eps) {
  return displace(s, mode, Complex(0, eps));
}

double qubit_norm_squared(const QubitCoeffs& q, double alpha) {
  return std::norm(q.a) + std::norm(q.b) +
         2.0 * (std::conj(q.a) * q.b).real() * std::exp(-2.0 * alpha * alpha);
}

QubitCoeffs normalize_qubit(const QubitCoeffs& q, double alpha) {
  const double n2 = qubit_norm_squared(q, alpha);
  if (!(n2 > kMinNormSquared)) throw DomainError(ErrorCode::kZeroNorm, "zero qubit");
  const double k = 1.0 / std::sqrt(n2);
  return {q.a * k, q.b * k};
}

double fidelity_uz(const QubitCoeffs& q, double alpha, double eps) {
  if (!(alpha > 0)) throw DomainError(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (std::abs(qubit_norm_squared(q, alpha) - 1.0) > 1e-9) {
    throw DomainError(ErrorCode::kUnnormalized, "qubit is not normalized");
  }
  const State phi = State::from_terms({{q.a, {Complex(alpha)}}, {q.b, {Complex(-alpha)}}});
  const State rotated = uz_exact(phi, 0, 2.0 * alpha * eps);
  const State displaced = uz_displacement(phi, 0, eps);
  return std::clamp(std::norm(inner_product(rotated, displaced)), 0.0, 1.0);
}

double worst_case_fidelity_uz(const QubitCoeffs& q, double alpha, double max_rotation) {
  constexpr int kSteps = 256;
  double worst = 1.0;
  for (int k = 0; k <= kSteps; ++k) {
    const double rotation = max_rotation * k / kSteps;
    worst = std::min(worst, fidelity_uz(q, alpha, rotation / (2.0 * alpha)));
  }
  return worst;
}

State physical_V(const State& s, int mode, double phi, double alpha) {
  if (!(alpha > 0)) {
    throw DomainError(ErrorCode::kInvalidArgument, "V(phi, alpha) needs alpha > 0");
  }
  State out = prune(kerr_pi(s, mode));
  out = displace(out, mode, Complex(0, phi / alpha));
  return prune(kerr_pi(out, mode));
}

State compose_rotation(const State& s, int mode, double phi, double alpha) {
  const Complex a(alpha);
  for (Eigen::Index i = 0; i < s.size(); ++i) span_sign(s.amp(i, mode), a);
  State out = uz_exact(prune(kerr_pi(s, mode)), mode, phi);
  out = phase_shift(prune(kerr_pi(out, mode)), mode, std::numbers::pi);
  return uz_exact(out, mode, std::numbers::pi);
}

State rotated_state(double alpha, double phi, double theta, OpKind kind) {
  if (!(alpha > 0)) throw DomainError(ErrorCode::kInvalidArgument, "alpha must be positive");
  const State base = build_phi_plus(Complex(alpha));
  switch (kind) {
    case OpKind::kIdealR:
      return normalize(ideal_R(ideal_R(base, 0, phi, false), 1, theta, false));
    case OpKind::kIdealRPrime:
      return normalize(ideal_Rprime(ideal_Rprime(base, 0, phi, false), 1, theta, false));
    case OpKind::kPhysicalV:
      return normalize(physical_V(physical_V(base, 0, phi, alpha), 1, theta, alpha));
  }
  throw DomainError(ErrorCode::kInvalidArgument, "unknown operation kind");
}

}  // namespace catbell
