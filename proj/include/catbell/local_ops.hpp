#pragma once

// Local operations used in the Bell test: the ideal (nonunitary) qubit
// rotations on the {|a>, |-a>} span, the displacement approximation of a
// z-rotation, and the Kerr/displacement/Kerr operation V(phi, a).

#include <string_view>

#include "catbell/cstate.hpp"

namespace catbell {

enum class OpKind { kIdealR, kIdealRPrime, kPhysicalV };

std::string_view to_string(OpKind kind);
OpKind parse_op_kind(std::string_view name);

/// Logical coherent-state qubit a|alpha> + b|-alpha>.
struct QubitCoeffs {
  Complex a;
  Complex b;
};

// Entangled coherent states, normalized.
State build_phi_plus(Complex alpha);   // |a,a> + |-a,-a>
State build_phi_minus(Complex alpha);  // |a,a> - |-a,-a>
State build_psi_plus(Complex alpha);   // |a,-a> + |-a,a>
State build_psi_minus(Complex alpha);  // |a,-a> - |-a,a>

/// Single-mode cat N(|alpha> + sign |-alpha>).
State build_cat(Complex alpha, int sign = +1);

/// The common amplitude alpha of `mode` when every term sits at +alpha or
/// -alpha; throws kNotInQubitSpan otherwise. The sign is fixed so that
/// Re alpha > 0 (or Im alpha > 0 when alpha is imaginary).
Complex qubit_amplitude(const State& s, int mode);

/// R(phi)|a> = cos phi |a> + sin phi |-a>,  R(phi)|-a> = sin phi |a> - cos phi |-a>.
/// Not unitary; with renorm the result is rescaled to unit norm.
State ideal_R(const State& s, int mode, double phi, bool renorm = true);

/// R'(phi)|a> = sin 2phi |a> + cos 2phi |-a>,  R'(phi)|-a> = cos 2phi |a> - sin 2phi |-a>.
/// Equal to R(pi/2 - 2 phi).
State ideal_Rprime(const State& s, int mode, double phi, bool renorm = true);

/// Exact z-rotation on the coherent-qubit span: |a> -> e^{i angle}|a>, |-a> -> e^{-i angle}|-a>.
State uz_exact(const State& s, int mode, double angle);

/// D(i eps), which approximates U_z(2 alpha eps) for large alpha.
State uz_displacement(const State& s, int mode, double eps);

/// Norm <q|q> of a qubit in the nonorthogonal basis.
double qubit_norm_squared(const QubitCoeffs& q, double alpha);
QubitCoeffs normalize_qubit(const QubitCoeffs& q, double alpha);

/// F = |<q| U_z^dagger(2 alpha eps) D(i eps) |q>|^2, exact.
double fidelity_uz(const QubitCoeffs& q, double alpha, double eps);

/// Minimum of fidelity_uz over rotation angles 2 alpha eps in [0, max_rotation].
double worst_case_fidelity_uz(const QubitCoeffs& q, double alpha,
                              double max_rotation = std::numbers::pi);

/// V(phi, alpha) = U_NL D(i phi / alpha) U_NL. Unitary, so no renormalization.
State physical_V(const State& s, int mode, double phi, double alpha);

/// U_z(pi) U_x(-pi/4) U_z(phi) U_x(pi/4) with U_x(pi/4) = kerr_pi,
/// U_x(-pi/4) = P(pi) kerr_pi and U_z acting by exact span phases.
/// This is a proper rotation on the span, so it agrees with R(phi) only up to
/// a relabeling of angles and signs; CHSH statistics are the same.
State compose_rotation(const State& s, int mode, double phi, double alpha);

/// |Phi+> with angle phi applied on mode A and theta on mode B, normalized.
State rotated_state(double alpha, double phi, double theta, OpKind kind);

}  // namespace catbell
