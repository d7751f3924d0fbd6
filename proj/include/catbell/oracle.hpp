#pragma once

// Independent numeric path to the homodyne statistics: closed-form
// characteristic function chi(zA, zB) = <psi| D(zA) (x) D(zB) |psi>, then a grid
// Fourier transform to the joint x-quadrature marginal.
//
// Integrating the Wigner function over both imaginary quadratures leaves only
// displacements along the imaginary axis, so with z = i t
//   P(xa, xb) = pi^{-2} \int\int chi(i ta, i tb) exp[-2i(ta xa + tb xb)] dta dtb.
// The pi^{-2} is pinned by the vacuum calibration in the tests.

#include <Eigen/Dense>

#include "catbell/cstate.hpp"
#include "catbell/homodyne.hpp"

namespace catbell {

Complex characteristic_fn(const State& s, const Complex& za, const Complex& zb);

struct PhaseSpaceGrid {
  double extent = 0;        // half-width per axis
  int points_per_axis = 0;  // power of two, >= 64
  Eigen::MatrixXd values;   // values(i, j) = P(x_i, x_j)

  double spacing() const { return 2.0 * extent / points_per_axis; }
  double x(int i) const { return -extent + i * spacing(); }
  double mass() const;
};

/// 3 * max|amp| + 3.
double default_extent(const State& s);

PhaseSpaceGrid wigner_marginal_grid(const State& s, int points_per_axis = 256);
PhaseSpaceGrid wigner_marginal_grid(const State& s, int points_per_axis, double extent);

/// Quadrant masses of a grid marginal by composite Boole quadrature on each
/// half-axis (x = 0 is a grid node; the grid is periodic so +extent wraps).
QuadrantProbs grid_quadrant_probs(const PhaseSpaceGrid& g);

}  // namespace catbell
