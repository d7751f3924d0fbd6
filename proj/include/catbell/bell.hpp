#pragma once

// CHSH assembly S = E11 + E12 + E21 - E22 over sign-binned homodyne
// correlations, multi-start angle optimization, amplitude scans, and the
// bisection search for the smallest alpha that violates |S| <= 2.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catbell/cstate.hpp"
#include "catbell/local_ops.hpp"

namespace catbell {

inline constexpr double kTsirelson = 2.8284271247461903;

struct AngleSet {
  double phi1 = 0, phi2 = 0, theta1 = 0, theta2 = 0;

  Eigen::Vector4d vec() const { return {phi1, phi2, theta1, theta2}; }
  static AngleSet from_vec(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

  /// phi1 = pi/4, phi2 = 0, theta1 = pi/8, theta2 = 3pi/8.
  static AngleSet canonical_ideal();
  /// The alpha = 1 optimum quoted for V: (0.236, -0.236, -0.066, 0.066).
  static AngleSet reference_physical();

  /// Wraps into [-pi, pi) for the periodic ideal kinds; V is not periodic in
  /// its angle, so its angles are clamped into [-pi, pi] instead.
  AngleSet canonical(OpKind kind) const;
};

bool lexicographic_less(const AngleSet& a, const AngleSet& b);

struct OptimizerMeta {
  int starts = 0;
  bool converged = true;
  int iterations = 0;
};

struct BellResult {
  double alpha = 0;
  OpKind kind = OpKind::kIdealR;
  AngleSet angles;
  double s_value = 0;
  std::array<double, 4> correlations{};  // E11, E12, E21, E22
  OptimizerMeta meta;
};

struct OptimizerConfig {
  int random_starts = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  int max_iterations = 4000;
  bool seeded_starts = true;  // include the canonical and reference angle sets
};

/// Thrown when no start converged; carries the best point found.
class ConvergenceError : public DomainError {
 public:
  explicit ConvergenceError(BellResult best)
      : DomainError(ErrorCode::kNoConvergence, "no optimizer start converged"),
        best_(std::move(best)) {}
  const BellResult& best() const { return best_; }

 private:
  BellResult best_;
};

/// Two-mode state after the local operations with angles (phi, theta).
using StateBuilder = std::function<State(double phi, double theta)>;

StateBuilder state_builder(double alpha, OpKind kind);

/// S with its four correlations for an arbitrary local-operation family.
BellResult bell_S(const StateBuilder& build, const AngleSet& angles);
BellResult bell_S(double alpha, const AngleSet& angles, OpKind kind);

/// Multi-start maximization of |S| over the four angles in [-pi, pi]^4.
BellResult optimize_S(const StateBuilder& build, const OptimizerConfig& cfg,
                      std::span<const AngleSet> extra_starts = {});
BellResult optimize_S(double alpha, OpKind kind, const OptimizerConfig& cfg,
                      std::span<const AngleSet> extra_starts = {});

struct ThresholdConfig {
  OptimizerConfig optimizer;
  double lower = 0.3;
  double upper = 1.5;
  double width = 1e-3;
  int grid_points = 7;
};

/// Smallest alpha in [lower, upper] with max |S| >= 2, by bisection after a
/// coarse monotonicity/straddle check on a grid.
double threshold_alpha(OpKind kind, const ThresholdConfig& cfg);

struct ScanPoint {
  double alpha = 0;
  std::optional<BellResult> result;
  std::string error;
};

/// Optimizes each alpha in turn, warm-starting from the previous optimum.
std::vector<ScanPoint> scan_alpha(OpKind kind, std::span<const double> alphas,
                                  const OptimizerConfig& cfg);

}  // namespace catbell
