#include "catbell/bell.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "catbell/homodyne.hpp"
#include "catbell/nelder_mead.hpp"

namespace catbell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-12;

double wrap(double a) {
  double w = std::fmod(a + kPi, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w - kPi;
}

bool better(const BellResult& a, const BellResult& b) {
  const double da = std::abs(a.s_value), db = std::abs(b.s_value);
  if (std::abs(da - db) > kTieTol) return da > db;
  return lexicographic_less(a.angles, b.angles);
}

std::vector<AngleSet> seeded_starts() {
  const AngleSet ideal = AngleSet::canonical_ideal();
  // R'(phi) = R(pi/2 - 2 phi), so phi' = (pi/2 - phi)/2 reproduces the ideal set.
  auto to_prime = [](double a) { return 0.5 * (0.5 * kPi - a); };
  return {ideal,
          {to_prime(ideal.phi1), to_prime(ideal.phi2), to_prime(ideal.theta1),
           to_prime(ideal.theta2)},
          AngleSet::reference_physical()};
}

}  // namespace

AngleSet AngleSet::canonical_ideal() { return {kPi / 4, 0.0, kPi / 8, 3 * kPi / 8}; }

AngleSet AngleSet::reference_physical() { return {0.236, -0.236, -0.066, 0.066}; }

AngleSet AngleSet::canonical(OpKind kind) const {
  if (kind == OpKind::kPhysicalV) {
    return AngleSet::from_vec(vec().cwiseMax(-kPi).cwiseMin(kPi));
  }
  return {wrap(phi1), wrap(phi2), wrap(theta1), wrap(theta2)};
}

bool lexicographic_less(const AngleSet& a, const AngleSet& b) {
  const auto va = a.vec(), vb = b.vec();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

StateBuilder state_builder(double alpha, OpKind kind) {
  if (!(alpha > 0)) throw DomainError(ErrorCode::kInvalidArgument, "alpha must be positive");
  return [alpha, kind](double phi, double theta) { return rotated_state(alpha, phi, theta, kind); };
}

BellResult bell_S(const StateBuilder& build, const AngleSet& angles) {
  BellResult r;
  r.angles = angles;
  r.correlations = {correlation(build(angles.phi1, angles.theta1)),
                    correlation(build(angles.phi1, angles.theta2)),
                    correlation(build(angles.phi2, angles.theta1)),
                    correlation(build(angles.phi2, angles.theta2))};
  const auto& e = r.correlations;
  r.s_value = e[0] + e[1] + e[2] - e[3];
  if (!(std::abs(r.s_value) <= kTsirelson + 1e-6)) {
    throw std::logic_error("computed |S| exceeds the Tsirelson bound");
  }
  r.meta = {0, true, 0};
  return r;
}

BellResult bell_S(double alpha, const AngleSet& angles, OpKind kind) {
  BellResult r = bell_S(state_builder(alpha, kind), angles);
  r.alpha = alpha;
  r.kind = kind;
  return r;
}

BellResult optimize_S(const StateBuilder& build, const OptimizerConfig& cfg,
                      std::span<const AngleSet> extra_starts) {
  std::vector<AngleSet> starts(extra_starts.begin(), extra_starts.end());
  if (cfg.seeded_starts) {
    for (const auto& s : seeded_starts()) starts.push_back(s);
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-kPi, kPi);
  for (int k = 0; k < cfg.random_starts; ++k) {
    AngleSet a;
    a.phi1 = unif(rng);
    a.phi2 = unif(rng);
    a.theta1 = unif(rng);
    a.theta2 = unif(rng);
    starts.push_back(a);
  }
  if (starts.empty()) throw DomainError(ErrorCode::kInvalidArgument, "no optimizer starts");

  const Eigen::Vector4d lo = Eigen::Vector4d::Constant(-kPi), hi = Eigen::Vector4d::Constant(kPi);
  NelderMeadOptions<double> opt;
  opt.f_tol = cfg.tolerance;
  opt.max_iterations = cfg.max_iterations;
  auto objective = [&](const Eigen::Vector4d& v) {
    return -std::abs(bell_S(build, AngleSet::from_vec(v)).s_value);
  };

  std::optional<BellResult> best;
  bool any_converged = false;
  for (const auto& start : starts) {
    const auto nm = nelder_mead<double, 4>(objective, start.vec(), lo, hi, opt);
    BellResult r = bell_S(build, AngleSet::from_vec(nm.x));
    r.meta.converged = nm.converged;
    r.meta.iterations = nm.iterations;
    any_converged = any_converged || nm.converged;
    if (!best || better(r, *best)) best = r;
  }
  best->meta.starts = static_cast<int>(starts.size());
  if (!any_converged) {
    best->meta.converged = false;
    throw ConvergenceError(*best);
  }
  best->meta.converged = true;
  return *best;
}

BellResult optimize_S(double alpha, OpKind kind, const OptimizerConfig& cfg,
                      std::span<const AngleSet> extra_starts) {
  BellResult r = optimize_S(state_builder(alpha, kind), cfg, extra_starts);
  r.alpha = alpha;
  r.kind = kind;
  r.angles = r.angles.canonical(kind);
  return r;
}

double threshold_alpha(OpKind kind, const ThresholdConfig& cfg) {
  if (!(cfg.lower > 0 && cfg.upper > cfg.lower && cfg.width > 0 && cfg.grid_points >= 2)) {
    throw DomainError(ErrorCode::kInvalidArgument, "invalid threshold bracket");
  }
  auto excess = [&](double alpha) {
    return std::abs(optimize_S(alpha, kind, cfg.optimizer).s_value) - 2.0;
  };

  std::vector<double> grid, values;
  for (int k = 0; k < cfg.grid_points; ++k) {
    const double a = cfg.lower + (cfg.upper - cfg.lower) * k / (cfg.grid_points - 1);
    grid.push_back(a);
    values.push_back(excess(a));
  }
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < values[k - 1] - 1e-6) {
      throw DomainError(ErrorCode::kBracket, "max |S| is not monotone over the bracket grid");
    }
  }
  if (!(values.front() < 0 && values.back() > 0)) {
    throw DomainError(ErrorCode::kBracket, "bracket does not straddle |S| = 2");
  }
  std::size_t k = 1;
  while (values[k] <= 0) ++k;
  double lo = grid[k - 1], hi = grid[k];
  while (hi - lo > cfg.width) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<ScanPoint> scan_alpha(OpKind kind, std::span<const double> alphas,
                                  const OptimizerConfig& cfg) {
  if (alphas.empty()) throw DomainError(ErrorCode::kInvalidArgument, "empty alpha list");
  std::vector<ScanPoint> out;
  std::optional<AngleSet> warm;
  for (double alpha : alphas) {
    ScanPoint p;
    p.alpha = alpha;
    try {
      std::vector<AngleSet> extra;
      if (warm) extra.push_back(*warm);
      p.result = optimize_S(alpha, kind, cfg, extra);
      warm = p.result->angles;
    } catch (const ConvergenceError& e) {
      p.result = e.best();
      p.result->alpha = alpha;
      p.result->kind = kind;
      p.error = e.what();
    } catch (const DomainError& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace catbell
