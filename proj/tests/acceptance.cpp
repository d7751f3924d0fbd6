// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catbell/bell.hpp"
#include "catbell/faddeeva.hpp"
#include "catbell/homodyne.hpp"
#include "catbell/local_ops.hpp"
#include "catbell/oracle.hpp"
#include "support.hpp"

using namespace catbell;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Bisection for a sign change of f on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double width) {
  double flo = f(lo);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome phase_extremum() {
  const double computed = quadrature_correlations(1.0, kPi / 2).phase;  // lambda = pi
  const double exact = -4 * std::exp(-4.0) / (1 - std::exp(-4.0));
  const double rounded = -0.0745;
  const bool ok = std::abs(computed - exact) < 1e-12 && std::abs(computed - rounded) < 2e-4;
  return {ok, fmt("phase corr %.10f, |diff to -0.0745| = %.2e", computed, std::abs(computed - rounded))};
}

Outcome closed_form_vs_quadrature() {
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = 0.1 + i * (3.0 - 0.1) / 19;
    for (int k = 0; k < 20; ++k) {
      const double delta = k * kPi / 19;
      const State s = rotated_state(alpha, 0.0, delta, OpKind::kIdealR);
      const double numeric = testing::quadrant_probs_by_quadrature(s, 1e-12).correlation();
      worst = std::max(worst, std::abs(numeric - correlation_ideal_closed_form(alpha, delta)));
    }
  }
  // Same expression with erfc in place of erf.
  const double alpha = 2.0;
  const double erfc_form = std::pow(std::erfc(std::numbers::sqrt2 * alpha), 2) /
                           (1 + std::exp(-4 * alpha * alpha));
  const double gap = std::abs(correlation_ideal_closed_form(alpha, 0.0) - erfc_form);
  return {worst < 1e-8 && gap > 0.5,
          fmt("max |closed form - quadrature| = %.2e over 20x20; erfc-form gap at a=2 = %.4f", worst,
              gap)};
}

// max over x of 3E(x) - E(3x), the one-parameter family through the canonical angles.
double symmetric_family_max(double alpha) {
  auto s = [&](double x) {
    return 3 * correlation_ideal_closed_form(alpha, x) - correlation_ideal_closed_form(alpha, 3 * x);
  };
  double lo = 0, hi = kPi / 4;
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    (s(a) > s(b) ? hi : lo) = (s(a) > s(b) ? b : a);
  }
  return s(0.5 * (lo + hi));
}

Outcome ideal_threshold() {
  const double t = threshold_alpha(OpKind::kIdealR, ThresholdConfig{});
  const double family = bisect([](double a) { return symmetric_family_max(a) - 2; }, 0.3, 1.5, 1e-6);
  return {std::abs(t - 0.723) <= 0.005,
          fmt("threshold %.4f (target 0.723 +- 0.005); symmetric-angle-family crossing %.4f", t,
              family)};
}

Outcome physical_threshold() {
  const double t = threshold_alpha(OpKind::kPhysicalV, ThresholdConfig{});
  return {std::abs(t - 0.842) <= 0.005, fmt("threshold %.4f (target 0.842 +- 0.005)", t)};
}

Outcome physical_optimum() {
  const BellResult r = optimize_S(1.0, OpKind::kPhysicalV, OptimizerConfig{});
  const AngleSet target{0.236, -0.236, -0.066, 0.066};
  const AngleSet& a = r.angles;
  // Symmetries: global negation, party swap, both.
  const std::vector<AngleSet> images = {a,
                                        {-a.phi1, -a.phi2, -a.theta1, -a.theta2},
                                        {a.theta1, a.theta2, a.phi1, a.phi2},
                                        {-a.theta1, -a.theta2, -a.phi1, -a.phi2}};
  double dist = 1e9;
  for (const auto& im : images) {
    dist = std::min(dist, (im.vec() - target.vec()).cwiseAbs().maxCoeff());
  }
  const double at_target = bell_S(1.0, target, OpKind::kPhysicalV).s_value;
  const bool s_ok = std::abs(std::abs(r.s_value) - 2.29) <= 0.01;
  return {s_ok && dist <= 0.02,
          fmt("S = %.5f (%s); angles (%.4f, %.4f, %.4f, %.4f), distance to target %.4f; "
              "S at target angles = %.4f",
              r.s_value, s_ok ? "ok" : "off", a.phi1, a.phi2, a.theta1, a.theta2, dist, at_target)};
}

Outcome tsirelson() {
  const BellResult r = optimize_S(3.0, OpKind::kIdealR, OptimizerConfig{});
  const double gap = kTsirelson - std::abs(r.s_value);
  double largest = 0;
  const std::vector<double> alphas = {0.5, 1.0, 2.0, 3.0, 4.0};
  for (auto kind : {OpKind::kIdealR, OpKind::kIdealRPrime, OpKind::kPhysicalV}) {
    for (const auto& p : scan_alpha(kind, alphas, OptimizerConfig{.random_starts = 10})) {
      if (p.result) largest = std::max(largest, std::abs(p.result->s_value));
    }
  }
  return {std::abs(gap) < 1e-3 && largest <= kTsirelson + 1e-6,
          fmt("2sqrt2 - |S|(a=3) = %.2e; largest |S| seen in scans %.9f", gap, largest)};
}

Outcome fidelity_bound() {
  auto worst = [](double alpha) {
    return worst_case_fidelity_uz(normalize_qubit({Complex(1), Complex(1)}, alpha), alpha) - 0.99;
  };
  const double a = bisect(worst, 5.0, 30.0, 1e-4);
  return {std::abs(a - 15.7) <= 0.1, fmt("worst-angle F crosses 0.99 at alpha = %.4f", a)};
}

Outcome cross_paths() {
  std::mt19937_64 rng(2718);
  double grid_err = 0, quad_err = 0;
  for (int k = 0; k < 25; ++k) {
    const State s = testing::random_state(rng, 4, 3.0);
    const MarginalMixture m = marginal(s);
    const PhaseSpaceGrid g = wigner_marginal_grid(s, 256);
    for (int i = 0; i < g.points_per_axis; ++i) {
      for (int j = 0; j < g.points_per_axis; ++j) {
        grid_err = std::max(grid_err, std::abs(g.values(i, j) - m(g.x(i), g.x(j))));
      }
    }
    const QuadrantProbs a = quadrant_probs(m);
    const QuadrantProbs b = testing::quadrant_probs_by_quadrature(s, 1e-12);
    quad_err = std::max({quad_err, std::abs(a.pp - b.pp), std::abs(a.pm - b.pm),
                         std::abs(a.mp - b.mp), std::abs(a.mm - b.mm)});
  }
  return {grid_err < 1e-6 && quad_err < 1e-8,
          fmt("grid sup-norm %.2e, quadrant max error %.2e (25 states)", grid_err, quad_err)};
}

Outcome unitarity() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  double norm_err = 0, kerr_sq = 1, v_single = 1, v_pair = 1;
  for (int k = 0; k < 100; ++k) {
    const State s = testing::random_state(rng, 8, 3.0);
    const Complex z(u(rng), u(rng));
    for (const State& t : {displace(s, 0, z), phase_shift(s, 1, u(rng)), kerr_pi(s, 0),
                           beam_splitter_5050(s), physical_V(s, 1, u(rng), 1.3)}) {
      norm_err = std::max(norm_err, std::abs(norm_squared(t) - 1));
    }
    kerr_sq = std::min(kerr_sq, fidelity(kerr_pi(kerr_pi(s, 0), 0), phase_shift(s, 0, kPi)));
    const double alpha = 0.3 + std::abs(u(rng)), phi = u(rng), theta = u(rng);
    v_single = std::min(v_single,
                        fidelity(physical_V(State::coherent(Complex(alpha)), 0, phi, alpha),
                                 normalize(testing::v_on_alpha_transcribed(alpha, phi))));
    v_pair = std::min(v_pair,
                      fidelity(rotated_state(alpha, phi, theta, OpKind::kPhysicalV),
                               normalize(testing::physical_ecs_transcribed(alpha, phi, theta))));
  }
  return {norm_err < 1e-12 && kerr_sq > 1 - 1e-12 && v_single > 1 - 1e-10 && v_pair > 1 - 1e-10,
          fmt("norm error %.1e; Kerr^2 vs parity F-1 = %.1e; V expansions F-1 = %.1e, %.1e",
              norm_err, kerr_sq - 1, v_single - 1, v_pair - 1)};
}

Outcome monte_carlo() {
  struct Config {
    double alpha;
    OpKind kind;
    double phi, theta;
    std::uint64_t seed;
  };
  const std::vector<Config> configs = {{1.0, OpKind::kIdealR, 0.0, kPi / 8, 101},
                                       {0.5, OpKind::kIdealR, 0.3, 0.0, 102},
                                       {2.0, OpKind::kIdealR, 0.2, 1.0, 103},
                                       {1.0, OpKind::kPhysicalV, 0.066, -0.066, 104},
                                       {0.8, OpKind::kPhysicalV, 0.236, 0.066, 105}};
  const std::size_t n = 1000000;
  double worst_z = 0;
  for (const auto& c : configs) {
    const State s = rotated_state(c.alpha, c.phi, c.theta, c.kind);
    const double expected = c.kind == OpKind::kPhysicalV
                                ? correlation(s)
                                : correlation_ideal_closed_form(c.alpha, c.theta - c.phi);
    double sum = 0;
    for (const auto& x : sample_homodyne(s, n, c.seed)) sum += (x[0] >= 0) == (x[1] >= 0) ? 1 : -1;
    const double est = sum / n;
    const double se = std::sqrt((1 - expected * expected) / n);
    worst_z = std::max(worst_z, std::abs(est - expected) / se);
  }
  return {worst_z < 3, fmt("largest deviation %.2f standard errors over 5 configurations", worst_z)};
}

Outcome state_prep() {
  const double r2 = std::numbers::sqrt2;
  const State cat = State::from_terms({{1.0, {Complex(r2), Complex(0)}}, {1.0, {Complex(-r2), Complex(0)}}});
  const double f = fidelity(beam_splitter_5050(normalize(cat)), build_phi_plus(Complex(1)));
  return {f > 1 - 1e-12, fmt("fidelity - 1 = %.2e", f - 1)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "phase-quadrature extremum", phase_extremum},
      {2, "correlation closed form vs quadrature", closed_form_vs_quadrature},
      {3, "ideal-rotation threshold", ideal_threshold},
      {4, "physical-operation threshold", physical_threshold},
      {5, "physical optimum at alpha = 1", physical_optimum},
      {6, "Tsirelson asymptote and bound", tsirelson},
      {7, "displacement fidelity bound", fidelity_bound},
      {8, "analytic vs grid vs quadrature", cross_paths},
      {9, "norm and unitarity properties", unitarity},
      {10, "Monte Carlo consistency", monte_carlo},
      {11, "state preparation by beam splitter", state_prep},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-40s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
