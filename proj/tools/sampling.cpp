#include "sampling.hpp"

#include <cmath>
#include <random>

#include "catbell/homodyne.hpp"

namespace catbell::cli {

SampleLog simulate_chsh(double alpha, OpKind kind, const AngleSet& angles, std::size_t n,
                        std::uint64_t seed) {
  if (n == 0) throw DomainError(ErrorCode::kInvalidArgument, "sample count must be positive");
  const std::array<std::pair<double, double>, 4> settings = {{{angles.phi1, angles.theta1},
                                                              {angles.phi1, angles.theta2},
                                                              {angles.phi2, angles.theta1},
                                                              {angles.phi2, angles.theta2}}};
  std::vector<HomodyneSampler> samplers;
  std::vector<std::mt19937_64> rngs;
  for (std::size_t k = 0; k < 4; ++k) {
    samplers.emplace_back(rotated_state(alpha, settings[k].first, settings[k].second, kind));
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    rngs.emplace_back(seq);
  }
  SampleLog log;
  log.reserve(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) log.push_back(samplers[k](rngs[k]));
  }
  return log;
}

nlohmann::json summarize_chsh(const SampleLog& log) {
  if (log.empty() || log.size() % 4 != 0) {
    throw DomainError(ErrorCode::kInvalidArgument, "log length must be a positive multiple of 4");
  }
  std::array<double, 4> sum{};
  for (std::size_t i = 0; i < log.size(); ++i) {
    const bool same = (log[i][0] >= 0) == (log[i][1] >= 0);
    sum[i % 4] += same ? 1.0 : -1.0;
  }
  const double n = static_cast<double>(log.size() / 4);
  std::array<double, 4> e{};
  double var = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    e[k] = sum[k] / n;
    var += (1 - e[k] * e[k]) / n;
  }
  const double s = e[0] + e[1] + e[2] - e[3];
  const double se = std::sqrt(var);
  return {{"n_per_setting", log.size() / 4},
          {"correlations", e},
          {"S", s},
          {"std_error", se},
          {"ci95", {s - 1.96 * se, s + 1.96 * se}}};
}

}  // namespace catbell::cli
