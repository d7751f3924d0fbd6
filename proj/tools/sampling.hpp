#pragma once

// Simulated CHSH run: homodyne samples for the four setting pairs, logged as
// x_a,x_b rows interleaved by setting (row i belongs to setting i mod 4, in the
// order 11, 12, 21, 22).

#include <array>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "catbell/bell.hpp"

namespace catbell::cli {

using SampleLog = std::vector<std::array<double, 2>>;

SampleLog simulate_chsh(double alpha, OpKind kind, const AngleSet& angles, std::size_t n_per_setting,
                        std::uint64_t seed);

/// Sign-correlation estimates, S with its standard error and a 95% interval.
nlohmann::json summarize_chsh(const SampleLog& log);

}  // namespace catbell::cli
