#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catbell {

enum class ErrorCode {
  kInvalidArgument,
  kNonFinite,
  kInvalidMode,
  kModeMismatch,
  kTermBudget,
  kZeroNorm,
  kUnnormalized,
  kNotInQubitSpan,
  kComplexErf,
  kSamplerEnvelope,
  kNoConvergence,
  kBracket,
  kGridTooCoarse,
  kIo,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kInvalidMode: return "invalid_mode";
    case ErrorCode::kModeMismatch: return "mode_mismatch";
    case ErrorCode::kTermBudget: return "term_budget";
    case ErrorCode::kZeroNorm: return "zero_norm";
    case ErrorCode::kUnnormalized: return "unnormalized";
    case ErrorCode::kNotInQubitSpan: return "not_in_qubit_span";
    case ErrorCode::kComplexErf: return "complex_erf";
    case ErrorCode::kSamplerEnvelope: return "sampler_envelope";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kBracket: return "bracket";
    case ErrorCode::kGridTooCoarse: return "grid_too_coarse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

/// Domain failure raised by the engine. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace catbell
