#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slotprobe {

enum class ErrorCode {
  io_failure,
  invariant_violation,
  bad_magic,
  version_unsupported,
  truncated_payload,
  parse_error,
  invalid_argument,
  degenerate_split,
  dimension_too_small,
  config_bank_mismatch,
  entity_out_of_range,
  non_finite_input,
  dimension_mismatch,
  divergence,
  empty_split,
  insufficient_data,
  zero_variance,
  vocabulary_missing,
  pool_exhausted,
  retry_exhausted,
  lexicon_too_small,
  insufficient_samples,
  missing_mean,
  unknown_opposite,
  span_mismatch,
  missing_baseline,
  mismatched_trial_pairing,
  unmatched_log,
  duplicate_log,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_failure: return "io-failure";
    case ErrorCode::invariant_violation: return "invariant-violation";
    case ErrorCode::bad_magic: return "bad-magic";
    case ErrorCode::version_unsupported: return "version-unsupported";
    case ErrorCode::truncated_payload: return "truncated-payload";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::degenerate_split: return "degenerate-split";
    case ErrorCode::dimension_too_small: return "dimension-too-small";
    case ErrorCode::config_bank_mismatch: return "config-bank-mismatch";
    case ErrorCode::entity_out_of_range: return "entity-out-of-range";
    case ErrorCode::non_finite_input: return "non-finite-input";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::empty_split: return "empty-split";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::zero_variance: return "zero-variance";
    case ErrorCode::vocabulary_missing: return "vocabulary-missing";
    case ErrorCode::pool_exhausted: return "pool-exhausted";
    case ErrorCode::retry_exhausted: return "generation-retry-exhausted";
    case ErrorCode::lexicon_too_small: return "lexicon-too-small";
    case ErrorCode::insufficient_samples: return "insufficient-samples";
    case ErrorCode::missing_mean: return "missing-mean";
    case ErrorCode::unknown_opposite: return "unknown-opposite";
    case ErrorCode::span_mismatch: return "span-mismatch";
    case ErrorCode::missing_baseline: return "missing-baseline";
    case ErrorCode::mismatched_trial_pairing: return "mismatched-trial-pairing";
    case ErrorCode::unmatched_log: return "unmatched-log";
    case ErrorCode::duplicate_log: return "duplicate-log";
  }
  return "unknown";
}

// Every failure in the library is reported as an Error carrying a code that
// tests and the CLI can dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace slotprobe
