//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biocorpus {

enum class ErrorCode {
  // molgraph
  kEmptyInput,
  kUnbalancedDelimiter,
  kUnknownElement,
  kSyntaxError,
  kKekulizationFailed,
  kInvalidGraph,
  kUnsupportedFeature,
  // selfies-codec
  kUnknownToken,
  // tokenizers
  kUnbalancedBracket,
  kStrayCharacter,
  kInvalidResidue,
  kMissingTextVocab,
  kMalformedVocabFile,
  kDuplicateToken,
  kUnknownNonTextToken,
  kUnknownId,
  // corpus-pipeline
  kTooManySpans,
  kInvalidSpan,
  kEmptyRecord,
  kEmptyStream,
  kBatchTooSmall,
  kIoFailure,
  kSchemaViolation,
  // prompting
  kUnknownTask,
  kMissingFiller,
  kDegenerateZero,
  // metrics
  kLengthMismatch,
  kEmptyCorpus,
  kWidthMismatch,
  // generic precondition failure
  kInvalidArgument,
};

/// Stable, machine-readable name of an error code, e.g. "UnbalancedDelimiter".
std::string_view error_name(ErrorCode code) noexcept;

/// The single exception type thrown by the library. The code names the
/// failure; the message carries the offending input for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) { }

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace biocorpus
