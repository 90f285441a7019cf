//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "biocorpus/error.hpp"

namespace biocorpus {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::kEmptyInput: return "EmptyInput";
  case ErrorCode::kUnbalancedDelimiter: return "UnbalancedDelimiter";
  case ErrorCode::kUnknownElement: return "UnknownElement";
  case ErrorCode::kSyntaxError: return "SyntaxError";
  case ErrorCode::kKekulizationFailed: return "KekulizationFailed";
  case ErrorCode::kInvalidGraph: return "InvalidGraph";
  case ErrorCode::kUnsupportedFeature: return "UnsupportedFeature";
  case ErrorCode::kUnknownToken: return "UnknownToken";
  case ErrorCode::kUnbalancedBracket: return "UnbalancedBracket";
  case ErrorCode::kStrayCharacter: return "StrayCharacter";
  case ErrorCode::kInvalidResidue: return "InvalidResidue";
  case ErrorCode::kMissingTextVocab: return "MissingTextVocab";
  case ErrorCode::kMalformedVocabFile: return "MalformedVocabFile";
  case ErrorCode::kDuplicateToken: return "DuplicateToken";
  case ErrorCode::kUnknownNonTextToken: return "UnknownNonTextToken";
  case ErrorCode::kUnknownId: return "UnknownId";
  case ErrorCode::kTooManySpans: return "TooManySpans";
  case ErrorCode::kInvalidSpan: return "InvalidSpan";
  case ErrorCode::kEmptyRecord: return "EmptyRecord";
  case ErrorCode::kEmptyStream: return "EmptyStream";
  case ErrorCode::kBatchTooSmall: return "BatchTooSmall";
  case ErrorCode::kIoFailure: return "IoFailure";
  case ErrorCode::kSchemaViolation: return "SchemaViolation";
  case ErrorCode::kUnknownTask: return "UnknownTask";
  case ErrorCode::kMissingFiller: return "MissingFiller";
  case ErrorCode::kDegenerateZero: return "DegenerateZero";
  case ErrorCode::kLengthMismatch: return "LengthMismatch";
  case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
  case ErrorCode::kWidthMismatch: return "WidthMismatch";
  case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace biocorpus
