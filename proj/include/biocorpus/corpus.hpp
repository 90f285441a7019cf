//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "biocorpus/tokenizers.hpp"

namespace biocorpus {

// ---------------------------------------------------------------------------
// Training examples
// ---------------------------------------------------------------------------

enum class Task : std::uint8_t {
  kMolT5,
  kProtT5,
  kTextT5,
  kWrappedT5,
  kMolTextPair,
  kProtTextPair,
};

inline constexpr std::size_t kTaskCount = 6;

const std::array<Task, kTaskCount> &all_tasks();
std::string_view task_name(Task t) noexcept;
std::optional<Task> parse_task(std::string_view name) noexcept;

struct TrainingExample {
  TokenSequence input_ids;
  TokenSequence target_ids;
  Task task = Task::kMolT5;

  friend bool operator==(const TrainingExample &, const TrainingExample &) = default;
};

// ---------------------------------------------------------------------------
// Span corruption
// ---------------------------------------------------------------------------

struct CorruptionParams {
  double noise_density = 0.15;
  double mean_span_length = 3.0;
  int max_input_length = 512;
  // Keep <bom>/<eom> out of masked spans. A span that would cover one is
  // split around it.
  bool protect_delimiters = false;
};

/// Masked positions as sorted, non-adjacent [begin, end) runs.
struct SpanPlan {
  std::vector<std::pair<int, int>> spans;
  int length = 0;
};

/// Draws span positions for a sequence of the given length. Noise tokens =
/// round(length * density); spans = round(noise / mean), at least one when
/// noise > 0 and at most length - noise + 1 so gaps fit. Span lengths and
/// the gaps between them are uniform random compositions.
SpanPlan plan_spans(int length, const CorruptionParams &params, std::uint64_t seed);

/// Truncates to max_input_length, masks per plan_spans and builds the
/// sentinel-keyed input and target. Throws EmptyInput, InvalidArgument for
/// bad params, TooManySpans when the vocabulary lacks <M(k+1)>.
TrainingExample span_corrupt(const TokenSequence &tokens, const CorruptionParams &params, std::uint64_t seed,
                             const Vocabulary &vocab, Task task);

// ---------------------------------------------------------------------------
// Wrapped text
// ---------------------------------------------------------------------------

enum class EntityKind : std::uint8_t { kMolecule, kGene };

std::string_view entity_kind_name(EntityKind k) noexcept;

/// Offsets are Unicode code points, half-open.
struct EntityAnnotation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  EntityKind kind = EntityKind::kMolecule;
  std::string entity_id;

  friend bool operator==(const EntityAnnotation &, const EntityAnnotation &) = default;
};

using SequenceLookup = std::unordered_map<std::string, std::string>;

struct WrapStats {
  std::size_t sentences = 0;
  std::size_t molecules_replaced = 0;
  std::size_t genes_appended = 0;
  std::size_t unresolved_mentions = 0;
};

struct WrapResult {
  std::vector<std::string> wrapped;
  std::vector<std::string> plain;
  WrapStats stats;
};

/// Sentence ranges [begin, end) in code points. A sentence ends after '.',
/// '!' or '?' followed by whitespace unless an annotation spans that point;
/// leading whitespace is not part of a sentence.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(std::string_view text,
                                                                 const std::vector<EntityAnnotation> &annotations);

/// Replaces resolvable molecule mentions by "<bom>SELFIES<eom>" and appends
/// " <bom>FASTA<eom>" after one seeded choice among the resolvable gene
/// mentions of each sentence. Sentences without any substitution go to the
/// plain stream. Throws InvalidSpan for out-of-range, empty or overlapping
/// spans, or a surface that does not match the text.
WrapResult wrap_document(std::string_view text, const std::vector<EntityAnnotation> &annotations,
                         const SequenceLookup &mol_lookup, const SequenceLookup &prot_lookup, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Translation pairs
// ---------------------------------------------------------------------------

enum class RecordKind : std::uint8_t { kMolecule, kProtein };

struct PairRecord {
  std::string id;
  RecordKind kind = RecordKind::kMolecule;
  std::string sequence;  // SELFIES for molecules, FASTA letters for proteins
  std::optional<std::string> name;
  // Keyed by field marker ("DESCRIPTION", "FUNCTION", ...). Emitted in the
  // fixed order of the record kind whatever the order here.
  std::vector<std::pair<std::string, std::string>> fields;

  friend bool operator==(const PairRecord &, const PairRecord &) = default;
};

/// Field markers a record kind may carry, in emission order (name excluded).
const std::vector<std::string> &record_fields(RecordKind kind);

/// Text side token texts: for the name and each present field, the marker
/// followed by tokenize_text(" " + value).
std::vector<std::string> pair_text_tokens(const PairRecord &record, const Vocabulary &vocab);

/// Sequence side <bom> tokens <eom>. With a positive max_length the
/// sequence is cut so the whole side fits.
std::vector<std::string> pair_sequence_tokens(const PairRecord &record, int max_length = 0);

/// Direction seq->text or text->seq with probability 0.5 from the seed.
/// Both sides are limited to max_length. Throws EmptyRecord for an empty
/// sequence or no text fields, SchemaViolation for a field the kind does
/// not allow.
TrainingExample build_translation_pair(const PairRecord &record, std::uint64_t seed, const Vocabulary &vocab,
                                       int max_length = 512);

/// True when the example's input is the sequence side.
bool is_sequence_to_text(const TrainingExample &example, const Vocabulary &vocab);

// ---------------------------------------------------------------------------
// Multi-task mixing
// ---------------------------------------------------------------------------

class ExampleStream {
 public:
  virtual ~ExampleStream() = default;
  /// Next example, or nullopt at the end of an epoch.
  virtual std::optional<TrainingExample> next() = 0;
  /// Rewinds to the first example.
  virtual void reset() = 0;
};

class VectorStream final : public ExampleStream {
 public:
  explicit VectorStream(std::vector<TrainingExample> examples) : examples_(std::move(examples)) { }
  std::optional<TrainingExample> next() override;
  void reset() override { pos_ = 0; }

 private:
  std::vector<TrainingExample> examples_;
  std::size_t pos_ = 0;
};

struct MixerConfig {
  int batch_size = 96;
  std::array<double, kTaskCount> weights = { 1, 1, 1, 1, 1, 1 };
  std::uint64_t seed = 0;
};

/// Fixed per-task counts: floor(batch * w / sum w), raised to at least one
/// and trimmed from the largest if the minimums overshoot. Throws
/// BatchTooSmall and InvalidArgument for negative or all-zero weights.
std::array<int, kTaskCount> mixer_quotas(const MixerConfig &config);

class TaskMixer {
 public:
  /// Streams in all_tasks() order. Throws EmptyStream naming the task of a
  /// stream with no examples, BatchTooSmall, InvalidArgument.
  TaskMixer(std::array<std::unique_ptr<ExampleStream>, kTaskCount> streams, const MixerConfig &config);

  /// Quota examples from each stream, the batch - sum(quota) remainder drawn
  /// by weight, then shuffled. Deterministic in (seed, batch index).
  std::vector<TrainingExample> next_batch();

  std::size_t batches_emitted() const noexcept { return batch_index_; }
  /// Times each stream was restarted after running out.
  const std::array<std::uint64_t, kTaskCount> &wraps() const noexcept { return wraps_; }
  const std::array<int, kTaskCount> &quotas() const noexcept { return quotas_; }

 private:
  TrainingExample pull(std::size_t task);

  std::array<std::unique_ptr<ExampleStream>, kTaskCount> streams_;
  MixerConfig config_;
  std::array<int, kTaskCount> quotas_{};
  std::array<std::uint64_t, kTaskCount> wraps_{};
  std::size_t batch_index_ = 0;
};

}  // namespace biocorpus
