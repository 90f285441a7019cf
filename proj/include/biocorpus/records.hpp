//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "biocorpus/corpus.hpp"
#include "biocorpus/io.hpp"

namespace biocorpus {

enum class ReadMode : std::uint8_t {
  kLenient,  // malformed lines are skipped and counted
  kStrict,   // the first malformed line throws SchemaViolation
};

struct ReadStats {
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::string first_error;  // message of the first skipped line
};

struct Document {
  std::string id;
  std::string text;

  friend bool operator==(const Document &, const Document &) = default;
};

struct AnnotationRecord {
  std::string doc_id;
  EntityAnnotation annotation;
};

/// Token IDs of one input record: {"id": ..., "ids": [...], "task": ...}.
struct IdsRecord {
  std::string id;
  TokenSequence ids;
  Task task = Task::kMolT5;

  friend bool operator==(const IdsRecord &, const IdsRecord &) = default;
};

// Single-line JSON codecs. Parsers throw SchemaViolation naming the field.

Document parse_document(std::string_view line);
AnnotationRecord parse_annotation(std::string_view line);
PairRecord parse_pair_record(std::string_view line);
IdsRecord parse_ids_record(std::string_view line);
TrainingExample parse_example(std::string_view line);

std::string to_json_line(const Document &doc);
std::string to_json_line(const AnnotationRecord &record);
std::string to_json_line(const PairRecord &record);
std::string to_json_line(const IdsRecord &record);
std::string to_json_line(const TrainingExample &example);

/// Streams records of one type from a JSONL file. Blank lines are ignored.
template <typename Record>
class JsonlReader {
 public:
  explicit JsonlReader(const std::string &path, ReadMode mode = ReadMode::kLenient);

  bool next(Record &out);
  const ReadStats &stats() const noexcept { return stats_; }

 private:
  LineReader lines_;
  ReadMode mode_;
  ReadStats stats_;
};

extern template class JsonlReader<Document>;
extern template class JsonlReader<AnnotationRecord>;
extern template class JsonlReader<PairRecord>;
extern template class JsonlReader<IdsRecord>;
extern template class JsonlReader<TrainingExample>;

struct FastaRecord {
  std::string header;  // text after '>'
  std::string sequence;
};

/// Multi-line FASTA. Sequence lines are concatenated with whitespace
/// removed; lines before the first header are malformed.
class FastaReader {
 public:
  explicit FastaReader(const std::string &path, ReadMode mode = ReadMode::kLenient);

  bool next(FastaRecord &out);
  const ReadStats &stats() const noexcept { return stats_; }

 private:
  LineReader lines_;
  ReadMode mode_;
  ReadStats stats_;
  std::optional<std::string> pending_header_;
};

/// Line-oriented output to a file or stdout ("-").
class LineWriter {
 public:
  explicit LineWriter(const std::string &path);
  ~LineWriter();
  LineWriter(const LineWriter &) = delete;
  LineWriter &operator=(const LineWriter &) = delete;

  void write(std::string_view line);
  std::size_t count() const noexcept { return count_; }
  /// Flushes; throws IoFailure if any write failed.
  void close();

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream *out_ = nullptr;
  std::size_t count_ = 0;
};

/// Replays a TrainingExample JSONL file; reset() reopens it. Malformed
/// lines throw SchemaViolation.
class JsonlExampleStream final : public ExampleStream {
 public:
  explicit JsonlExampleStream(std::string path);
  std::optional<TrainingExample> next() override;
  void reset() override;

 private:
  std::string path_;
  std::unique_ptr<JsonlReader<TrainingExample>> reader_;
};

/// "id<TAB>sequence" lines into a lookup table. Throws IoFailure and, for
/// lines without a tab or with a repeated id, SchemaViolation.
SequenceLookup read_lookup(const std::string &path);

}  // namespace biocorpus
