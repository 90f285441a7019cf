//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <vector>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"

namespace biocorpus {
namespace {

const std::string *field_value(const PairRecord &record, const std::string &key) {
  for (const auto &[k, v] : record.fields)
    if (k == key)
      return v.empty() ? nullptr : &v;
  return nullptr;
}

void validate(const PairRecord &record) {
  if (record.sequence.empty())
    throw Error(ErrorCode::kEmptyRecord, "record '" + record.id + "' has an empty sequence");
  const auto &allowed = record_fields(record.kind);
  bool any = false;
  for (const auto &[k, v] : record.fields) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw Error(ErrorCode::kSchemaViolation, "record '" + record.id + "' has field '" + k
                                                   + "' not allowed for its kind");
    any = any || !v.empty();
  }
  if (!any)
    throw Error(ErrorCode::kEmptyRecord, "record '" + record.id + "' has no text fields");
}

void append_field(std::vector<std::string> &out, std::string_view marker, const std::string &value,
                  const Vocabulary &vocab) {
  out.emplace_back(marker);
  std::vector<std::string> words = tokenize_text(" " + value, vocab);
  out.insert(out.end(), words.begin(), words.end());
}

}  // namespace

const std::vector<std::string> &record_fields(RecordKind kind) {
  static const std::vector<std::string> molecule = { std::string(special::kDescription) };
  static const std::vector<std::string> protein = {
    std::string(special::kFunction),
    std::string(special::kSubcellularLocation),
    std::string(special::kProteinFamilies),
  };
  return kind == RecordKind::kMolecule ? molecule : protein;
}

std::vector<std::string> pair_text_tokens(const PairRecord &record, const Vocabulary &vocab) {
  std::vector<std::string> out;
  if (record.name && !record.name->empty())
    append_field(out, record.kind == RecordKind::kMolecule ? special::kMoleculeName : special::kProteinName,
                 *record.name, vocab);
  for (const std::string &key : record_fields(record.kind))
    if (const std::string *value = field_value(record, key))
      append_field(out, key, *value, vocab);
  return out;
}

std::vector<std::string> pair_sequence_tokens(const PairRecord &record, int max_length) {
  std::vector<std::string> body = record.kind == RecordKind::kMolecule ? tokenize_selfies_string(record.sequence)
                                                                        : tokenize_fasta(record.sequence);
  if (max_length > 0 && static_cast<int>(body.size()) + 2 > max_length)
    body.resize(static_cast<std::size_t>(std::max(max_length - 2, 0)));
  std::vector<std::string> out;
  out.reserve(body.size() + 2);
  out.emplace_back(special::kBom);
  out.insert(out.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
  out.emplace_back(special::kEom);
  return out;
}

TrainingExample build_translation_pair(const PairRecord &record, std::uint64_t seed, const Vocabulary &vocab,
                                       int max_length) {
  if (max_length < 2)
    throw Error(ErrorCode::kInvalidArgument, "max length must be at least 2");
  validate(record);
  TokenSequence sequence = encode_ids(pair_sequence_tokens(record, max_length), vocab);
  TokenSequence text = encode_ids(pair_text_tokens(record, vocab), vocab);
  if (static_cast<int>(text.size()) > max_length)
    text.resize(static_cast<std::size_t>(max_length));

  TrainingExample ex;
  ex.task = record.kind == RecordKind::kMolecule ? Task::kMolTextPair : Task::kProtTextPair;
  Rng rng(seed);
  if (rng.bernoulli(0.5)) {
    ex.input_ids = std::move(sequence);
    ex.target_ids = std::move(text);
  } else {
    ex.input_ids = std::move(text);
    ex.target_ids = std::move(sequence);
  }
  return ex;
}

bool is_sequence_to_text(const TrainingExample &example, const Vocabulary &vocab) {
  return !example.input_ids.empty() && example.input_ids.front() == vocab.bom_id();
}

}  // namespace biocorpus
