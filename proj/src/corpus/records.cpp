//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "biocorpus/records.hpp"

#include <cctype>
#include <iostream>

#include <json.hpp>

#include "biocorpus/error.hpp"

namespace biocorpus {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_object(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::kSchemaViolation, "line is not valid JSON");
  if (!j.is_object())
    throw Error(ErrorCode::kSchemaViolation, "line is not a JSON object");
  return j;
}

const json &field(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(ErrorCode::kSchemaViolation, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_string())
    throw Error(ErrorCode::kSchemaViolation, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// Ids may be given as strings or integers.
std::string id_field(const json &j, const char *key) {
  const json &v = field(j, key);
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_integer())
    return v.dump();
  throw Error(ErrorCode::kSchemaViolation, std::string("field '") + key + "' must be a string or integer");
}

std::size_t offset_field(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorCode::kSchemaViolation, std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

TokenSequence ids_field(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_array())
    throw Error(ErrorCode::kSchemaViolation, std::string("field '") + key + "' must be an array");
  TokenSequence out;
  out.reserve(v.size());
  for (const json &x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > INT32_MAX)
      throw Error(ErrorCode::kSchemaViolation, std::string("field '") + key + "' holds a non-id value");
    out.push_back(x.get<int>());
  }
  return out;
}

Task task_field(const json &j) {
  std::string name = string_field(j, "task");
  auto t = parse_task(name);
  if (!t)
    throw Error(ErrorCode::kSchemaViolation, "unknown task '" + name + "'");
  return *t;
}

}  // namespace

Document parse_document(std::string_view line) {
  json j = parse_object(line);
  return { id_field(j, "id"), string_field(j, "text") };
}

AnnotationRecord parse_annotation(std::string_view line) {
  json j = parse_object(line);
  AnnotationRecord r;
  r.doc_id = id_field(j, "doc_id");
  r.annotation.start = offset_field(j, "start");
  r.annotation.end = offset_field(j, "end");
  r.annotation.surface = string_field(j, "surface");
  std::string kind = string_field(j, "kind");
  if (kind == "molecule")
    r.annotation.kind = EntityKind::kMolecule;
  else if (kind == "gene" || kind == "protein")
    r.annotation.kind = EntityKind::kGene;
  else
    throw Error(ErrorCode::kSchemaViolation, "unknown entity kind '" + kind + "'");
  r.annotation.entity_id = id_field(j, "entity_id");
  return r;
}

PairRecord parse_pair_record(std::string_view line) {
  json j = parse_object(line);
  PairRecord r;
  r.id = id_field(j, "id");
  std::string kind = string_field(j, "kind");
  if (kind == "molecule")
    r.kind = RecordKind::kMolecule;
  else if (kind == "protein")
    r.kind = RecordKind::kProtein;
  else
    throw Error(ErrorCode::kSchemaViolation, "unknown record kind '" + kind + "'");
  r.sequence = string_field(j, "sequence");
  if (auto it = j.find("name"); it != j.end() && !it->is_null()) {
    if (!it->is_string())
      throw Error(ErrorCode::kSchemaViolation, "field 'name' must be a string");
    r.name = it->get<std::string>();
  }
  if (auto it = j.find("fields"); it != j.end() && !it->is_null()) {
    if (!it->is_object())
      throw Error(ErrorCode::kSchemaViolation, "field 'fields' must be an object");
    const auto &allowed = record_fields(r.kind);
    // Stored in the kind's emission order so equality does not depend on
    // the key order in the file.
    for (const std::string &key : allowed) {
      auto f = it->find(key);
      if (f == it->end() || f->is_null())
        continue;
      if (!f->is_string())
        throw Error(ErrorCode::kSchemaViolation, "field '" + key + "' must be a string");
      r.fields.emplace_back(key, f->get<std::string>());
    }
    for (auto f = it->begin(); f != it->end(); ++f)
      if (std::find(allowed.begin(), allowed.end(), f.key()) == allowed.end())
        throw Error(ErrorCode::kSchemaViolation, "field '" + f.key() + "' not allowed for a " + kind + " record");
  }
  return r;
}

IdsRecord parse_ids_record(std::string_view line) {
  json j = parse_object(line);
  return { id_field(j, "id"), ids_field(j, "ids"), task_field(j) };
}

TrainingExample parse_example(std::string_view line) {
  json j = parse_object(line);
  return { ids_field(j, "input_ids"), ids_field(j, "target_ids"), task_field(j) };
}

std::string to_json_line(const Document &doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  return j.dump();
}

std::string to_json_line(const AnnotationRecord &record) {
  ordered_json j;
  j["doc_id"] = record.doc_id;
  j["start"] = record.annotation.start;
  j["end"] = record.annotation.end;
  j["surface"] = record.annotation.surface;
  j["kind"] = entity_kind_name(record.annotation.kind);
  j["entity_id"] = record.annotation.entity_id;
  return j.dump();
}

std::string to_json_line(const PairRecord &record) {
  ordered_json j;
  j["id"] = record.id;
  j["kind"] = record.kind == RecordKind::kMolecule ? "molecule" : "protein";
  j["sequence"] = record.sequence;
  if (record.name)
    j["name"] = *record.name;
  ordered_json fields = ordered_json::object();
  for (const auto &[k, v] : record.fields)
    fields[k] = v;
  j["fields"] = fields;
  return j.dump();
}

std::string to_json_line(const IdsRecord &record) {
  ordered_json j;
  j["id"] = record.id;
  j["ids"] = record.ids;
  j["task"] = task_name(record.task);
  return j.dump();
}

std::string to_json_line(const TrainingExample &example) {
  ordered_json j;
  j["input_ids"] = example.input_ids;
  j["target_ids"] = example.target_ids;
  j["task"] = task_name(example.task);
  return j.dump();
}

namespace {

template <typename Record>
Record parse_line(std::string_view line);

template <>
Document parse_line<Document>(std::string_view line) { return parse_document(line); }
template <>
AnnotationRecord parse_line<AnnotationRecord>(std::string_view line) { return parse_annotation(line); }
template <>
PairRecord parse_line<PairRecord>(std::string_view line) { return parse_pair_record(line); }
template <>
IdsRecord parse_line<IdsRecord>(std::string_view line) { return parse_ids_record(line); }
template <>
TrainingExample parse_line<TrainingExample>(std::string_view line) { return parse_example(line); }

bool is_blank(const std::string &line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

void skip_or_throw(ReadMode mode, ReadStats &stats, const std::string &where, const Error &e) {
  std::string message = where + ": " + e.what();
  if (mode == ReadMode::kStrict)
    throw Error(ErrorCode::kSchemaViolation, message);
  if (stats.skipped == 0)
    stats.first_error = message;
  ++stats.skipped;
}

}  // namespace

template <typename Record>
JsonlReader<Record>::JsonlReader(const std::string &path, ReadMode mode) : lines_(path), mode_(mode) { }

template <typename Record>
bool JsonlReader<Record>::next(Record &out) {
  std::string line;
  while (lines_.next(line)) {
    if (is_blank(line))
      continue;
    ++stats_.lines;
    try {
      out = parse_line<Record>(line);
      ++stats_.records;
      return true;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kSchemaViolation)
        throw;
      skip_or_throw(mode_, stats_, lines_.path() + ":" + std::to_string(lines_.line_number()), e);
    }
  }
  return false;
}

template class JsonlReader<Document>;
template class JsonlReader<AnnotationRecord>;
template class JsonlReader<PairRecord>;
template class JsonlReader<IdsRecord>;
template class JsonlReader<TrainingExample>;

FastaReader::FastaReader(const std::string &path, ReadMode mode) : lines_(path), mode_(mode) { }

bool FastaReader::next(FastaRecord &out) {
  std::string line;
  while (!pending_header_) {
    if (!lines_.next(line))
      return false;
    if (is_blank(line))
      continue;
    if (line[0] == '>') {
      pending_header_ = line.substr(1);
      break;
    }
    ++stats_.lines;
    skip_or_throw(mode_, stats_, lines_.path() + ":" + std::to_string(lines_.line_number()),
                  Error(ErrorCode::kSchemaViolation, "sequence line before any '>' header"));
  }
  out.header = std::move(*pending_header_);
  out.sequence.clear();
  pending_header_.reset();
  ++stats_.lines;
  while (lines_.next(line)) {
    if (!line.empty() && line[0] == '>') {
      pending_header_ = line.substr(1);
      break;
    }
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)))
        out.sequence += c;
  }
  ++stats_.records;
  return true;
}

LineWriter::LineWriter(const std::string &path) : path_(path) {
  if (path == "-") {
    out_ = &std::cout;
    return;
  }
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file_)
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "' for writing");
  out_ = file_.get();
}

LineWriter::~LineWriter() {
  if (out_)
    out_->flush();
}

void LineWriter::write(std::string_view line) {
  out_->write(line.data(), static_cast<std::streamsize>(line.size()));
  out_->put('\n');
  ++count_;
}

void LineWriter::close() {
  out_->flush();
  if (!*out_)
    throw Error(ErrorCode::kIoFailure, "write to '" + path_ + "' failed");
  if (file_)
    file_->close();
}

JsonlExampleStream::JsonlExampleStream(std::string path) : path_(std::move(path)) { reset(); }

std::optional<TrainingExample> JsonlExampleStream::next() {
  TrainingExample ex;
  if (!reader_->next(ex))
    return std::nullopt;
  return ex;
}

void JsonlExampleStream::reset() {
  reader_ = std::make_unique<JsonlReader<TrainingExample>>(path_, ReadMode::kStrict);
}

SequenceLookup read_lookup(const std::string &path) {
  SequenceLookup table;
  LineReader reader(path);
  std::string line;
  while (reader.next(line)) {
    if (is_blank(line))
      continue;
    std::size_t tab = line.find('\t');
    std::string where = path + ":" + std::to_string(reader.line_number());
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw Error(ErrorCode::kSchemaViolation, where + ": expected id<TAB>sequence");
    if (!table.emplace(line.substr(0, tab), line.substr(tab + 1)).second)
      throw Error(ErrorCode::kSchemaViolation, where + ": repeated id '" + line.substr(0, tab) + "'");
  }
  return table;
}

}  // namespace biocorpus
