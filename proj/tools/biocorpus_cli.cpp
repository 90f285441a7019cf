//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every subcommand writes its data output plus a
// JSON run manifest (to --manifest, else <out>.manifest.json, else stderr).
// Exit codes: 0 ok, 1 data error, 2 usage error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/io.hpp"
#include "biocorpus/metrics.hpp"
#include "biocorpus/pipeline.hpp"
#include "biocorpus/prompting.hpp"
#include "biocorpus/records.hpp"
#include "biocorpus/rng.hpp"
#include "biocorpus/selfies.hpp"
#include "biocorpus/tokenizers.hpp"

namespace {

using namespace biocorpus;
using nlohmann::ordered_json;

constexpr const char *kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string seed_text;
  std::uint64_t seed = 0;
  int workers = 1;
  bool strict = false;
  std::string manifest;
};

// Collects everything a run reports about itself.
class Manifest {
 public:
  Manifest(std::string command, const Common &common, std::vector<std::string> argv) {
    j_["tool"] = "biocorpus";
    j_["version"] = kVersion;
    j_["command"] = std::move(command);
    j_["argv"] = std::move(argv);
    j_["seed"] = common.seed;
    j_["workers"] = common.workers;
    j_["strict"] = common.strict;
    j_["params"] = ordered_json::object();
    j_["inputs"] = ordered_json::array();
    j_["outputs"] = ordered_json::array();
    j_["counts"] = ordered_json::object();
  }

  ordered_json &params() { return j_["params"]; }
  ordered_json &counts() { return j_["counts"]; }
  ordered_json &root() { return j_; }

  void input(const std::string &role, const std::string &path) {
    ordered_json e{ { "role", role }, { "path", path } };
    if (path != "-")
      e["sha256"] = sha256_hex(read_text_file(path));
    j_["inputs"].push_back(e);
  }

  void output(const std::string &role, const std::string &path, std::size_t records) {
    ordered_json e{ { "role", role }, { "path", path }, { "records", records } };
    if (path != "-")
      e["sha256"] = sha256_hex(read_text_file(path));
    j_["outputs"].push_back(e);
  }

  void skips(const std::string &stage, std::size_t skipped, const std::string &first_error) {
    ordered_json e{ { "skipped", skipped } };
    if (skipped > 0)
      e["first_error"] = first_error;
    j_["skipped"][stage] = e;
  }

  void emit(const std::string &explicit_path, const std::string &out_path) const {
    std::string text = j_.dump(2) + "\n";
    if (!explicit_path.empty())
      write_text_file(explicit_path, text);
    else if (!out_path.empty() && out_path != "-")
      write_text_file(out_path + ".manifest.json", text);
    else
      std::cerr << text;
  }

 private:
  ordered_json j_;
};

// Per-record outcome of a lenient stage: an output line or an error.
struct Outcome {
  std::string line;
  std::optional<Error> error;
};

class SkipCounter {
 public:
  SkipCounter(bool strict) : strict_(strict) { }

  // Strict runs stop at the first failed record; lenient runs count it.
  void take(const Outcome &o, std::uint64_t index) {
    if (!o.error)
      return;
    std::string detail = o.error->what();
    detail.erase(0, o.error->name().size() + 2);
    std::string msg = "record " + std::to_string(index + 1) + ": " + detail;
    if (strict_)
      throw Error(o.error->code(), msg);
    if (skipped_ == 0)
      first_ = std::string(o.error->name()) + ": " + msg;
    ++skipped_;
  }

  std::size_t skipped() const { return skipped_; }
  const std::string &first() const { return first_; }

 private:
  bool strict_;
  std::size_t skipped_ = 0;
  std::string first_;
};

template <typename F>
Outcome guarded(F &&f) {
  try {
    return { f(), std::nullopt };
  } catch (const Error &e) {
    return { {}, e };
  }
}

std::uint64_t record_seed(std::uint64_t global, std::string_view stage, std::string_view id) {
  return derive_seed(global, stage, fnv1a64(id));
}

ReadMode read_mode(const Common &c) { return c.strict ? ReadMode::kStrict : ReadMode::kLenient; }

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed_text, "Global seed (falls back to BIOCORPUS_SEED, then 0)");
  cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--strict", c.strict, "Fail on the first malformed record instead of skipping it");
  cmd->add_option("--manifest", c.manifest, "Run manifest path");
}

void resolve_seed(Common &c) {
  std::string text = c.seed_text;
  if (text.empty())
    if (const char *env = std::getenv("BIOCORPUS_SEED"))
      text = env;
  if (text.empty())
    return;
  std::size_t used = 0;
  try {
    c.seed = std::stoull(text, &used, 10);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-')
    throw UsageError("seed must be a non-negative integer, got '" + text + "'");
}

bool looks_like_selfies(std::string_view s) {
  if (s.empty() || s.front() != '[')
    return false;
  try {
    parse_selfies(s);
    return true;
  } catch (const Error &) {
    return false;
  }
}

std::string trimmed(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && ws(static_cast<unsigned char>(s.back())))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(static_cast<unsigned char>(s[i])))
    ++i;
  return s.substr(i);
}

// Non-blank lines of a file, numbered from 0.
std::function<bool(std::string &)> line_source(LineReader &reader) {
  return [&reader](std::string &out) {
    std::string line;
    while (reader.next(line)) {
      line = trimmed(line);
      if (!line.empty()) {
        out = std::move(line);
        return true;
      }
    }
    return false;
  };
}

template <typename Record>
std::function<bool(Record &)> jsonl_source(JsonlReader<Record> &reader) {
  return [&reader](Record &r) { return reader.next(r); };
}

// ---------------------------------------------------------------------------
// selfies encode | decode
// ---------------------------------------------------------------------------

struct SelfiesArgs {
  Common common;
  std::string in = "-";
  std::string out = "-";
  std::vector<std::string> values;
};

void run_selfies(bool encode, SelfiesArgs &a, const std::vector<std::string> &argv) {
  Manifest m(encode ? "selfies encode" : "selfies decode", a.common, argv);
  auto convert = [encode](const std::string &s) -> std::string {
    if (encode)
      return smiles_to_selfies(s);
    return write_smiles(decode_selfies(s), true);
  };
  SkipCounter skips(a.common.strict);
  LineWriter writer(a.out);
  std::size_t total = 0;
  if (!a.values.empty()) {
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      Outcome o = guarded([&] { return convert(a.values[i]); });
      skips.take(o, i);
      if (!o.error)
        writer.write(o.line);
    }
    total = a.values.size();
  } else {
    m.input("molecules", a.in);
    LineReader reader(a.in);
    total = run_ordered<std::string, Outcome>(
        line_source(reader), [&](const std::string &s, std::uint64_t) { return guarded([&] { return convert(s); }); },
        [&, i = std::uint64_t{ 0 }](const Outcome &o) mutable {
          skips.take(o, i++);
          if (!o.error)
            writer.write(o.line);
        },
        a.common.workers);
  }
  writer.close();
  m.counts()["records"] = total;
  m.counts()["written"] = writer.count();
  m.skips("convert", skips.skipped(), skips.first());
  m.output(encode ? "selfies" : "smiles", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// build-vocab
// ---------------------------------------------------------------------------

struct VocabArgs {
  Common common;
  std::string text_vocab;
  int sentinels = 100;
  std::string out;
};

void run_build_vocab(VocabArgs &a, const std::vector<std::string> &argv) {
  Manifest m("build-vocab", a.common, argv);
  m.params()["sentinels"] = a.sentinels;
  m.input("text_vocab", a.text_vocab);
  Vocabulary vocab = Vocabulary::build_from_file(a.text_vocab, selfies_alphabet(), a.sentinels);
  vocab.save(a.out);
  m.root()["vocabulary"] = ordered_json::parse(vocab.manifest_json());
  m.output("vocabulary", a.out, static_cast<std::size_t>(vocab.size()));
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// tokenize
// ---------------------------------------------------------------------------

struct TokenizeArgs {
  Common common;
  std::string vocab;
  std::string kind = "molecules";
  std::string in = "-";
  std::string out = "-";
};

std::vector<std::string> delimited(std::vector<std::string> inner) {
  inner.insert(inner.begin(), std::string(special::kBom));
  inner.emplace_back(special::kEom);
  return inner;
}

void run_tokenize(TokenizeArgs &a, const std::vector<std::string> &argv) {
  Manifest m("tokenize", a.common, argv);
  m.params()["kind"] = a.kind;
  m.input("vocabulary", a.vocab);
  m.input("records", a.in);
  const Vocabulary vocab = Vocabulary::load(a.vocab);
  SkipCounter skips(a.common.strict);
  LineWriter writer(a.out);
  auto sink = [&, i = std::uint64_t{ 0 }](const Outcome &o) mutable {
    skips.take(o, i++);
    if (!o.error)
      writer.write(o.line);
  };
  std::size_t total = 0;
  ReadStats read_stats;

  if (a.kind == "molecules") {
    LineReader reader(a.in);
    total = run_ordered<std::string, Outcome>(
        line_source(reader),
        [&](const std::string &s, std::uint64_t index) {
          return guarded([&] {
            std::string selfies = looks_like_selfies(s) ? s : smiles_to_selfies(s);
            IdsRecord r{ std::to_string(index + 1), encode_ids(delimited(tokenize_selfies_string(selfies)), vocab),
                         Task::kMolT5 };
            return to_json_line(r);
          });
        },
        sink, a.common.workers);
  } else if (a.kind == "fasta") {
    FastaReader reader(a.in, read_mode(a.common));
    total = run_ordered<FastaRecord, Outcome>(
        [&](FastaRecord &r) { return reader.next(r); },
        [&](const FastaRecord &r, std::uint64_t) {
          return guarded([&] {
            std::string id = r.header.substr(0, r.header.find_first_of(" \t"));
            IdsRecord rec{ id, encode_ids(delimited(tokenize_fasta(r.sequence)), vocab), Task::kProtT5 };
            return to_json_line(rec);
          });
        },
        sink, a.common.workers);
    read_stats = reader.stats();
  } else if (a.kind == "text" || a.kind == "wrapped") {
    const bool wrapped = a.kind == "wrapped";
    JsonlReader<Document> reader(a.in, read_mode(a.common));
    total = run_ordered<Document, Outcome>(
        jsonl_source(reader),
        [&](const Document &d, std::uint64_t) {
          return guarded([&] {
            std::vector<std::string> tokens = wrapped ? tokenize_mixed(d.text, vocab) : tokenize_text(d.text, vocab);
            IdsRecord rec{ d.id, encode_ids(tokens, vocab), wrapped ? Task::kWrappedT5 : Task::kTextT5 };
            return to_json_line(rec);
          });
        },
        sink, a.common.workers);
    read_stats = reader.stats();
  } else {
    throw UsageError("--kind must be molecules, fasta, text or wrapped");
  }
  writer.close();
  m.counts()["records"] = total;
  m.counts()["written"] = writer.count();
  m.skips("read", read_stats.skipped, read_stats.first_error);
  m.skips("tokenize", skips.skipped(), skips.first());
  m.output("ids", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// wrap
// ---------------------------------------------------------------------------

struct WrapArgs {
  Common common;
  std::string docs;
  std::string annotations;
  std::string molecules;
  std::string proteins;
  std::string out = "-";
  std::string plain_out;
};

struct WrapOutcome {
  std::vector<std::string> wrapped;
  std::vector<std::string> plain;
  WrapStats stats;
  std::optional<Error> error;
};

void run_wrap(WrapArgs &a, const std::vector<std::string> &argv) {
  Manifest m("wrap", a.common, argv);
  m.input("documents", a.docs);
  m.input("annotations", a.annotations);
  m.input("molecule_lookup", a.molecules);
  m.input("protein_lookup", a.proteins);
  const SequenceLookup mols = read_lookup(a.molecules);
  const SequenceLookup prots = read_lookup(a.proteins);

  std::map<std::string, std::vector<EntityAnnotation>> by_doc;
  JsonlReader<AnnotationRecord> ann_reader(a.annotations, read_mode(a.common));
  AnnotationRecord ann;
  while (ann_reader.next(ann))
    by_doc[ann.doc_id].push_back(ann.annotation);
  m.skips("annotations", ann_reader.stats().skipped, ann_reader.stats().first_error);

  static const std::vector<EntityAnnotation> kNone;
  JsonlReader<Document> reader(a.docs, read_mode(a.common));
  LineWriter wrapped_out(a.out);
  std::unique_ptr<LineWriter> plain_out;
  if (!a.plain_out.empty())
    plain_out = std::make_unique<LineWriter>(a.plain_out);
  SkipCounter skips(a.common.strict);
  WrapStats totals;
  std::uint64_t index = 0;

  auto sentence_line = [](const std::string &doc_id, std::size_t k, const std::string &text) {
    return to_json_line(Document{ doc_id + "#" + std::to_string(k), text });
  };
  std::size_t docs = run_ordered<Document, WrapOutcome>(
      jsonl_source(reader),
      [&](const Document &d, std::uint64_t) {
        WrapOutcome o;
        try {
          auto it = by_doc.find(d.id);
          WrapResult r = wrap_document(d.text, it == by_doc.end() ? kNone : it->second, mols, prots,
                                       record_seed(a.common.seed, "wrap", d.id));
          for (std::size_t k = 0; k < r.wrapped.size(); ++k)
            o.wrapped.push_back(sentence_line(d.id, k, r.wrapped[k]));
          for (std::size_t k = 0; k < r.plain.size(); ++k)
            o.plain.push_back(sentence_line(d.id, k, r.plain[k]));
          o.stats = r.stats;
        } catch (const Error &e) {
          o.error = e;
        }
        return o;
      },
      [&](const WrapOutcome &o) {
        skips.take({ {}, o.error }, index++);
        if (o.error)
          return;
        for (const std::string &line : o.wrapped)
          wrapped_out.write(line);
        if (plain_out)
          for (const std::string &line : o.plain)
            plain_out->write(line);
        totals.sentences += o.stats.sentences;
        totals.molecules_replaced += o.stats.molecules_replaced;
        totals.genes_appended += o.stats.genes_appended;
        totals.unresolved_mentions += o.stats.unresolved_mentions;
      },
      a.common.workers);
  wrapped_out.close();
  if (plain_out)
    plain_out->close();

  m.counts()["documents"] = docs;
  m.counts()["sentences"] = totals.sentences;
  m.counts()["wrapped_sentences"] = wrapped_out.count();
  m.counts()["molecules_replaced"] = totals.molecules_replaced;
  m.counts()["genes_appended"] = totals.genes_appended;
  m.counts()["unresolved_mentions"] = totals.unresolved_mentions;
  m.skips("documents_read", reader.stats().skipped, reader.stats().first_error);
  m.skips("wrap", skips.skipped(), skips.first());
  m.output("wrapped", a.out, wrapped_out.count());
  if (plain_out)
    m.output("plain", a.plain_out, plain_out->count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// corrupt
// ---------------------------------------------------------------------------

struct CorruptArgs {
  Common common;
  std::string vocab;
  std::string in = "-";
  std::string out = "-";
  CorruptionParams params;
};

void run_corrupt(CorruptArgs &a, const std::vector<std::string> &argv) {
  Manifest m("corrupt", a.common, argv);
  m.params()["noise_density"] = a.params.noise_density;
  m.params()["mean_span_length"] = a.params.mean_span_length;
  m.params()["max_input_length"] = a.params.max_input_length;
  m.params()["protect_delimiters"] = a.params.protect_delimiters;
  m.input("vocabulary", a.vocab);
  m.input("ids", a.in);
  const Vocabulary vocab = Vocabulary::load(a.vocab);
  // Reject bad parameters before reading any data.
  span_corrupt({ vocab.pad_id() }, a.params, 0, vocab, Task::kMolT5);

  JsonlReader<IdsRecord> reader(a.in, read_mode(a.common));
  LineWriter writer(a.out);
  SkipCounter skips(a.common.strict);
  std::size_t masked = 0;
  std::size_t tokens = 0;
  std::size_t total = run_ordered<IdsRecord, std::pair<Outcome, std::pair<std::size_t, std::size_t>>>(
      jsonl_source(reader),
      [&](const IdsRecord &r, std::uint64_t) {
        std::pair<std::size_t, std::size_t> stat{ 0, 0 };
        Outcome o = guarded([&] {
          std::uint64_t seed = record_seed(a.common.seed, "corrupt", r.id);
          TrainingExample ex = span_corrupt(r.ids, a.params, seed, vocab, r.task);
          SpanPlan plan = plan_spans(std::min<int>(static_cast<int>(r.ids.size()), a.params.max_input_length),
                                     a.params, seed);
          stat.second = static_cast<std::size_t>(plan.length);
          for (const auto &[b, e] : plan.spans)
            stat.first += static_cast<std::size_t>(e - b);
          return to_json_line(ex);
        });
        return std::optional(std::make_pair(std::move(o), stat));
      },
      [&, i = std::uint64_t{ 0 }](const std::pair<Outcome, std::pair<std::size_t, std::size_t>> &res) mutable {
        skips.take(res.first, i++);
        if (res.first.error)
          return;
        writer.write(res.first.line);
        masked += res.second.first;
        tokens += res.second.second;
      },
      a.common.workers);
  writer.close();
  m.counts()["records"] = total;
  m.counts()["examples"] = writer.count();
  m.counts()["tokens"] = tokens;
  m.counts()["planned_noise_tokens"] = masked;
  m.skips("read", reader.stats().skipped, reader.stats().first_error);
  m.skips("corrupt", skips.skipped(), skips.first());
  m.output("examples", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// pairs
// ---------------------------------------------------------------------------

struct PairsArgs {
  Common common;
  std::string vocab;
  std::string in = "-";
  std::string out = "-";
  std::string exclude;
  std::string kind = "all";
  int max_length = 512;
};

void run_pairs(PairsArgs &a, const std::vector<std::string> &argv) {
  Manifest m("pairs", a.common, argv);
  m.params()["max_length"] = a.max_length;
  m.params()["kind"] = a.kind;
  m.input("vocabulary", a.vocab);
  m.input("records", a.in);
  std::set<std::string> excluded;
  if (!a.exclude.empty()) {
    m.input("exclude", a.exclude);
    LineReader reader(a.exclude);
    std::string line;
    while (reader.next(line))
      if (!(line = trimmed(line)).empty())
        excluded.insert(line);
  }
  const Vocabulary vocab = Vocabulary::load(a.vocab);
  JsonlReader<PairRecord> reader(a.in, read_mode(a.common));
  LineWriter writer(a.out);
  SkipCounter skips(a.common.strict);
  std::atomic<std::size_t> excluded_count{ 0 };
  std::atomic<std::size_t> other_kind{ 0 };
  std::size_t seq_to_text = 0;
  std::size_t total = run_ordered<PairRecord, std::pair<Outcome, bool>>(
      jsonl_source(reader),
      [&](const PairRecord &r, std::uint64_t) -> std::optional<std::pair<Outcome, bool>> {
        if (excluded.count(r.id)) {
          ++excluded_count;
          return std::nullopt;
        }
        if ((a.kind == "molecule" && r.kind != RecordKind::kMolecule)
            || (a.kind == "protein" && r.kind != RecordKind::kProtein)) {
          ++other_kind;
          return std::nullopt;
        }
        bool forward = false;
        Outcome o = guarded([&] {
          TrainingExample ex = build_translation_pair(r, record_seed(a.common.seed, "pairs", r.id), vocab,
                                                      a.max_length);
          forward = is_sequence_to_text(ex, vocab);
          return to_json_line(ex);
        });
        return std::make_pair(std::move(o), forward);
      },
      [&, i = std::uint64_t{ 0 }](const std::pair<Outcome, bool> &res) mutable {
        skips.take(res.first, i++);
        if (res.first.error)
          return;
        writer.write(res.first.line);
        seq_to_text += res.second ? 1 : 0;
      },
      a.common.workers);
  writer.close();
  m.counts()["records"] = total;
  m.counts()["excluded"] = excluded_count.load();
  m.counts()["other_kind"] = other_kind.load();
  m.counts()["examples"] = writer.count();
  m.counts()["sequence_to_text"] = seq_to_text;
  m.counts()["text_to_sequence"] = writer.count() - seq_to_text;
  m.skips("read", reader.stats().skipped, reader.stats().first_error);
  m.skips("pairs", skips.skipped(), skips.first());
  m.output("examples", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// mix
// ---------------------------------------------------------------------------

struct MixArgs {
  Common common;
  std::array<std::string, kTaskCount> streams;
  std::vector<double> weights;
  int batch_size = 96;
  std::size_t batches = 1;
  std::string out = "-";
};

void run_mix(MixArgs &a, const std::vector<std::string> &argv) {
  Manifest m("mix", a.common, argv);
  MixerConfig config;
  config.batch_size = a.batch_size;
  config.seed = a.common.seed;
  if (!a.weights.empty()) {
    if (a.weights.size() != kTaskCount)
      throw UsageError("--weights takes exactly 6 values");
    std::copy(a.weights.begin(), a.weights.end(), config.weights.begin());
  }
  m.params()["batch_size"] = config.batch_size;
  m.params()["batches"] = a.batches;
  m.params()["weights"] = config.weights;

  std::array<std::unique_ptr<ExampleStream>, kTaskCount> streams;
  for (std::size_t t = 0; t < kTaskCount; ++t) {
    const std::string name(task_name(all_tasks()[t]));
    const std::string &path = a.streams[t];
    if (!std::filesystem::is_regular_file(path))
      throw Error(ErrorCode::kIoFailure, "stream " + name + ": cannot open '" + path + "'");
    m.input(name, path);
    streams[t] = std::make_unique<JsonlExampleStream>(path);
  }
  TaskMixer mixer(std::move(streams), config);
  m.params()["quotas"] = mixer.quotas();

  LineWriter writer(a.out);
  std::array<std::size_t, kTaskCount> per_task{};
  for (std::size_t b = 0; b < a.batches; ++b) {
    for (const TrainingExample &ex : mixer.next_batch()) {
      ordered_json j;
      j["batch"] = b;
      j["input_ids"] = ex.input_ids;
      j["target_ids"] = ex.target_ids;
      j["task"] = task_name(ex.task);
      writer.write(j.dump());
      ++per_task[static_cast<std::size_t>(ex.task)];
    }
  }
  writer.close();
  for (std::size_t t = 0; t < kTaskCount; ++t) {
    const std::string name(task_name(all_tasks()[t]));
    m.counts()["examples"][name] = per_task[t];
    m.counts()["wraps"][name] = mixer.wraps()[t];
  }
  m.counts()["batches"] = mixer.batches_emitted();
  m.output("batches", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// format-prompt
// ---------------------------------------------------------------------------

struct PromptArgs {
  Common common;
  std::string task;
  std::string selfies_file;
  std::string in;
  std::vector<std::string> fills;
  std::string separator = " ";
  std::string out = "-";
  bool list = false;
};

Fillers parse_fills(const std::vector<std::string> &fills) {
  Fillers out;
  for (const std::string &f : fills) {
    std::size_t eq = f.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--fill expects NAME=VALUE, got '" + f + "'");
    out[f.substr(0, eq)] = f.substr(eq + 1);
  }
  return out;
}

// A JSONL line: string members are fillers; "label" (bool) and "answer"
// (string) set the expected output.
std::string prompt_from_json(const std::string &task, const std::string &line, Fillers fillers,
                             const std::string &separator) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::kSchemaViolation, "line is not a JSON object");
  std::optional<bool> label;
  std::optional<std::string> answer;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "label") {
      if (!it->is_boolean() && !it->is_number_integer())
        throw Error(ErrorCode::kSchemaViolation, "field 'label' must be a boolean or 0/1");
      label = it->is_boolean() ? it->get<bool>() : it->get<int>() != 0;
    } else if (it.key() == "answer") {
      if (!it->is_string())
        throw Error(ErrorCode::kSchemaViolation, "field 'answer' must be a string");
      answer = it->get<std::string>();
    } else if (it->is_string()) {
      fillers[it.key()] = it->get<std::string>();
    } else {
      throw Error(ErrorCode::kSchemaViolation, "field '" + it.key() + "' must be a string");
    }
  }
  RenderedPrompt r = render_prompt(task, fillers, label, answer, separator);
  ordered_json out;
  out["task"] = task;
  out["input"] = r.input;
  if (r.output)
    out["output"] = *r.output;
  return out.dump();
}

void run_format_prompt(PromptArgs &a, const std::vector<std::string> &argv) {
  if (a.list) {
    for (const PromptTemplate &t : prompt_templates())
      std::cout << t.task_id << "\n";
    return;
  }
  if (a.task.empty())
    throw UsageError("--task is required");
  if (a.selfies_file.empty() == a.in.empty())
    throw UsageError("give exactly one of --selfies-file and --in");
  Manifest m("format-prompt", a.common, argv);
  prompt_template(a.task);  // UnknownTask before any output
  m.params()["task"] = a.task;
  m.params()["separator"] = a.separator;
  const Fillers fixed = parse_fills(a.fills);
  m.params()["fills"] = fixed;

  const std::string &input = a.in.empty() ? a.selfies_file : a.in;
  m.input(a.in.empty() ? "selfies" : "fillers", input);
  LineReader reader(input);
  LineWriter writer(a.out);
  SkipCounter skips(a.common.strict);
  const bool from_selfies = a.in.empty();
  std::size_t total = run_ordered<std::string, Outcome>(
      line_source(reader),
      [&](const std::string &line, std::uint64_t) {
        return guarded([&] {
          if (!from_selfies)
            return prompt_from_json(a.task, line, fixed, a.separator);
          Fillers f = fixed;
          f["SELFIES"] = line;
          RenderedPrompt r = render_prompt(a.task, f, std::nullopt, std::nullopt, a.separator);
          ordered_json out;
          out["task"] = a.task;
          out["input"] = r.input;
          return out.dump();
        });
      },
      [&, i = std::uint64_t{ 0 }](const Outcome &o) mutable {
        skips.take(o, i++);
        if (!o.error)
          writer.write(o.line);
      },
      a.common.workers);
  writer.close();
  m.counts()["records"] = total;
  m.counts()["prompts"] = writer.count();
  m.skips("render", skips.skipped(), skips.first());
  m.output("prompts", a.out, writer.count());
  m.emit(a.common.manifest, a.out);
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
  Common common;
  std::string in = "-";
  std::string out = "-";
  std::string kind = "molecule";
  std::string format = "auto";
  std::string unit = "char";
  int radius = 2;
  int width = 2048;
};

void run_eval(EvalArgs &a, const std::vector<std::string> &argv) {
  Manifest m("eval", a.common, argv);
  EvalOptions opt;
  opt.workers = a.common.workers;
  opt.morgan_radius = a.radius;
  opt.morgan_width = a.width;
  EvalKind kind = a.kind == "text" ? EvalKind::kText : EvalKind::kMolecule;
  if (a.kind != "text" && a.kind != "molecule")
    throw UsageError("--kind must be molecule or text");
  if (a.format == "smiles")
    opt.format = MoleculeFormat::kSmiles;
  else if (a.format == "selfies")
    opt.format = MoleculeFormat::kSelfies;
  else if (a.format != "auto")
    throw UsageError("--format must be auto, smiles or selfies");
  if (a.unit == "token")
    opt.distance_unit = DistanceUnit::kToken;
  else if (a.unit != "char")
    throw UsageError("--distance-unit must be char or token");
  m.params()["kind"] = a.kind;
  m.params()["format"] = a.format;
  m.params()["distance_unit"] = a.unit;
  m.input("pairs", a.in);

  std::vector<std::pair<std::string, std::string>> pairs;
  LineReader reader(a.in);
  std::string line;
  std::size_t skipped = 0;
  std::string first_error;
  while (reader.next(line)) {
    if (trimmed(line).empty())
      continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      std::string msg = a.in + ":" + std::to_string(reader.line_number()) + ": expected pred<TAB>gold";
      if (a.common.strict)
        throw Error(ErrorCode::kSchemaViolation, msg);
      if (skipped++ == 0)
        first_error = msg;
      continue;
    }
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  MetricReport report = evaluate(pairs, kind, opt);
  write_text_file(a.out, report_json(report) + "\n");
  m.counts()["pairs"] = pairs.size();
  m.skips("read", skipped, first_error);
  m.output("report", a.out, 1);
  m.emit(a.common.manifest, a.out);
}

}  // namespace

int main(int argc, char **argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{ "biocorpus: corpus preparation for molecule, protein and text models" };
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SelfiesArgs sel;
  auto *selfies = app.add_subcommand("selfies", "Convert between SMILES and SELFIES");
  selfies->require_subcommand(1);
  bool encode = false;
  for (const char *name : { "encode", "decode" }) {
    auto *sub = selfies->add_subcommand(name, std::string(name) == "encode" ? "SMILES to SELFIES"
                                                                           : "SELFIES to canonical SMILES");
    add_common(sub, sel.common);
    // Positional strings are taken as extras: a declared vector option would
    // read "[C][C]" as CLI11's own [a,b] list syntax.
    sub->allow_extras();
    sub->add_option("--in", sel.in, "One string per line ('-' for stdin)");
    sub->add_option("--out", sel.out, "Output ('-' for stdout)");
    if (std::string(name) == "encode")
      sub->callback([&] { encode = true; });
  }

  VocabArgs voc;
  auto *build_vocab = app.add_subcommand("build-vocab", "Build the joint vocabulary TSV");
  add_common(build_vocab, voc.common);
  build_vocab->add_option("--text-vocab", voc.text_vocab, "Subword list, one token per line")->required();
  build_vocab->add_option("--sentinels", voc.sentinels, "Number of <Mk> sentinel tokens")->check(CLI::PositiveNumber);
  build_vocab->add_option("--out", voc.out, "Vocabulary TSV")->required();

  TokenizeArgs tok;
  auto *tokenize = app.add_subcommand("tokenize", "Turn raw records into token ID records");
  add_common(tokenize, tok.common);
  tokenize->add_option("--vocab", tok.vocab, "Vocabulary TSV")->required();
  tokenize->add_option("--kind", tok.kind, "molecules | fasta | text | wrapped")
      ->check(CLI::IsMember({ "molecules", "fasta", "text", "wrapped" }));
  tokenize->add_option("--in", tok.in, "Input ('-' for stdin)");
  tokenize->add_option("--out", tok.out, "Output JSONL ('-' for stdout)");

  WrapArgs wr;
  auto *wrap = app.add_subcommand("wrap", "Insert molecule and protein sequences into annotated text");
  add_common(wrap, wr.common);
  wrap->add_option("--docs", wr.docs, "Document JSONL")->required();
  wrap->add_option("--annotations", wr.annotations, "Annotation JSONL")->required();
  wrap->add_option("--molecules", wr.molecules, "entity_id<TAB>SELFIES")->required();
  wrap->add_option("--proteins", wr.proteins, "entity_id<TAB>FASTA")->required();
  wrap->add_option("--out", wr.out, "Wrapped sentences JSONL");
  wrap->add_option("--plain-out", wr.plain_out, "Sentences without substitutions");

  CorruptArgs cor;
  auto *corrupt = app.add_subcommand("corrupt", "Span-corrupt token ID records");
  add_common(corrupt, cor.common);
  corrupt->add_option("--vocab", cor.vocab, "Vocabulary TSV")->required();
  corrupt->add_option("--in", cor.in, "Token ID JSONL");
  corrupt->add_option("--out", cor.out, "Training example JSONL");
  corrupt->add_option("--noise-density", cor.params.noise_density);
  corrupt->add_option("--mean-span-length", cor.params.mean_span_length);
  corrupt->add_option("--max-length", cor.params.max_input_length);
  corrupt->add_flag("--protect-delimiters", cor.params.protect_delimiters, "Never mask <bom>/<eom>");

  PairsArgs pr;
  auto *pairs = app.add_subcommand("pairs", "Build bidirectional translation examples");
  add_common(pairs, pr.common);
  pairs->add_option("--vocab", pr.vocab, "Vocabulary TSV")->required();
  pairs->add_option("--in", pr.in, "Pair record JSONL");
  pairs->add_option("--out", pr.out, "Training example JSONL");
  pairs->add_option("--max-length", pr.max_length);
  pairs->add_option("--exclude", pr.exclude, "Record ids to leave out, one per line");
  pairs->add_option("--kind", pr.kind, "molecule | protein | all")
      ->check(CLI::IsMember({ "molecule", "protein", "all" }));

  MixArgs mx;
  auto *mix = app.add_subcommand("mix", "Interleave the six task streams into fixed-size batches");
  add_common(mix, mx.common);
  for (std::size_t t = 0; t < kTaskCount; ++t) {
    std::string flag(task_name(all_tasks()[t]));
    std::replace(flag.begin(), flag.end(), '_', '-');
    mix->add_option("--" + flag, mx.streams[t], "Training example JSONL")->required();
  }
  mix->add_option("--weights", mx.weights, "Six task weights")->delimiter(',');
  mix->add_option("--batch-size", mx.batch_size);
  mix->add_option("--batches", mx.batches, "Number of batches to emit");
  mix->add_option("--out", mx.out, "Batched example JSONL");

  PromptArgs pa;
  auto *prompt = app.add_subcommand("format-prompt", "Render downstream task prompts");
  add_common(prompt, pa.common);
  prompt->add_option("--task", pa.task, "Task id (see --list)");
  prompt->add_option("--selfies-file", pa.selfies_file, "One SELFIES per line");
  prompt->add_option("--in", pa.in, "JSONL of fillers with optional label/answer");
  prompt->add_option("--fill", pa.fills, "NAME=VALUE filler applied to every prompt")->allow_extra_args(false);
  prompt->add_option("--separator", pa.separator, "Text between definition and instruction");
  prompt->add_option("--out", pa.out, "Prompt JSONL");
  prompt->add_flag("--list", pa.list, "Print the task ids");

  EvalArgs ev;
  auto *eval = app.add_subcommand("eval", "Score predictions against references");
  add_common(eval, ev.common);
  eval->add_option("--in", ev.in, "pred<TAB>gold lines");
  eval->add_option("--out", ev.out, "Report JSON");
  eval->add_option("--kind", ev.kind, "molecule | text");
  eval->add_option("--format", ev.format, "auto | smiles | selfies");
  eval->add_option("--distance-unit", ev.unit, "char | token");
  eval->add_option("--radius", ev.radius);
  eval->add_option("--width", ev.width);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  }

  try {
    auto run = [&](Common &c, auto &&fn) {
      resolve_seed(c);
      fn();
    };
    if (selfies->parsed()) {
      for (CLI::App *sub : selfies->get_subcommands())
        for (const std::string &v : sub->remaining()) {
          if (v.rfind("--", 0) == 0)
            throw UsageError("unknown option " + v);
          sel.values.push_back(v);
        }
    }
    if (selfies->parsed())
      run(sel.common, [&] { run_selfies(encode, sel, args); });
    else if (build_vocab->parsed())
      run(voc.common, [&] { run_build_vocab(voc, args); });
    else if (tokenize->parsed())
      run(tok.common, [&] { run_tokenize(tok, args); });
    else if (wrap->parsed())
      run(wr.common, [&] { run_wrap(wr, args); });
    else if (corrupt->parsed())
      run(cor.common, [&] { run_corrupt(cor, args); });
    else if (pairs->parsed())
      run(pr.common, [&] { run_pairs(pr, args); });
    else if (mix->parsed())
      run(mx.common, [&] { run_mix(mx, args); });
    else if (prompt->parsed())
      run(pa.common, [&] { run_format_prompt(pa, args); });
    else if (eval->parsed())
      run(ev.common, [&] { run_eval(ev, args); });
  } catch (const UsageError &e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << msg << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
