//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/metrics.hpp"
#include "biocorpus/prompting.hpp"
#include "biocorpus/rng.hpp"
#include "biocorpus/selfies.hpp"
#include "biocorpus/tokenizers.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace biocorpus {
namespace {

constexpr double kFuzzSeconds = 10.0;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kMaskDensity = 0.15;
constexpr double kMaskRelativeTolerance = 0.10;
constexpr double kDirectionLow = 0.48;
constexpr double kDirectionHigh = 0.52;
constexpr double kNormalizeTolerance = 1e-12;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Vocabulary &vocab() {
  static const Vocabulary v =
      Vocabulary::build_from_file(testdata::data_path("text_vocab.txt"), selfies_alphabet(), 100);
  return v;
}

Verdict selfies_fuzz() {
  auto t0 = Clock::now();
  std::mt19937_64 lengths(2026);
  std::vector<std::string> decoded;
  std::size_t failures = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    std::size_t len = static_cast<std::size_t>(lengths() % 201);  // 0..200
    SelfiesString s = random_selfies(i, len);
    try {
      MolecularGraph g = decode_selfies(s);
      if (!check_valence(g).empty())
        throw Error(ErrorCode::kInvalidGraph, "valence");
      decoded.push_back(write_smiles(g, true));
    } catch (const std::exception &e) {
      if (failures++ == 0)
        first = format_selfies(s) + ": " + e.what();
    }
  }
  std::vector<std::string> nonempty;
  for (const std::string &smi : decoded)
    if (!smi.empty())
      nonempty.push_back(smi);
  double rate = nonempty.empty() ? 0.0 : validity_rate(nonempty, MoleculeFormat::kSmiles);
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "10000 strings, " << failures << " failures, validity " << rate << ", " << secs << " s";
  if (failures)
    d << ", first: " << first;
  return { failures == 0 && rate == 1.0 && secs < kFuzzSeconds, d.str() };
}

Verdict round_trip() {
  std::vector<std::string> mols = testdata::read_lines(testdata::data_path("molecules.smi"));
  auto t0 = Clock::now();
  std::size_t ok = 0;
  std::string first;
  for (const std::string &smi : mols) {
    try {
      std::string expected = canonical_smiles(smi);
      std::string got = write_smiles(decode_selfies(smiles_to_selfies(smi)), true);
      if (got == expected)
        ++ok;
      else if (first.empty())
        first = smi + " -> " + got;
    } catch (const std::exception &e) {
      if (first.empty())
        first = smi + ": " + e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << ok << "/" << mols.size() << " molecules, " << secs << " s";
  if (!first.empty())
    d << ", first mismatch: " << first;
  return { mols.size() >= 500 && ok == mols.size() && secs < kRoundTripSeconds, d.str() };
}

bool is_boron_token(const std::string &token) {
  // "[B]", "[=B]", "[B-1]", "[BH1]" ... but not "[Br]" or "[Branch1]".
  std::size_t i = 1;
  while (i < token.size() && (token[i] == '=' || token[i] == '#' || token[i] == '/' || token[i] == '\\'))
    ++i;
  return i < token.size() && token[i] == 'B' && (i + 1 >= token.size() || !std::islower(static_cast<unsigned char>(token[i + 1])));
}

Verdict bromine_not_boron() {
  std::vector<std::string> mols = testdata::read_lines(testdata::data_path("halogens.smi"));
  std::size_t bad = 0;
  std::size_t with_br = 0;
  std::string first;
  for (const std::string &smi : mols) {
    try {
      MolecularGraph g = parse_smiles(smi);
      bool has_br = false;
      for (const Atom &a : g.atoms()) {
        has_br = has_br || a.element == "Br";
        if (a.element == "B") {
          ++bad;
          first = smi + ": boron atom";
        }
      }
      with_br += has_br ? 1 : 0;
      for (const std::string &t : tokenize_selfies_string(smiles_to_selfies(smi)))
        if (is_boron_token(t)) {
          ++bad;
          first = smi + ": token " + t;
        }
    } catch (const std::exception &e) {
      ++bad;
      first = smi + ": " + e.what();
    }
  }
  std::ostringstream d;
  d << mols.size() << " molecules (" << with_br << " with Br), " << bad << " boron results";
  if (bad)
    d << ", last: " << first;
  return { mols.size() == 50 && with_br > 0 && bad == 0, d.str() };
}

Verdict tokenization_fidelity() {
  std::vector<std::string> sel = tokenize_selfies_string("[C][=C][Br]");
  std::vector<std::string> prot = tokenize_fasta("MKR");
  bool ok = sel == std::vector<std::string>{ "[C]", "[=C]", "[Br]" }
            && prot == std::vector<std::string>{ "<p>M", "<p>K", "<p>R" };
  return { ok, "[C][=C][Br] -> " + std::to_string(sel.size()) + " tokens, MKR -> " + std::to_string(prot.size())
                   + " tokens" };
}

Verdict span_corruption() {
  const Vocabulary &v = vocab();
  const auto plain_ids = static_cast<std::uint64_t>(v.size() - v.sentinel_count());
  Rng rng(99);
  CorruptionParams p;
  std::size_t spliced = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(700));
    TokenSequence tokens(n);
    for (int &t : tokens)
      t = static_cast<int>(rng.below(plain_ids));
    TrainingExample ex = span_corrupt(tokens, p, rng.next(), v, Task::kMolT5);
    tokens.resize(std::min<std::size_t>(n, 512));
    if (oracle::splice_back(ex.input_ids, ex.target_ids, v) == tokens)
      ++spliced;
  }
  double lo = kMaskDensity * (1.0 - kMaskRelativeTolerance);
  double hi = kMaskDensity * (1.0 + kMaskRelativeTolerance);
  std::size_t out_of_band = 0;
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    TokenSequence tokens(512);
    Rng fill(seed + 5000);
    for (int &t : tokens)
      t = static_cast<int>(fill.below(plain_ids));
    TrainingExample ex = span_corrupt(tokens, p, seed, v, Task::kTextT5);
    std::size_t sentinels = 0;
    for (int id : ex.target_ids)
      sentinels += oracle::sentinel_number(id, v) > 0 ? 1 : 0;
    double frac = static_cast<double>(ex.target_ids.size() - sentinels) / 512.0;
    sum += frac;
    out_of_band += (frac < lo || frac > hi) ? 1 : 0;
  }
  double mean = sum / 1000.0;
  std::ostringstream d;
  d << spliced << "/1000 splice back, mean mask fraction " << mean << ", " << out_of_band
    << " corruptions outside [" << lo << ", " << hi << "]";
  return { spliced == 1000 && out_of_band == 0 && mean >= lo && mean <= hi, d.str() };
}

Verdict mixer_composition() {
  std::array<std::unique_ptr<ExampleStream>, kTaskCount> streams;
  for (std::size_t t = 0; t < kTaskCount; ++t) {
    std::vector<TrainingExample> examples;
    for (int i = 0; i < 37 + static_cast<int>(t) * 11; ++i)
      examples.push_back({ { i }, { i }, all_tasks()[t] });
    streams[t] = std::make_unique<VectorStream>(std::move(examples));
  }
  MixerConfig config;
  config.batch_size = 96;
  config.seed = 2026;
  TaskMixer mixer(std::move(streams), config);
  std::size_t bad_batches = 0;
  for (int b = 0; b < 100; ++b) {
    std::array<int, kTaskCount> counts{};
    std::vector<TrainingExample> batch = mixer.next_batch();
    for (const TrainingExample &ex : batch)
      ++counts[static_cast<std::size_t>(ex.task)];
    bool ok = batch.size() == 96 && std::all_of(counts.begin(), counts.end(), [](int c) { return c == 16; });
    bad_batches += ok ? 0 : 1;
  }
  return { bad_batches == 0, "100 batches of 96, " + std::to_string(bad_batches) + " without 16 per task" };
}

Verdict direction_probability() {
  const Vocabulary &v = vocab();
  std::size_t forward = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    PairRecord r;
    r.id = "R" + std::to_string(i);
    r.kind = i % 2 ? RecordKind::kProtein : RecordKind::kMolecule;
    r.sequence = i % 2 ? "MKRAC" : "[C][C][O]";
    r.fields = { { i % 2 ? "FUNCTION" : "DESCRIPTION", "a small example" } };
    TrainingExample ex = build_translation_pair(r, derive_seed(2026, "pairs", fnv1a64(r.id)), v);
    forward += is_sequence_to_text(ex, v) ? 1 : 0;
  }
  double freq = static_cast<double>(forward) / 10000.0;
  std::ostringstream d;
  d << "seq->text frequency " << freq << " over 10000 pairs";
  return { freq >= kDirectionLow && freq <= kDirectionHigh, d.str() };
}

Verdict wrapping_rules() {
  std::size_t sentences = 0;
  std::size_t violations = 0;
  std::string first;
  for (std::uint64_t seed = 0; sentences < 200; ++seed) {
    oracle::WrapCase c = oracle::make_wrap_case(seed);
    WrapResult r = wrap_document(c.text, c.annotations, c.molecules, c.proteins, seed);
    sentences += c.sentences.size();
    std::vector<std::string> problems = oracle::check_wrap(c, r);
    violations += problems.size();
    if (!problems.empty() && first.empty())
      first = problems.front();
  }
  std::string d = std::to_string(sentences) + " sentences, " + std::to_string(violations) + " violations";
  if (!first.empty())
    d += ", first: " + first;
  return { violations == 0, d };
}

Verdict normalization() {
  LabelScores s = normalize_label_probabilities(0.3, 0.1);
  bool example = std::abs(s.pos - 0.75) <= kNormalizeTolerance && std::abs(s.neg - 0.25) <= kNormalizeTolerance;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t flipped = 0;
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a == 0.0 && b == 0.0)
      continue;
    LabelScores n = normalize_label_probabilities(a, b);
    if ((a > b) != (n.pos > n.neg) || (a < b) != (n.pos < n.neg))
      ++flipped;
  }
  std::ostringstream d;
  d.precision(17);
  d << "normalize(0.3, 0.1) = (" << s.pos << ", " << s.neg << "), argmax changed on " << flipped << "/1000";
  return { example && flipped == 0, d.str() };
}

MolecularGraph shuffled_graph(const MolecularGraph &g, std::mt19937_64 &rng) {
  std::vector<int> order(static_cast<std::size_t>(g.atom_count()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> where(order.size());
  MolecularGraph out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    where[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    out.add_atom(g.atom(order[i]));
  }
  for (const Bond &b : g.bonds())
    out.add_bond(where[static_cast<std::size_t>(b.begin)], where[static_cast<std::size_t>(b.end)], b.order);
  return out;
}

Verdict metric_oracles() {
  std::mt19937_64 rng(23);
  const std::string alphabet = "CNOSFcn()=#[]+-123@";
  std::size_t lev_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    auto make = [&] {
      std::string s(rng() % 40, ' ');
      for (char &c : s)
        c = alphabet[rng() % alphabet.size()];
      return s;
    };
    std::string a = make();
    std::string b = make();
    lev_bad += levenshtein(a, b) == oracle::edit_distance(a, b) ? 0 : 1;
  }

  std::vector<std::string> mols = testdata::read_lines(testdata::data_path("molecules.smi"));
  std::vector<std::vector<std::string>> corpus;
  for (const std::string &m : mols)
    corpus.push_back(split_characters(m));
  double self_bleu = corpus_bleu(corpus, corpus).bleu;

  std::size_t em_bad = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    std::string shuffled = write_smiles(shuffled_graph(parse_smiles(mols[i]), rng), false);
    em_bad += exact_match(mols[i], shuffled) && exact_match(shuffled, mols[i]) ? 0 : 1;
  }
  std::ostringstream d;
  d << "levenshtein mismatches " << lev_bad << "/1000, bleu(x, x) = " << self_bleu << ", exact_match failures "
    << em_bad << "/100";
  return { lev_bad == 0 && self_bleu == 1.0 && em_bad == 0, d.str() };
}

// Runs the whole CLI pipeline into dir and returns the data files it wrote.
std::map<std::string, std::string> run_pipeline(const std::string &dir, const std::string &workers,
                                                std::string &error) {
  auto sample = [](const std::string &n) { return testdata::data_path("sample/" + n); };
  auto out = [&](const std::string &n) { return dir + "/" + n; };
  const std::string vocab_path = out("vocab.tsv");
  const std::vector<std::string> common = { "--seed", "2026", "--workers", workers };
  std::vector<std::vector<std::string>> steps = {
    { "build-vocab", "--text-vocab", testdata::data_path("text_vocab.txt"), "--out", vocab_path },
    { "wrap", "--docs", sample("documents.jsonl"), "--annotations", sample("annotations.jsonl"), "--molecules",
      sample("molecules.tsv"), "--proteins", sample("proteins.tsv"), "--out", out("wrapped.jsonl"), "--plain-out",
      out("plain.jsonl") },
    { "tokenize", "--vocab", vocab_path, "--kind", "molecules", "--in", testdata::data_path("molecules.smi"), "--out",
      out("mol.ids") },
    { "tokenize", "--vocab", vocab_path, "--kind", "fasta", "--in", sample("proteins.fasta"), "--out",
      out("prot.ids") },
    { "tokenize", "--vocab", vocab_path, "--kind", "text", "--in", sample("documents.jsonl"), "--out",
      out("text.ids") },
    { "tokenize", "--vocab", vocab_path, "--kind", "wrapped", "--in", out("wrapped.jsonl"), "--out",
      out("wrapped.ids") },
  };
  for (const char *k : { "mol", "prot", "text", "wrapped" })
    steps.push_back({ "corrupt", "--vocab", vocab_path, "--in", out(std::string(k) + ".ids"), "--out",
                      out(std::string(k) + ".ex") });
  for (const char *k : { "molecule", "protein" })
    steps.push_back({ "pairs", "--vocab", vocab_path, "--kind", k, "--exclude", sample("exclude.txt"), "--in",
                      sample("pairs.jsonl"), "--out", out(std::string(k) + ".pairs") });
  steps.push_back({ "mix", "--mol-t5", out("mol.ex"), "--prot-t5", out("prot.ex"), "--text-t5", out("text.ex"),
                    "--wrapped-t5", out("wrapped.ex"), "--mol-text-pair", out("molecule.pairs"), "--prot-text-pair",
                    out("protein.pairs"), "--batches", "50", "--out", out("batches.jsonl") });

  for (std::vector<std::string> step : steps) {
    step.insert(step.end(), common.begin(), common.end());
    testdata::CommandResult r = testdata::run_cli(step);
    if (r.status != 0) {
      error = step.front() + " exited " + std::to_string(r.status) + ": " + r.err;
      return {};
    }
  }
  std::map<std::string, std::string> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() >= 14 && name.compare(name.size() - 14, 14, ".manifest.json") == 0)
      continue;  // manifests record the worker count
    files[name] = testdata::read_file(entry.path().string());
  }
  return files;
}

Verdict determinism() {
  std::string error;
  std::string d1 = testdata::make_temp_dir("accept-w1");
  std::string d8 = testdata::make_temp_dir("accept-w8");
  auto one = run_pipeline(d1, "1", error);
  auto eight = error.empty() ? run_pipeline(d8, "8", error) : decltype(one){};
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d8);
  if (!error.empty())
    return { false, "pipeline failed: " + error };
  std::size_t differing = 0;
  std::string first;
  for (const auto &[name, content] : one) {
    auto it = eight.find(name);
    if (it == eight.end() || it->second != content) {
      ++differing;
      if (first.empty())
        first = name;
    }
  }
  std::size_t bytes = 0;
  for (const auto &[name, content] : one)
    bytes += content.size();
  std::ostringstream d;
  d << one.size() << " output files (" << bytes << " bytes) compared between --workers 1 and 8, " << differing
    << " differ";
  if (!first.empty())
    d << ", first: " << first;
  // vocab, wrapped + plain, 4 id files, 4 corrupted, 2 pair files, batches
  const std::vector<std::string> expected = { "vocab.tsv", "wrapped.jsonl", "plain.jsonl", "mol.ids", "prot.ids",
                                              "text.ids", "wrapped.ids", "mol.ex", "prot.ex", "text.ex",
                                              "wrapped.ex", "molecule.pairs", "protein.pairs", "batches.jsonl" };
  bool complete = one.size() == expected.size() && eight.size() == expected.size();
  for (const std::string &name : expected)
    complete = complete && one.count(name) && !one.at(name).empty();
  return { complete && differing == 0, d.str() };
}

}  // namespace
}  // namespace biocorpus

int main() {
  using namespace biocorpus;
  const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
    { "selfies-fuzz-validity", selfies_fuzz },
    { "codec-round-trip", round_trip },
    { "bromine-not-boron", bromine_not_boron },
    { "tokenization-fidelity", tokenization_fidelity },
    { "span-corruption", span_corruption },
    { "mixer-composition", mixer_composition },
    { "direction-probability", direction_probability },
    { "wrapping-rules", wrapping_rules },
    { "normalization", normalization },
    { "metric-oracles", metric_oracles },
    { "determinism", determinism },
  };
  int failed = 0;
  for (const auto &[name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = { false, std::string("threw ") + e.what() };
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    failed += v.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
