//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "biocorpus/error.hpp"
#include "biocorpus/metrics.hpp"
#include "biocorpus/pipeline.hpp"
#include "biocorpus/selfies.hpp"

namespace biocorpus {
namespace {

bool looks_like_selfies(std::string_view text) {
  if (text.empty() || text.front() != '[')
    return false;
  try {
    parse_selfies(text);
    return true;
  } catch (const Error &) {
    return false;
  }
}

std::optional<MolecularGraph> parse_molecule(std::string_view text, MoleculeFormat format) {
  try {
    bool selfies = format == MoleculeFormat::kSelfies
                   || (format == MoleculeFormat::kAuto && looks_like_selfies(text));
    MolecularGraph g = selfies ? decode_selfies(text) : parse_smiles(text);
    if (!check_valence(g).empty())
      return std::nullopt;
    return g;
  } catch (const Error &) {
    return std::nullopt;
  }
}

// SELFIES tokens of the canonical graph; raw characters when unparsed.
std::vector<std::string> distance_tokens(const MolecularGraph *graph, const std::string &raw) {
  if (!graph)
    return split_characters(raw);
  std::vector<std::string> out;
  try {
    for (const SelfiesToken &t : encode_selfies(canonicalize(*graph)))
      out.push_back(format_selfies({ t }));
  } catch (const Error &) {
    return split_characters(raw);
  }
  return out;
}

struct PairResult {
  bool pred_valid = false;
  bool exact = false;
  std::size_t distance = 0;
  std::vector<std::string> pred_tokens;
  std::vector<std::string> gold_tokens;
  std::optional<double> similarity;
};

}  // namespace

std::optional<std::string> molecule_canonical_smiles(std::string_view molecule, MoleculeFormat format) {
  std::optional<MolecularGraph> g = parse_molecule(molecule, format);
  if (!g)
    return std::nullopt;
  try {
    return write_smiles(*g, true);
  } catch (const Error &) {
    return std::nullopt;
  }
}

bool exact_match(std::string_view pred, std::string_view gold, MoleculeFormat format) {
  std::optional<std::string> p = molecule_canonical_smiles(pred, format);
  if (!p)
    return false;
  std::optional<std::string> g = molecule_canonical_smiles(gold, format);
  return g && *p == *g;
}

double validity_rate(const std::vector<std::string> &molecules, MoleculeFormat format) {
  if (molecules.empty())
    throw Error(ErrorCode::kEmptyCorpus, "no molecules to check");
  std::size_t ok = 0;
  for (const std::string &m : molecules)
    if (parse_molecule(m, format))
      ++ok;
  return static_cast<double>(ok) / static_cast<double>(molecules.size());
}

const std::vector<std::string> &unsupported_metrics() {
  static const std::vector<std::string> names = { "MACCS FTS", "RDK FTS", "FCD", "Text2Mol", "ROUGE", "METEOR" };
  return names;
}

MetricReport evaluate(const std::vector<std::pair<std::string, std::string>> &pairs, EvalKind kind,
                      const EvalOptions &options) {
  const MoleculeFormat format = options.format;
  const bool by_token = options.distance_unit == DistanceUnit::kToken;
  if (pairs.empty())
    throw Error(ErrorCode::kEmptyCorpus, "no prediction/reference pairs");

  std::vector<PairResult> results(pairs.size());
  parallel_for(pairs.size(), options.workers, [&](std::size_t i) {
    const auto &[pred, gold] = pairs[i];
    PairResult &r = results[i];
    if (kind == EvalKind::kText) {
      r.pred_valid = true;
      r.exact = pred == gold;
      r.pred_tokens = split_words(pred);
      r.gold_tokens = split_words(gold);
      r.distance = by_token ? levenshtein(r.pred_tokens, r.gold_tokens) : levenshtein(pred, gold);
      return;
    }
    std::optional<MolecularGraph> pg = parse_molecule(pred, format);
    std::optional<MolecularGraph> gg = parse_molecule(gold, format);
    std::optional<std::string> ps;
    std::optional<std::string> gs;
    try {
      if (pg)
        ps = write_smiles(*pg, true);
      if (gg)
        gs = write_smiles(*gg, true);
    } catch (const Error &) {
    }
    r.pred_valid = ps.has_value();
    r.exact = ps && gs && *ps == *gs;
    std::string a = ps ? *ps : pred;
    std::string b = gs ? *gs : gold;
    r.pred_tokens = split_characters(a);
    r.gold_tokens = split_characters(b);
    if (by_token)
      r.distance = levenshtein(distance_tokens(ps ? &*pg : nullptr, pred), distance_tokens(gs ? &*gg : nullptr, gold));
    else
      r.distance = levenshtein(a, b);
    if (ps && gs)
      r.similarity = tanimoto(morgan_fingerprint(*pg, options.morgan_radius, options.morgan_width),
                              morgan_fingerprint(*gg, options.morgan_radius, options.morgan_width));
  });

  MetricReport report;
  report.kind = kind;
  report.distance_unit = options.distance_unit;
  report.morgan_radius = options.morgan_radius;
  report.morgan_width = options.morgan_width;
  report.evaluated = pairs.size();
  std::size_t exact = 0;
  std::size_t distance = 0;
  double sim_sum = 0.0;
  std::size_t sim_count = 0;
  std::vector<std::vector<std::string>> preds;
  std::vector<std::vector<std::string>> golds;
  preds.reserve(results.size());
  golds.reserve(results.size());
  for (PairResult &r : results) {
    report.valid += r.pred_valid ? 1 : 0;
    exact += r.exact ? 1 : 0;
    distance += r.distance;
    if (r.similarity) {
      sim_sum += *r.similarity;
      ++sim_count;
    }
    preds.push_back(std::move(r.pred_tokens));
    golds.push_back(std::move(r.gold_tokens));
  }
  const auto n = static_cast<double>(pairs.size());
  report.invalid = report.evaluated - report.valid;
  report.exact = static_cast<double>(exact) / n;
  report.levenshtein_mean = static_cast<double>(distance) / n;
  report.validity = static_cast<double>(report.valid) / n;
  report.bleu = corpus_bleu(preds, golds, 4);
  if (kind == EvalKind::kMolecule && sim_count > 0)
    report.morgan_fts_mean = sim_sum / static_cast<double>(sim_count);
  return report;
}

std::string report_json(const MetricReport &report) {
  nlohmann::ordered_json j;
  const bool mol = report.kind == EvalKind::kMolecule;
  j["kind"] = mol ? "molecule" : "text";
  j["counts"] = { { "evaluated", report.evaluated }, { "valid", report.valid }, { "invalid", report.invalid } };
  j["exact"] = report.exact;
  j["levenshtein_mean"] = report.levenshtein_mean;
  j["levenshtein_unit"] = report.distance_unit == DistanceUnit::kToken ? (mol ? "selfies tokens" : "words")
                                                                       : (mol ? "canonical smiles characters"
                                                                              : "characters");
  j["bleu"] = {
    { "score", report.bleu.bleu },
    { "precisions", report.bleu.precisions },
    { "brevity_penalty", report.bleu.brevity_penalty },
    { "hypothesis_length", report.bleu.hypothesis_length },
    { "reference_length", report.bleu.reference_length },
    { "tokens", mol ? "characters of canonical SMILES" : "whitespace words" },
    { "smoothing", "zero n-gram matches for n >= 2 replaced by 0.1" },
  };
  if (mol) {
    j["validity"] = report.validity;
    j["morgan_fts_mean"] = report.morgan_fts_mean ? nlohmann::ordered_json(*report.morgan_fts_mean) : nullptr;
    j["fingerprint"] = { { "radius", report.morgan_radius }, { "width", report.morgan_width } };
  }
  j["unsupported"] = unsupported_metrics();
  return j.dump(2);
}

}  // namespace biocorpus
