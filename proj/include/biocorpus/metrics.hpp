//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biocorpus/molgraph.hpp"

namespace biocorpus {

enum class MoleculeFormat : std::uint8_t {
  kAuto,  // SELFIES when every bracket token is in the codec alphabet, else SMILES
  kSmiles,
  kSelfies,
};

/// Canonical SMILES of a SMILES or SELFIES string; nullopt when it does not
/// parse or fails the valence check.
std::optional<std::string> molecule_canonical_smiles(std::string_view molecule,
                                                     MoleculeFormat format = MoleculeFormat::kAuto);

/// Both parse and have byte-equal canonical SMILES. Never throws.
bool exact_match(std::string_view pred, std::string_view gold, MoleculeFormat format = MoleculeFormat::kAuto);

/// Unit-cost edit distance over Unicode code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Unit-cost edit distance over token sequences.
std::size_t levenshtein(const std::vector<std::string> &a, const std::vector<std::string> &b);

struct BleuScore {
  double bleu = 0.0;
  std::vector<double> precisions;  // smoothed, n = 1..max_n
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;
};

inline constexpr double kBleuEpsilon = 0.1;

/// Corpus BLEU with one reference per hypothesis. A zero match count for
/// n >= 2 is replaced by kBleuEpsilon; orders with no n-grams in the
/// hypotheses are left out of the geometric mean. Throws LengthMismatch,
/// EmptyCorpus, InvalidArgument (max_n < 1).
BleuScore corpus_bleu(const std::vector<std::vector<std::string>> &preds,
                      const std::vector<std::vector<std::string>> &golds, int max_n = 4);

/// Whitespace tokens.
std::vector<std::string> split_words(std::string_view text);
/// One token per code point.
std::vector<std::string> split_characters(std::string_view text);

/// Fraction of molecules that parse and pass the valence check. Throws
/// EmptyCorpus.
double validity_rate(const std::vector<std::string> &molecules, MoleculeFormat format = MoleculeFormat::kAuto);

struct Fingerprint {
  int radius = 2;
  int width = 2048;
  std::vector<std::uint64_t> words;

  bool test(int bit) const;
  int popcount() const;
  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

/// Circular environment hashing up to radius, folded to width bits (a power
/// of two). Atom invariants: element, heavy degree, hydrogens, charge, ring
/// membership, membership of the delocalized ring system. Throws
/// InvalidGraph, InvalidArgument.
Fingerprint morgan_fingerprint(const MolecularGraph &graph, int radius = 2, int width = 2048);

/// |a & b| / |a | b|, 1 for two empty fingerprints. Throws WidthMismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

enum class EvalKind : std::uint8_t { kMolecule, kText };

enum class DistanceUnit : std::uint8_t {
  kCharacter,  // code points of canonical SMILES (molecules) or raw text
  kToken,      // SELFIES tokens of the canonical molecule, or words for text
};

struct MetricReport {
  EvalKind kind = EvalKind::kMolecule;
  std::size_t evaluated = 0;
  std::size_t valid = 0;    // molecule kind: predictions that parse
  std::size_t invalid = 0;
  double exact = 0.0;
  double levenshtein_mean = 0.0;
  DistanceUnit distance_unit = DistanceUnit::kCharacter;
  BleuScore bleu;
  double validity = 0.0;
  std::optional<double> morgan_fts_mean;  // over pairs where both sides parse
  int morgan_radius = 2;
  int morgan_width = 2048;
};

/// Metrics named but not computed by this toolkit.
const std::vector<std::string> &unsupported_metrics();

struct EvalOptions {
  int workers = 1;
  MoleculeFormat format = MoleculeFormat::kAuto;
  DistanceUnit distance_unit = DistanceUnit::kCharacter;
  int morgan_radius = 2;
  int morgan_width = 2048;
};

/// Molecule kind: exact match, Levenshtein and character BLEU on canonical
/// SMILES (raw text when a side does not parse), validity, Morgan FTS.
/// Text kind: exact string match, Levenshtein, word BLEU. Aggregation is in
/// pair order whatever the worker count. Throws EmptyCorpus.
MetricReport evaluate(const std::vector<std::pair<std::string, std::string>> &pairs, EvalKind kind,
                      const EvalOptions &options = {});

std::string report_json(const MetricReport &report);

}  // namespace biocorpus
