//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biocorpus/selfies.hpp"

namespace biocorpus {

enum class Modality : std::uint8_t {
  kText,
  kSelfies,
  kAminoAcid,
  kSpecial,
  kSentinel,
};

std::string_view modality_name(Modality m) noexcept;
std::optional<Modality> parse_modality(std::string_view name) noexcept;

/// Token IDs; modality per ID is looked up in the owning Vocabulary.
using TokenSequence = std::vector<int>;

namespace special {
inline constexpr std::string_view kPad = "<pad>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";
inline constexpr std::string_view kBom = "<bom>";
inline constexpr std::string_view kEom = "<eom>";
inline constexpr std::string_view kMoleculeName = "MOLECULE NAME";
inline constexpr std::string_view kDescription = "DESCRIPTION";
inline constexpr std::string_view kProteinName = "PROTEIN NAME";
inline constexpr std::string_view kFunction = "FUNCTION";
inline constexpr std::string_view kSubcellularLocation = "SUBCELLULAR LOCATION";
inline constexpr std::string_view kProteinFamilies = "PROTEIN FAMILIES";
}  // namespace special

/// The special block in ID order: pad, eos, unk, bom, eom, then the six
/// record field markers.
const std::vector<std::string> &special_tokens();

/// Amino-acid block: "<p>A" .. "<p>Z". J has a slot but no residue maps
/// to it.
const std::vector<std::string> &amino_acid_tokens();

/// "<M1>" for index 1.
std::string sentinel_token(int index);

/// Word-boundary marker used by subword text vocabularies (U+2581).
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";

struct VocabEntry {
  std::string token;
  Modality modality;
};

class Vocabulary {
 public:
  /// Layout [text][selfies][amino][special][sentinel]. Text tokens keep
  /// their input order, SELFIES tokens are sorted by text. Throws
  /// DuplicateToken, MalformedVocabFile (bad token text) or InvalidArgument
  /// (sentinel_count < 1).
  static Vocabulary build(const std::vector<std::string> &text_tokens,
                          const std::vector<SelfiesToken> &alphabet, int sentinel_count);

  /// Reads a subword list (one token per line; a tab and anything after it
  /// is ignored, so SentencePiece ".vocab" files work) and builds.
  static Vocabulary build_from_file(const std::string &text_vocab_path,
                                    const std::vector<SelfiesToken> &alphabet, int sentinel_count);

  /// Parses the "token<TAB>modality" format written by to_tsv().
  static Vocabulary from_tsv(std::string_view tsv);
  static Vocabulary load(const std::string &path);

  std::string to_tsv() const;
  void save(const std::string &path) const;

  /// Per-block counts, total, the SELFIES alphabet size and a SHA-256 of
  /// the TSV serialization, as a JSON object string.
  std::string manifest_json() const;

  int size() const noexcept { return static_cast<int>(entries_.size()); }
  const std::vector<VocabEntry> &entries() const noexcept { return entries_; }
  int count(Modality m) const noexcept;

  std::optional<int> find(std::string_view token) const;
  const std::string &token(int id) const;
  Modality modality(int id) const;

  int pad_id() const { return special_id(special::kPad); }
  int eos_id() const { return special_id(special::kEos); }
  int unk_id() const { return special_id(special::kUnk); }
  int bom_id() const { return special_id(special::kBom); }
  int eom_id() const { return special_id(special::kEom); }
  int special_id(std::string_view token) const;

  int sentinel_count() const noexcept { return count(Modality::kSentinel); }
  /// ID of sentinel <Mk>, 1-based. Throws TooManySpans past the block.
  int sentinel_id(int k) const;
  /// k for a sentinel ID, 0 for any other ID.
  int sentinel_index(int id) const;

  /// Longest text token length in bytes.
  std::size_t max_text_token_bytes() const noexcept { return max_text_bytes_; }

 private:
  void index();

  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, int> ids_;
  int first_sentinel_ = 0;
  std::size_t max_text_bytes_ = 0;
};

// ---------------------------------------------------------------------------
// Tokenizers
// ---------------------------------------------------------------------------

/// Splits at bracket boundaries; "." stays a token of its own. Throws
/// UnbalancedBracket or StrayCharacter.
std::vector<std::string> tokenize_selfies_string(std::string_view text);

/// "MKR" -> {"<p>M", "<p>K", "<p>R"}. Accepts the 20 standard residues
/// plus X, B, Z, U and O; anything else throws InvalidResidue.
std::vector<std::string> tokenize_fasta(std::string_view text);

bool is_accepted_residue(char c) noexcept;

/// Greedy longest match over text-modality tokens after mapping spaces to
/// the word-boundary marker. Each code point no token covers becomes one
/// "<unk>". Throws MissingTextVocab when the vocabulary has no text block.
std::vector<std::string> tokenize_text(std::string_view text, const Vocabulary &vocab);

/// Inverse of tokenize_text for in-vocabulary text.
std::string detokenize_text(const std::vector<std::string> &tokens);

/// Text with embedded "<bom>...<eom>" segments (wrapped sentences): text
/// outside segments goes through tokenize_text; a segment starting with
/// '[' is SELFIES, otherwise FASTA. Throws UnbalancedBracket on an
/// unterminated segment.
std::vector<std::string> tokenize_mixed(std::string_view text, const Vocabulary &vocab);

/// Token texts to IDs. Unknown text tokens map to <unk>; unknown tokens
/// shaped like SELFIES ("[...]"), amino acids ("<p>X") or specials
/// ("<...>") throw UnknownNonTextToken.
TokenSequence encode_ids(const std::vector<std::string> &tokens, const Vocabulary &vocab);

/// Throws UnknownId.
std::vector<std::string> decode_ids(const TokenSequence &ids, const Vocabulary &vocab);

}  // namespace biocorpus
