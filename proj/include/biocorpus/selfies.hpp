//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biocorpus/molgraph.hpp"

namespace biocorpus {

// Index values are a positional role: the symbol right after a branch or
// ring token is read as a base-16 digit whatever its lexical kind.
enum class TokenKind : std::uint8_t {
  kAtom,
  kBranch,
  kRing,
  kSeparator,  // "." between disconnected fragments
};

struct SelfiesToken {
  std::string text;
  TokenKind kind = TokenKind::kAtom;

  friend bool operator==(const SelfiesToken &, const SelfiesToken &) = default;
};

using SelfiesString = std::vector<SelfiesToken>;

/// Elements the codec can spell as atom tokens.
const std::vector<std::string> &selfies_elements();

/// Every bracket token the codec accepts, sorted by text. Atom tokens cover
/// each element with bond prefix "", "=" or "#", charge -1/0/+1 and hydrogen
/// spelling bare or H0..H4 wherever the remaining bonding capacity admits
/// the prefix; then [Branch1-3] and [Ring1-3] with the same prefixes.
const std::vector<SelfiesToken> &selfies_alphabet();

bool in_selfies_alphabet(std::string_view text);

/// The 16 base-16 digit symbols, value = position.
const std::vector<std::string> &selfies_index_symbols();

/// Digit value of a symbol read in index position; 0 for any other symbol.
int selfies_index_value(std::string_view text);

/// Splits "[C][=C].[Br]" into tokens. Throws UnknownToken on text outside
/// brackets or tokens outside the alphabet.
SelfiesString parse_selfies(std::string_view text);

std::string format_selfies(const SelfiesString &tokens);

/// Total decoder: every alphabet sequence yields a valence-valid graph.
/// Throws UnknownToken only.
MolecularGraph decode_selfies(const SelfiesString &tokens);
MolecularGraph decode_selfies(std::string_view text);

/// Depth-first encoding from the canonical first atom with branches in
/// canonical neighbor order. Throws InvalidGraph on valence violations and
/// UnsupportedFeature for elements, charges or hydrogen counts the alphabet
/// cannot spell, or ring/branch spans beyond 4095.
SelfiesString encode_selfies(const MolecularGraph &graph);

/// I.i.d. uniform draws from selfies_alphabet().
SelfiesString random_selfies(std::uint64_t seed, std::size_t length);

std::string smiles_to_selfies(std::string_view smiles);
std::string selfies_to_smiles(std::string_view selfies);

}  // namespace biocorpus
