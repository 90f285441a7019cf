//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>

#include "biocorpus/selfies.hpp"

namespace biocorpus::internal {

struct TokenInfo {
  TokenKind kind = TokenKind::kAtom;
  int order = 1;   // bond order requested by the "", "=" or "#" prefix
  int digits = 0;  // Branch/Ring: number of index symbols that follow
  std::string element;
  int charge = 0;
  int hydrogens = -1;  // -1: bare token, hydrogens filled after derivation
  int capacity = 0;    // bonds the atom can still form
};

/// Metadata for an alphabet token, nullptr otherwise.
const TokenInfo *lookup_token(std::string_view text);

/// Spelling of an atom token; hydrogens = -1 for the bare form.
std::string atom_token_text(int order, std::string_view element, int charge, int hydrogens);

}  // namespace biocorpus::internal
