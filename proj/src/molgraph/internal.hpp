//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "biocorpus/molgraph.hpp"

namespace biocorpus::internal {

/// Elements that have a lowercase SMILES spelling.
bool has_aromatic_spelling(std::string_view element);

/// True when the atom can be written without brackets and still parse back
/// with the same hydrogen count.
bool writes_as_bare_atom(const MolecularGraph &graph, int atom);

/// Turns aromatic bonds into single bonds plus one double bond at every atom
/// flagged in needs_double. Throws KekulizationFailed.
void assign_kekule(MolecularGraph &graph, const std::vector<bool> &needs_double);

/// SMILES emission with a fixed atom ranking (lower rank first).
std::string emit_smiles(const MolecularGraph &graph, const std::vector<int> &rank,
                        const std::vector<bool> &delocalized);

}  // namespace biocorpus::internal
