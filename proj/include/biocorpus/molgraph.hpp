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

namespace biocorpus {

// ---------------------------------------------------------------------------
// Elements and valence
// ---------------------------------------------------------------------------

/// Atomic number of an element symbol ("C" -> 6, "Br" -> 35), or 0 when the
/// symbol is not a known element.
int atomic_number(std::string_view symbol) noexcept;

/// True for the bare-atom SMILES subset: B C N O P S F Cl Br I.
bool is_organic_subset(std::string_view symbol) noexcept;

/// Allowed valences in increasing order for an element at a given formal
/// charge. Charged atoms take the valences of their isoelectronic neutral
/// counterpart (N+ behaves like C, O- like F). Only P and S expand beyond
/// the octet. Elements outside the table get a single permissive entry of 8.
std::vector<int> allowed_valences(std::string_view element, int charge);

int max_valence(std::string_view element, int charge);

/// Hydrogen count a bare organic-subset atom receives for a given bond-order
/// sum: fill up to the smallest allowed neutral valence, 0 when over.
int implicit_hydrogens(std::string_view element, int bond_order_sum);

// ---------------------------------------------------------------------------
// Graph model
// ---------------------------------------------------------------------------

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  std::string element;
  int formal_charge = 0;
  // Total attached hydrogens. Bare SMILES atoms have their implicit count
  // resolved at parse time, so two spellings of one molecule compare equal.
  int explicit_hydrogens = 0;
  // Set when the atom was written in aromatic (lowercase) form. It does not
  // take part in graph identity.
  bool aromatic = false;

  friend bool operator==(const Atom &a, const Atom &b) {
    return a.element == b.element && a.formal_charge == b.formal_charge
           && a.explicit_hydrogens == b.explicit_hydrogens;
  }
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }

  friend bool operator==(const Bond &a, const Bond &b) = default;
};

struct Neighbor {
  int atom;
  int bond;
};

class MolecularGraph {
 public:
  MolecularGraph() = default;

  /// Appends an atom and returns its index. Throws InvalidGraph when the
  /// element is unknown, |charge| > 4 or hydrogens outside [0, 9].
  int add_atom(Atom atom);

  /// Adds an undirected bond. Throws InvalidGraph on self loops, bad indices
  /// or a second bond between the same pair.
  int add_bond(int a, int b, BondOrder order);

  void set_bond_order(int bond, BondOrder order);
  void set_hydrogens(int atom, int count);

  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  const std::vector<Bond> &bonds() const noexcept { return bonds_; }
  const Atom &atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  const std::vector<Neighbor> &neighbors(int atom) const {
    return adjacency_[static_cast<std::size_t>(atom)];
  }

  int atom_count() const noexcept { return static_cast<int>(atoms_.size()); }
  int bond_count() const noexcept { return static_cast<int>(bonds_.size()); }
  bool empty() const noexcept { return atoms_.empty(); }

  /// Bond index between a and b, if any.
  std::optional<int> find_bond(int a, int b) const;

  /// Sum of bond orders at an atom. Aromatic bonds count 1 each plus one
  /// extra unit for the atom's share of the delocalized double bond.
  int bond_order_sum(int atom) const;

  int heavy_degree(int atom) const { return static_cast<int>(neighbors(atom).size()); }

  bool has_aromatic_bonds() const;

  /// Exact structural equality: same atom order, same bonds in the same order.
  friend bool operator==(const MolecularGraph &a, const MolecularGraph &b) {
    return a.atoms_ == b.atoms_ && a.bonds_ == b.bonds_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// ---------------------------------------------------------------------------
// Valence checking
// ---------------------------------------------------------------------------

struct ValenceViolation {
  int atom;
  int used;
  int allowed;

  friend bool operator==(const ValenceViolation &, const ValenceViolation &) = default;
};

/// Every atom whose bond-order sum plus hydrogens exceeds the largest
/// allowed valence for its element and charge. Empty means valid.
std::vector<ValenceViolation> check_valence(const MolecularGraph &graph);

// ---------------------------------------------------------------------------
// Ring and aromatic structure
// ---------------------------------------------------------------------------

/// Per-bond flag: true when the bond lies on a cycle (is not a bridge).
std::vector<bool> ring_bond_flags(const MolecularGraph &graph);

/// Per-bond flag for the delocalized (Kekule-ambiguous) ring system: ring
/// bonds between ring atoms that each carry exactly one double bond, that
/// double bond itself being such a ring bond. Invariant under swapping one
/// Kekule structure for another, so canonical forms and fingerprints built
/// on it do not depend on which Kekule form the input used.
std::vector<bool> delocalized_bond_flags(const MolecularGraph &graph);

/// Replaces aromatic bonds with an alternating single/double assignment.
/// Throws KekulizationFailed when no assignment exists.
void kekulize(MolecularGraph &graph);

// ---------------------------------------------------------------------------
// SMILES
// ---------------------------------------------------------------------------

struct SmilesParse {
  MolecularGraph graph;
  // Stereo markers (/, \, @, @@) were present and dropped.
  bool stereo_discarded = false;
};

/// Parses the supported OpenSMILES subset. Aromatic input is kekulized.
/// Errors: EmptyInput, UnbalancedDelimiter, UnknownElement, SyntaxError,
/// UnsupportedFeature (isotopes, '$', atom classes, wildcards),
/// KekulizationFailed.
SmilesParse parse_smiles_detailed(std::string_view text);

MolecularGraph parse_smiles(std::string_view text);

/// Writes SMILES. With canonical=true isomorphic graphs produce identical
/// strings; otherwise atoms are emitted starting from index order.
/// Throws InvalidGraph when check_valence reports violations.
std::string write_smiles(const MolecularGraph &graph, bool canonical = true);

/// Canonical atom ranking (0 = first) from iterative neighborhood refinement
/// with exhaustive tie breaking.
std::vector<int> canonical_ranking(const MolecularGraph &graph);

/// The graph re-expressed in canonical atom order. Isomorphic inputs give
/// identical (operator==) results. Throws InvalidGraph.
MolecularGraph canonicalize(const MolecularGraph &graph);

/// Shorthand for write_smiles(parse_smiles(text), true).
std::string canonical_smiles(std::string_view smiles);

}  // namespace biocorpus
