//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <string_view>
#include <vector>

#include "biocorpus/molgraph.hpp"

namespace biocorpus {
namespace {

constexpr std::array<std::string_view, 118> kSymbols = {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

// Valence electrons for the elements that carry a valence table.
int valence_electrons(std::string_view e) {
  if (e == "B") return 3;
  if (e == "C") return 4;
  if (e == "N" || e == "P") return 5;
  if (e == "O" || e == "S") return 6;
  if (e == "F" || e == "Cl" || e == "Br" || e == "I") return 7;
  return 0;
}

bool expands_octet(std::string_view e) { return e == "P" || e == "S"; }

}  // namespace

int atomic_number(std::string_view symbol) noexcept {
  auto it = std::find(kSymbols.begin(), kSymbols.end(), symbol);
  return it == kSymbols.end() ? 0 : static_cast<int>(it - kSymbols.begin()) + 1;
}

bool is_organic_subset(std::string_view s) noexcept {
  return s == "B" || s == "C" || s == "N" || s == "O" || s == "P" || s == "S"
         || s == "F" || s == "Cl" || s == "Br" || s == "I";
}

std::vector<int> allowed_valences(std::string_view element, int charge) {
  if (element == "H")
    return { charge == 0 ? 1 : 0 };

  int ve = valence_electrons(element);
  if (ve == 0)
    return { 8 };

  switch (ve - charge) {
  case 1: return { 1 };
  case 2: return { 2 };
  case 3: return { 3 };
  case 4: return { 4 };
  case 5:
    if (expands_octet(element)) return { 3, 5 };
    return { 3 };
  case 6:
    if (expands_octet(element)) return { 2, 4, 6 };
    return { 2 };
  case 7: return { 1 };
  default: return { 0 };
  }
}

int max_valence(std::string_view element, int charge) {
  return allowed_valences(element, charge).back();
}

int implicit_hydrogens(std::string_view element, int bond_order_sum) {
  for (int v : allowed_valences(element, 0)) {
    if (v >= bond_order_sum)
      return v - bond_order_sum;
  }
  return 0;
}

}  // namespace biocorpus
