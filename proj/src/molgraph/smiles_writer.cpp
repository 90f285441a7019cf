//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/molgraph.hpp"
#include "molgraph/internal.hpp"

namespace biocorpus {
namespace internal {
namespace {

class Emitter {
 public:
  Emitter(const MolecularGraph &graph, const std::vector<int> &rank,
          const std::vector<bool> &delocalized)
      : g_(graph), rank_(rank), deloc_(delocalized),
        lower_(static_cast<std::size_t>(graph.atom_count()), false),
        visited_(static_cast<std::size_t>(graph.atom_count()), false),
        bond_seen_(static_cast<std::size_t>(graph.bond_count()), false),
        children_(static_cast<std::size_t>(graph.atom_count())),
        opens_(static_cast<std::size_t>(graph.atom_count())),
        closes_(static_cast<std::size_t>(graph.atom_count())),
        sorted_(static_cast<std::size_t>(graph.atom_count())) {
    for (int b = 0; b < g_.bond_count(); ++b) {
      if (deloc_[static_cast<std::size_t>(b)]) {
        lower_[static_cast<std::size_t>(g_.bond(b).begin)] = true;
        lower_[static_cast<std::size_t>(g_.bond(b).end)] = true;
      }
    }
    for (int i = 0; i < g_.atom_count(); ++i) {
      auto &nbrs = sorted_[static_cast<std::size_t>(i)];
      nbrs = g_.neighbors(i);
      std::sort(nbrs.begin(), nbrs.end(), [&](const Neighbor &a, const Neighbor &b) {
        return rank_[static_cast<std::size_t>(a.atom)] < rank_[static_cast<std::size_t>(b.atom)];
      });
    }
  }

  std::string run() {
    std::vector<int> order(static_cast<std::size_t>(g_.atom_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)];
    });
    std::string out;
    for (int start : order) {
      if (visited_[static_cast<std::size_t>(start)])
        continue;
      plan(start, -1);
      if (!out.empty())
        out += '.';
      write(start, out);
    }
    return out;
  }

 private:
  // First pass: spanning tree and ring-closure edges in visiting order.
  void plan(int atom, int parent_bond) {
    auto ua = static_cast<std::size_t>(atom);
    visited_[ua] = true;
    for (const Neighbor &nb : sorted_[ua]) {
      auto ub = static_cast<std::size_t>(nb.bond);
      if (nb.bond == parent_bond || bond_seen_[ub])
        continue;
      bond_seen_[ub] = true;
      if (visited_[static_cast<std::size_t>(nb.atom)]) {
        opens_[static_cast<std::size_t>(nb.atom)].push_back(nb.bond);
        closes_[ua].push_back(nb.bond);
      } else {
        children_[ua].push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  }

  std::string bond_text(int bond) const {
    const Bond &b = g_.bond(bond);
    if (deloc_[static_cast<std::size_t>(bond)])
      return "";
    switch (b.order) {
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic: return ":";
    default: break;
    }
    if (lower_[static_cast<std::size_t>(b.begin)] && lower_[static_cast<std::size_t>(b.end)])
      return "-";
    return "";
  }

  std::string atom_text(int i) const {
    const Atom &a = g_.atom(i);
    bool lower = lower_[static_cast<std::size_t>(i)];
    std::string sym = a.element;
    if (lower)
      sym[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[0])));
    if (writes_as_bare_atom(g_, i))
      return sym;
    std::string out = "[" + sym;
    if (a.explicit_hydrogens == 1)
      out += "H";
    else if (a.explicit_hydrogens > 1)
      out += "H" + std::to_string(a.explicit_hydrogens);
    if (a.formal_charge != 0) {
      out += a.formal_charge > 0 ? '+' : '-';
      int m = std::abs(a.formal_charge);
      if (m > 1)
        out += std::to_string(m);
    }
    return out + "]";
  }

  static std::string digit_text(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }

  int take_digit() {
    for (std::size_t d = 1; d < in_use_.size(); ++d) {
      if (!in_use_[d]) {
        in_use_[d] = true;
        return static_cast<int>(d);
      }
    }
    throw Error(ErrorCode::kInvalidGraph, "more than 99 ring bonds open at once");
  }

  void write(int atom, std::string &out) {
    auto ua = static_cast<std::size_t>(atom);
    out += atom_text(atom);
    for (int bond : closes_[ua]) {
      int d = digit_of_[bond];
      out += digit_text(d);
      in_use_[static_cast<std::size_t>(d)] = false;
    }
    for (int bond : opens_[ua]) {
      int d = take_digit();
      digit_of_[bond] = d;
      out += bond_text(bond) + digit_text(d);
    }
    const auto &kids = children_[ua];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      bool last = k + 1 == kids.size();
      if (!last)
        out += '(';
      out += bond_text(kids[k].bond);
      write(kids[k].atom, out);
      if (!last)
        out += ')';
    }
  }

  const MolecularGraph &g_;
  const std::vector<int> &rank_;
  const std::vector<bool> &deloc_;
  std::vector<bool> lower_;
  std::vector<bool> visited_;
  std::vector<bool> bond_seen_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<int>> opens_;
  std::vector<std::vector<int>> closes_;
  std::vector<std::vector<Neighbor>> sorted_;
  std::vector<bool> in_use_ = std::vector<bool>(100, false);
  std::unordered_map<int, int> digit_of_;
};

}  // namespace

std::string emit_smiles(const MolecularGraph &graph, const std::vector<int> &rank,
                        const std::vector<bool> &delocalized) {
  return Emitter(graph, rank, delocalized).run();
}

}  // namespace internal

std::string write_smiles(const MolecularGraph &input, bool canonical) {
  auto violations = check_valence(input);
  if (!violations.empty()) {
    const auto &v = violations.front();
    throw Error(ErrorCode::kInvalidGraph,
                "atom " + std::to_string(v.atom) + " uses valence " + std::to_string(v.used)
                    + " of " + std::to_string(v.allowed));
  }
  if (input.empty())
    return "";
  MolecularGraph kekule;
  const MolecularGraph *g = &input;
  if (input.has_aromatic_bonds()) {
    kekule = input;
    kekulize(kekule);
    g = &kekule;
  }
  std::vector<bool> deloc = delocalized_bond_flags(*g);
  std::vector<int> rank;
  if (canonical) {
    rank = canonical_ranking(*g);
  } else {
    rank.resize(static_cast<std::size_t>(g->atom_count()));
    std::iota(rank.begin(), rank.end(), 0);
  }
  return internal::emit_smiles(*g, rank, deloc);
}

}  // namespace biocorpus
