//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/selfies.hpp"
#include "selfies/tokens.hpp"

namespace biocorpus {
namespace {

constexpr int kMaxIndex = 16 * 16 * 16 - 1;

SelfiesString index_symbols(int value) {
  if (value < 0 || value > kMaxIndex)
    throw Error(ErrorCode::kUnsupportedFeature,
                "branch or ring span " + std::to_string(value) + " exceeds three index symbols");
  const auto &digits = selfies_index_symbols();
  SelfiesString out;
  do {
    const std::string &d = digits[static_cast<std::size_t>(value % 16)];
    out.push_back({ d, internal::lookup_token(d)->kind });
    value /= 16;
  } while (value > 0);
  std::reverse(out.begin(), out.end());
  return out;
}

const char *order_prefix(int order) {
  switch (order) {
  case 2: return "=";
  case 3: return "#";
  default: return "";
  }
}

class Encoder {
 public:
  Encoder(const MolecularGraph &graph, const std::vector<int> &rank)
      : g_(graph), rank_(rank),
        visited_(static_cast<std::size_t>(graph.atom_count()), false),
        bond_seen_(static_cast<std::size_t>(graph.bond_count()), false),
        children_(static_cast<std::size_t>(graph.atom_count())),
        closes_(static_cast<std::size_t>(graph.atom_count())),
        emit_index_(static_cast<std::size_t>(graph.atom_count()), -1) { }

  SelfiesString run() {
    std::vector<int> order(static_cast<std::size_t>(g_.atom_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)];
    });
    SelfiesString out;
    for (int start : order) {
      if (visited_[static_cast<std::size_t>(start)])
        continue;
      plan(start, -1);
      if (!out.empty())
        out.push_back({ ".", TokenKind::kSeparator });
      SelfiesString fragment = chain(start, 1, true);
      out.insert(out.end(), fragment.begin(), fragment.end());
    }
    return out;
  }

 private:
  // Spanning tree in visiting order. Visiting order is also the order in
  // which the decoder creates atoms, so ring spans are index differences.
  void plan(int atom, int parent_bond) {
    auto ua = static_cast<std::size_t>(atom);
    visited_[ua] = true;
    emit_index_[ua] = next_index_++;
    std::vector<Neighbor> nbrs = g_.neighbors(atom);
    std::sort(nbrs.begin(), nbrs.end(), [&](const Neighbor &a, const Neighbor &b) {
      return rank_[static_cast<std::size_t>(a.atom)] < rank_[static_cast<std::size_t>(b.atom)];
    });
    for (const Neighbor &nb : nbrs) {
      auto ub = static_cast<std::size_t>(nb.bond);
      if (nb.bond == parent_bond || bond_seen_[ub])
        continue;
      bond_seen_[ub] = true;
      if (visited_[static_cast<std::size_t>(nb.atom)]) {
        closes_[ua].push_back(nb);
      } else {
        children_[ua].push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  }

  SelfiesToken atom_token(int atom, int order) const {
    const Atom &a = g_.atom(atom);
    int sum = g_.bond_order_sum(atom);
    bool bare = a.formal_charge == 0 && a.explicit_hydrogens == implicit_hydrogens(a.element, sum);
    std::string text =
        internal::atom_token_text(order, a.element, a.formal_charge, bare ? -1 : a.explicit_hydrogens);
    if (!internal::lookup_token(text))
      throw Error(ErrorCode::kUnsupportedFeature, "atom " + std::to_string(atom) + " (" + text
                                                      + ") has no token in the alphabet");
    return { text, TokenKind::kAtom };
  }

  // Tokens for the chain starting at atom, entered by a bond of the given
  // order (ignored for a fragment root).
  SelfiesString chain(int atom, int order, bool root) {
    SelfiesString out;
    int curr = atom;
    int curr_order = order;
    bool first = root;
    while (true) {
      auto uc = static_cast<std::size_t>(curr);
      out.push_back(atom_token(curr, first ? 1 : curr_order));
      first = false;

      for (const Neighbor &nb : closes_[uc]) {
        int span = emit_index_[uc] - emit_index_[static_cast<std::size_t>(nb.atom)];
        SelfiesString q = index_symbols(span - 1);
        int bond_order = static_cast<int>(g_.bond(nb.bond).order);
        out.push_back({ std::string("[") + order_prefix(bond_order) + "Ring"
                            + std::to_string(q.size()) + "]",
                        TokenKind::kRing });
        out.insert(out.end(), q.begin(), q.end());
      }

      const auto &kids = children_[uc];
      if (kids.empty())
        break;
      for (std::size_t k = 0; k + 1 < kids.size(); ++k) {
        int bond_order = static_cast<int>(g_.bond(kids[k].bond).order);
        SelfiesString branch = chain(kids[k].atom, bond_order, false);
        SelfiesString q = index_symbols(static_cast<int>(branch.size()) - 1);
        out.push_back({ std::string("[") + order_prefix(bond_order) + "Branch"
                            + std::to_string(q.size()) + "]",
                        TokenKind::kBranch });
        out.insert(out.end(), q.begin(), q.end());
        out.insert(out.end(), branch.begin(), branch.end());
      }
      curr_order = static_cast<int>(g_.bond(kids.back().bond).order);
      curr = kids.back().atom;
    }
    return out;
  }

  const MolecularGraph &g_;
  const std::vector<int> &rank_;
  std::vector<bool> visited_;
  std::vector<bool> bond_seen_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> closes_;
  std::vector<int> emit_index_;
  int next_index_ = 0;
};

}  // namespace

SelfiesString encode_selfies(const MolecularGraph &input) {
  auto violations = check_valence(input);
  if (!violations.empty()) {
    const auto &v = violations.front();
    throw Error(ErrorCode::kInvalidGraph, "atom " + std::to_string(v.atom) + " uses valence "
                                              + std::to_string(v.used) + " of "
                                              + std::to_string(v.allowed));
  }
  if (input.empty())
    return {};
  MolecularGraph kekule;
  const MolecularGraph *g = &input;
  if (input.has_aromatic_bonds()) {
    kekule = input;
    kekulize(kekule);
    g = &kekule;
  }
  std::vector<int> rank = canonical_ranking(*g);
  return Encoder(*g, rank).run();
}

}  // namespace biocorpus
