//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "biocorpus/molgraph.hpp"
#include "molgraph/internal.hpp"

namespace biocorpus {
namespace {

using Classes = std::vector<int>;

// Leaves explored before the search settles for the best certificate so far.
constexpr int kLeafBudget = 5000;

// Class of each item = number of items with a strictly smaller key.
template <typename Key>
Classes rank_by(const std::vector<Key> &keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  Classes out(keys.size(), 0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto cur = static_cast<std::size_t>(idx[k]);
    if (k > 0 && keys[static_cast<std::size_t>(idx[k - 1])] == keys[cur])
      out[cur] = out[static_cast<std::size_t>(idx[k - 1])];
    else
      out[cur] = static_cast<int>(k);
  }
  return out;
}

int distinct(const Classes &c) { return static_cast<int>(std::set<int>(c.begin(), c.end()).size()); }

class Canonicalizer {
 public:
  explicit Canonicalizer(const MolecularGraph &graph)
      : g_(graph), deloc_(delocalized_bond_flags(graph)) {
    const std::vector<bool> ring = ring_bond_flags(graph);
    const auto n = static_cast<std::size_t>(g_.atom_count());
    bond_type_.resize(static_cast<std::size_t>(g_.bond_count()));
    for (int b = 0; b < g_.bond_count(); ++b) {
      bond_type_[static_cast<std::size_t>(b)] =
          deloc_[static_cast<std::size_t>(b)] ? 4 : static_cast<int>(g_.bond(b).order);
    }
    using Invariant = std::tuple<int, int, int, int, bool, bool>;
    std::vector<Invariant> keys(n);
    for (int i = 0; i < g_.atom_count(); ++i) {
      bool in_deloc = false, in_ring = false;
      for (const Neighbor &nb : g_.neighbors(i)) {
        in_deloc = in_deloc || deloc_[static_cast<std::size_t>(nb.bond)];
        in_ring = in_ring || ring[static_cast<std::size_t>(nb.bond)];
      }
      const Atom &a = g_.atom(i);
      // Degree leads so that output starts from a terminal atom when one exists.
      keys[static_cast<std::size_t>(i)] = { g_.heavy_degree(i), atomic_number(a.element),
                                            a.formal_charge, a.explicit_hydrogens,
                                            in_deloc, in_ring };
    }
    initial_ = rank_by(keys);
  }

  std::vector<int> run() {
    if (g_.atom_count() == 0)
      return {};
    search(initial_);
    return best_rank_;
  }

 private:
  Classes refine(Classes c) const {
    const auto n = static_cast<std::size_t>(g_.atom_count());
    int count = distinct(c);
    using Key = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Key> keys(n);
    while (true) {
      for (int i = 0; i < g_.atom_count(); ++i) {
        auto &key = keys[static_cast<std::size_t>(i)];
        key.first = c[static_cast<std::size_t>(i)];
        key.second.clear();
        for (const Neighbor &nb : g_.neighbors(i))
          key.second.emplace_back(c[static_cast<std::size_t>(nb.atom)],
                                  bond_type_[static_cast<std::size_t>(nb.bond)]);
        std::sort(key.second.begin(), key.second.end());
      }
      Classes next = rank_by(keys);
      int next_count = distinct(next);
      c = std::move(next);
      if (next_count == count)
        return c;
      count = next_count;
    }
  }

  void search(Classes c) {
    c = refine(std::move(c));
    const auto n = static_cast<std::size_t>(g_.atom_count());

    std::vector<int> size(n, 0);
    for (int v : c)
      ++size[static_cast<std::size_t>(v)];
    int cell = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (size[v] > 1) {
        cell = static_cast<int>(v);
        break;
      }
    }

    if (cell < 0) {
      ++leaves_;
      std::string cert = internal::emit_smiles(g_, c, deloc_);
      if (best_rank_.empty() || cert < best_cert_) {
        best_cert_ = std::move(cert);
        best_rank_ = c;
      }
      return;
    }

    std::vector<int> members;
    for (int i = 0; i < g_.atom_count(); ++i) {
      if (c[static_cast<std::size_t>(i)] == cell)
        members.push_back(i);
    }
    // Terminal atoms hanging off the same atom by the same bond type are
    // interchangeable, so only one of them needs to be tried.
    std::set<std::pair<int, int>> twins;
    for (int m : members) {
      if (g_.heavy_degree(m) == 1) {
        const Neighbor &nb = g_.neighbors(m).front();
        if (!twins.emplace(nb.atom, bond_type_[static_cast<std::size_t>(nb.bond)]).second)
          continue;
      }
      if (leaves_ >= kLeafBudget)
        return;
      Classes split = c;
      for (int other : members) {
        if (other != m)
          split[static_cast<std::size_t>(other)] = cell + 1;
      }
      search(std::move(split));
    }
  }

  const MolecularGraph &g_;
  std::vector<bool> deloc_;
  std::vector<int> bond_type_;
  Classes initial_;
  std::string best_cert_;
  std::vector<int> best_rank_;
  int leaves_ = 0;
};

}  // namespace

std::vector<int> canonical_ranking(const MolecularGraph &input) {
  if (input.has_aromatic_bonds()) {
    MolecularGraph kekule = input;
    kekulize(kekule);
    return Canonicalizer(kekule).run();
  }
  return Canonicalizer(input).run();
}

MolecularGraph canonicalize(const MolecularGraph &graph) {
  std::string smiles = write_smiles(graph, true);
  if (smiles.empty())
    return {};
  return parse_smiles(smiles);
}

std::string canonical_smiles(std::string_view smiles) {
  return write_smiles(parse_smiles(smiles), true);
}

}  // namespace biocorpus
