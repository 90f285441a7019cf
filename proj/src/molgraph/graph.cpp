//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/molgraph.hpp"
#include "molgraph/internal.hpp"

namespace biocorpus {

int MolecularGraph::add_atom(Atom atom) {
  if (atomic_number(atom.element) == 0)
    throw Error(ErrorCode::kInvalidGraph, "unknown element '" + atom.element + "'");
  if (atom.formal_charge < -4 || atom.formal_charge > 4)
    throw Error(ErrorCode::kInvalidGraph,
                "formal charge out of range: " + std::to_string(atom.formal_charge));
  if (atom.explicit_hydrogens < 0 || atom.explicit_hydrogens > 9)
    throw Error(ErrorCode::kInvalidGraph,
                "hydrogen count out of range: " + std::to_string(atom.explicit_hydrogens));
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return atom_count() - 1;
}

int MolecularGraph::add_bond(int a, int b, BondOrder order) {
  if (a < 0 || b < 0 || a >= atom_count() || b >= atom_count())
    throw Error(ErrorCode::kInvalidGraph, "bond endpoint out of range");
  if (a == b)
    throw Error(ErrorCode::kInvalidGraph, "self loop on atom " + std::to_string(a));
  if (find_bond(a, b))
    throw Error(ErrorCode::kInvalidGraph,
                "duplicate bond " + std::to_string(a) + "-" + std::to_string(b));
  int idx = bond_count();
  bonds_.push_back({ a, b, order });
  adjacency_[static_cast<std::size_t>(a)].push_back({ b, idx });
  adjacency_[static_cast<std::size_t>(b)].push_back({ a, idx });
  return idx;
}

void MolecularGraph::set_bond_order(int bond, BondOrder order) {
  bonds_[static_cast<std::size_t>(bond)].order = order;
}

void MolecularGraph::set_hydrogens(int atom, int count) {
  if (count < 0 || count > 9)
    throw Error(ErrorCode::kInvalidGraph, "hydrogen count out of range");
  atoms_[static_cast<std::size_t>(atom)].explicit_hydrogens = count;
}

std::optional<int> MolecularGraph::find_bond(int a, int b) const {
  if (a < 0 || a >= atom_count())
    return std::nullopt;
  for (const Neighbor &n : neighbors(a)) {
    if (n.atom == b)
      return n.bond;
  }
  return std::nullopt;
}

int MolecularGraph::bond_order_sum(int atom) const {
  int sum = 0;
  bool aromatic = false;
  for (const Neighbor &n : neighbors(atom)) {
    BondOrder o = bond(n.bond).order;
    if (o == BondOrder::kAromatic) {
      aromatic = true;
      sum += 1;
    } else {
      sum += static_cast<int>(o);
    }
  }
  return sum + (aromatic ? 1 : 0);
}

bool MolecularGraph::has_aromatic_bonds() const {
  return std::any_of(bonds_.begin(), bonds_.end(),
                     [](const Bond &b) { return b.order == BondOrder::kAromatic; });
}

std::vector<ValenceViolation> check_valence(const MolecularGraph &graph) {
  std::vector<ValenceViolation> out;
  for (int i = 0; i < graph.atom_count(); ++i) {
    const Atom &a = graph.atom(i);
    int used = graph.bond_order_sum(i) + a.explicit_hydrogens;
    int allowed = max_valence(a.element, a.formal_charge);
    if (used > allowed)
      out.push_back({ i, used, allowed });
  }
  return out;
}

std::vector<bool> ring_bond_flags(const MolecularGraph &graph) {
  const int n = graph.atom_count();
  std::vector<bool> ring(static_cast<std::size_t>(graph.bond_count()), true);
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0)
      continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &nbrs = graph.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        auto v = static_cast<std::size_t>(nb.atom);
        if (disc[v] < 0) {
          disc[v] = low[v] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          auto u = static_cast<std::size_t>(f.atom);
          low[u] = std::min(low[u], disc[v]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        auto u = static_cast<std::size_t>(stack.back().atom);
        auto v = static_cast<std::size_t>(done.atom);
        low[u] = std::min(low[u], low[v]);
        if (low[v] > disc[u])
          ring[static_cast<std::size_t>(done.parent_bond)] = false;
      }
    }
  }
  return ring;
}

namespace internal {

bool has_aromatic_spelling(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O"
         || element == "P" || element == "S" || element == "Se" || element == "As"
         || element == "Te";
}

bool writes_as_bare_atom(const MolecularGraph &graph, int atom) {
  const Atom &a = graph.atom(atom);
  return is_organic_subset(a.element) && a.formal_charge == 0
         && a.explicit_hydrogens == implicit_hydrogens(a.element, graph.bond_order_sum(atom));
}

}  // namespace internal

std::vector<bool> delocalized_bond_flags(const MolecularGraph &input) {
  const MolecularGraph *g = &input;
  MolecularGraph kekule;
  if (input.has_aromatic_bonds()) {
    kekule = input;
    kekulize(kekule);
    g = &kekule;
  }
  const MolecularGraph &graph = *g;
  const std::vector<bool> ring = ring_bond_flags(graph);
  const auto n = static_cast<std::size_t>(graph.atom_count());

  std::vector<int> partner(n, -1);
  std::vector<bool> member(n, false);
  for (int i = 0; i < graph.atom_count(); ++i) {
    const Atom &a = graph.atom(i);
    if (!internal::has_aromatic_spelling(a.element))
      continue;
    int doubles = 0, other = -1, double_bond = -1;
    bool triple = false;
    for (const Neighbor &nb : graph.neighbors(i)) {
      BondOrder o = graph.bond(nb.bond).order;
      if (o == BondOrder::kDouble) {
        ++doubles;
        other = nb.atom;
        double_bond = nb.bond;
      } else if (o == BondOrder::kTriple) {
        triple = true;
      }
    }
    if (doubles != 1 || triple || !ring[static_cast<std::size_t>(double_bond)])
      continue;

    // The parser only assigns a double bond to an aromatic atom that has a
    // free valence once every delocalized bond is counted as single.
    int sum = graph.bond_order_sum(i);
    int single_sum = sum - 1;
    bool needs_double;
    if (internal::writes_as_bare_atom(graph, i)) {
      needs_double = implicit_hydrogens(a.element, single_sum) >= 1;
    } else {
      needs_double = max_valence(a.element, a.formal_charge) - single_sum - a.explicit_hydrogens >= 1;
    }
    if (!needs_double)
      continue;
    member[static_cast<std::size_t>(i)] = true;
    partner[static_cast<std::size_t>(i)] = other;
  }

  auto degree = [&](int i) {
    int d = 0;
    for (const Neighbor &nb : graph.neighbors(i)) {
      if (ring[static_cast<std::size_t>(nb.bond)] && member[static_cast<std::size_t>(nb.atom)])
        ++d;
    }
    return d;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < graph.atom_count(); ++i) {
      auto ui = static_cast<std::size_t>(i);
      if (!member[ui])
        continue;
      int p = partner[ui];
      if (!member[static_cast<std::size_t>(p)] || degree(i) < 2) {
        member[ui] = false;
        member[static_cast<std::size_t>(p)] = false;
        changed = true;
      }
    }
  }

  std::vector<bool> flags(static_cast<std::size_t>(graph.bond_count()), false);
  for (int b = 0; b < graph.bond_count(); ++b) {
    const Bond &bd = graph.bond(b);
    flags[static_cast<std::size_t>(b)] = ring[static_cast<std::size_t>(b)]
                                         && member[static_cast<std::size_t>(bd.begin)]
                                         && member[static_cast<std::size_t>(bd.end)];
  }
  return flags;
}

namespace internal {
namespace {

class PerfectMatcher {
 public:
  PerfectMatcher(const std::vector<std::vector<std::pair<int, int>>> &adj)
      : adj_(adj), mate_(adj.size(), -1), via_(adj.size(), -1) { }

  bool solve() { return extend(); }

  int bond_of(int node) const { return via_[static_cast<std::size_t>(node)]; }

 private:
  bool extend() {
    // Most constrained unmatched node first keeps backtracking shallow.
    int best = -1;
    int best_options = 0;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      if (mate_[i] >= 0)
        continue;
      int options = 0;
      for (auto [nbr, bond] : adj_[i]) {
        if (mate_[static_cast<std::size_t>(nbr)] < 0)
          ++options;
      }
      if (best < 0 || options < best_options) {
        best = static_cast<int>(i);
        best_options = options;
      }
    }
    if (best < 0)
      return true;
    if (best_options == 0)
      return false;

    auto b = static_cast<std::size_t>(best);
    for (auto [nbr, bond] : adj_[b]) {
      auto u = static_cast<std::size_t>(nbr);
      if (mate_[u] >= 0)
        continue;
      mate_[b] = nbr;
      mate_[u] = best;
      via_[b] = via_[u] = bond;
      if (extend())
        return true;
      mate_[b] = mate_[u] = -1;
      via_[b] = via_[u] = -1;
    }
    return false;
  }

  const std::vector<std::vector<std::pair<int, int>>> &adj_;
  std::vector<int> mate_;
  std::vector<int> via_;
};

}  // namespace

void assign_kekule(MolecularGraph &graph, const std::vector<bool> &needs_double) {
  std::vector<int> node_of(static_cast<std::size_t>(graph.atom_count()), -1);
  std::vector<int> atom_of;
  for (int i = 0; i < graph.atom_count(); ++i) {
    if (needs_double[static_cast<std::size_t>(i)]) {
      node_of[static_cast<std::size_t>(i)] = static_cast<int>(atom_of.size());
      atom_of.push_back(i);
    }
  }
  std::vector<std::vector<std::pair<int, int>>> adj(atom_of.size());
  for (int b = 0; b < graph.bond_count(); ++b) {
    const Bond &bd = graph.bond(b);
    if (bd.order != BondOrder::kAromatic)
      continue;
    int u = node_of[static_cast<std::size_t>(bd.begin)];
    int v = node_of[static_cast<std::size_t>(bd.end)];
    if (u < 0 || v < 0)
      continue;
    adj[static_cast<std::size_t>(u)].push_back({ v, b });
    adj[static_cast<std::size_t>(v)].push_back({ u, b });
  }

  PerfectMatcher matcher(adj);
  if (!matcher.solve())
    throw Error(ErrorCode::kKekulizationFailed,
                "no alternating bond assignment for the aromatic system");

  for (int b = 0; b < graph.bond_count(); ++b) {
    if (graph.bond(b).order == BondOrder::kAromatic)
      graph.set_bond_order(b, BondOrder::kSingle);
  }
  for (std::size_t i = 0; i < atom_of.size(); ++i)
    graph.set_bond_order(matcher.bond_of(static_cast<int>(i)), BondOrder::kDouble);
}

}  // namespace internal

void kekulize(MolecularGraph &graph) {
  std::vector<bool> needs(static_cast<std::size_t>(graph.atom_count()), false);
  for (int i = 0; i < graph.atom_count(); ++i) {
    int aromatic_bonds = 0, single_sum = 0;
    for (const Neighbor &nb : graph.neighbors(i)) {
      BondOrder o = graph.bond(nb.bond).order;
      if (o == BondOrder::kAromatic) {
        ++aromatic_bonds;
        single_sum += 1;
      } else {
        single_sum += static_cast<int>(o);
      }
    }
    if (aromatic_bonds == 0)
      continue;
    const Atom &a = graph.atom(i);
    needs[static_cast<std::size_t>(i)] =
        max_valence(a.element, a.formal_charge) - single_sum - a.explicit_hydrogens >= 1;
  }
  internal::assign_kekule(graph, needs);
}

}  // namespace biocorpus
