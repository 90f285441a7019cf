//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/metrics.hpp"

namespace biocorpus {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the running state
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

bool Fingerprint::test(int bit) const {
  auto b = static_cast<std::size_t>(bit);
  return (words[b / 64] >> (b % 64)) & 1U;
}

int Fingerprint::popcount() const {
  int n = 0;
  for (std::uint64_t w : words)
    n += std::popcount(w);
  return n;
}

Fingerprint morgan_fingerprint(const MolecularGraph &input, int radius, int width) {
  if (radius < 0)
    throw Error(ErrorCode::kInvalidArgument, "radius must be non-negative");
  if (width < 64 || !std::has_single_bit(static_cast<unsigned>(width)))
    throw Error(ErrorCode::kInvalidArgument, "width must be a power of two of at least 64");
  if (!check_valence(input).empty())
    throw Error(ErrorCode::kInvalidGraph, "valence check failed");

  MolecularGraph graph = input;
  if (graph.has_aromatic_bonds())
    kekulize(graph);
  const std::vector<bool> ring = ring_bond_flags(graph);
  const std::vector<bool> deloc = delocalized_bond_flags(graph);

  const auto n = static_cast<std::size_t>(graph.atom_count());
  std::vector<bool> in_ring(n, false);
  std::vector<bool> in_deloc(n, false);
  for (int b = 0; b < graph.bond_count(); ++b) {
    const Bond &bond = graph.bond(b);
    if (ring[static_cast<std::size_t>(b)])
      in_ring[static_cast<std::size_t>(bond.begin)] = in_ring[static_cast<std::size_t>(bond.end)] = true;
    if (deloc[static_cast<std::size_t>(b)])
      in_deloc[static_cast<std::size_t>(bond.begin)] = in_deloc[static_cast<std::size_t>(bond.end)] = true;
  }

  Fingerprint fp;
  fp.radius = radius;
  fp.width = width;
  fp.words.assign(static_cast<std::size_t>(width) / 64, 0);
  auto set = [&](std::uint64_t id) {
    std::uint64_t bit = id & static_cast<std::uint64_t>(width - 1);
    fp.words[bit / 64] |= std::uint64_t{ 1 } << (bit % 64);
  };

  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom &a = graph.atom(static_cast<int>(i));
    std::uint64_t h = 0;
    h = mix(h, static_cast<std::uint64_t>(atomic_number(a.element)));
    h = mix(h, static_cast<std::uint64_t>(graph.heavy_degree(static_cast<int>(i))));
    h = mix(h, static_cast<std::uint64_t>(a.explicit_hydrogens));
    h = mix(h, static_cast<std::uint64_t>(a.formal_charge + 16));
    h = mix(h, in_ring[i] ? 1U : 0U);
    h = mix(h, in_deloc[i] ? 1U : 0U);
    ids[i] = h;
    set(h);
  }

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
      for (const Neighbor &nb : graph.neighbors(static_cast<int>(i))) {
        auto b = static_cast<std::size_t>(nb.bond);
        std::uint64_t type = deloc[b] ? 4U : static_cast<std::uint64_t>(graph.bond(nb.bond).order);
        env.emplace_back(type, ids[static_cast<std::size_t>(nb.atom)]);
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = mix(static_cast<std::uint64_t>(r), ids[i]);
      for (const auto &[type, id] : env)
        h = mix(mix(h, type), id);
      next[i] = h;
      set(h);
    }
    ids = std::move(next);
  }
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.width != b.width || a.words.size() != b.words.size())
    throw Error(ErrorCode::kWidthMismatch,
                "fingerprint widths " + std::to_string(a.width) + " and " + std::to_string(b.width));
  int both = 0;
  int either = 0;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    both += std::popcount(a.words[i] & b.words[i]);
    either += std::popcount(a.words[i] | b.words[i]);
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace biocorpus
