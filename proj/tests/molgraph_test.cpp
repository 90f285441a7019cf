//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "biocorpus/error.hpp"
#include "biocorpus/molgraph.hpp"
#include "test_support.hpp"

using namespace biocorpus;

namespace {

ErrorCode parse_error(const std::string &s) {
  try {
    parse_smiles(s);
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << s;
  return ErrorCode::kInvalidArgument;
}

int count_element(const MolecularGraph &g, const std::string &e) {
  return static_cast<int>(std::count_if(g.atoms().begin(), g.atoms().end(),
                                        [&](const Atom &a) { return a.element == e; }));
}

int count_order(const MolecularGraph &g, BondOrder o) {
  return static_cast<int>(std::count_if(g.bonds().begin(), g.bonds().end(),
                                        [&](const Bond &b) { return b.order == o; }));
}

// Same graph with atoms renumbered: new index of old atom i is perm[i].
MolecularGraph permute(const MolecularGraph &g, const std::vector<int> &perm) {
  std::vector<int> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    inverse[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  MolecularGraph out;
  for (int old : inverse)
    out.add_atom(g.atom(old));
  std::vector<int> bonds(static_cast<std::size_t>(g.bond_count()));
  std::iota(bonds.begin(), bonds.end(), 0);
  std::reverse(bonds.begin(), bonds.end());
  for (int b : bonds) {
    const Bond &bd = g.bond(b);
    out.add_bond(perm[static_cast<std::size_t>(bd.end)], perm[static_cast<std::size_t>(bd.begin)],
                 bd.order);
  }
  return out;
}

// Brute-force isomorphism certificate: lexicographically smallest encoding
// of (labels, bond matrix) over every atom permutation.
std::string brute_certificate(const MolecularGraph &g) {
  const int n = g.atom_count();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string enc;
    for (int i = 0; i < n; ++i) {
      const Atom &a = g.atom(perm[static_cast<std::size_t>(i)]);
      enc += a.element + ":" + std::to_string(a.explicit_hydrogens) + ";";
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto b = g.find_bond(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        enc += b ? static_cast<char>('0' + static_cast<int>(g.bond(*b).order)) : '0';
      }
    }
    if (best.empty() || enc < best)
      best = enc;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Kekule forms of one molecule differ only by single/double swaps that keep
// every atom's bond-order sum. The class certificate is the smallest brute
// certificate over all such reassignments.
std::string kekule_class_certificate(const MolecularGraph &g) {
  std::vector<int> flexible;
  for (int b = 0; b < g.bond_count(); ++b) {
    if (g.bond(b).order == BondOrder::kSingle || g.bond(b).order == BondOrder::kDouble)
      flexible.push_back(b);
  }
  std::string best;
  for (unsigned mask = 0; mask < (1U << flexible.size()); ++mask) {
    MolecularGraph alt = g;
    for (std::size_t k = 0; k < flexible.size(); ++k)
      alt.set_bond_order(flexible[k], (mask >> k) & 1U ? BondOrder::kDouble : BondOrder::kSingle);
    bool same_sums = true;
    for (int i = 0; i < g.atom_count() && same_sums; ++i)
      same_sums = alt.bond_order_sum(i) == g.bond_order_sum(i);
    if (!same_sums)
      continue;
    std::string cert = brute_certificate(alt);
    if (best.empty() || cert < best)
      best = cert;
  }
  return best;
}

std::vector<std::string> corpus() { return testdata::read_lines(testdata::data_path("molecules.smi")); }

}  // namespace

TEST(Elements, ValenceTable) {
  EXPECT_EQ(allowed_valences("C", 0), (std::vector<int>{ 4 }));
  EXPECT_EQ(allowed_valences("N", 0), (std::vector<int>{ 3 }));
  EXPECT_EQ(allowed_valences("N", 1), (std::vector<int>{ 4 }));
  EXPECT_EQ(allowed_valences("O", -1), (std::vector<int>{ 1 }));
  EXPECT_EQ(allowed_valences("P", 0), (std::vector<int>{ 3, 5 }));
  EXPECT_EQ(allowed_valences("S", 0), (std::vector<int>{ 2, 4, 6 }));
  EXPECT_EQ(allowed_valences("Br", 0), (std::vector<int>{ 1 }));
  EXPECT_EQ(allowed_valences("B", 0), (std::vector<int>{ 3 }));
  EXPECT_EQ(implicit_hydrogens("S", 3), 1);
  EXPECT_EQ(implicit_hydrogens("C", 5), 0);
  EXPECT_EQ(atomic_number("Br"), 35);
  EXPECT_EQ(atomic_number("Zz"), 0);
}

TEST(Parse, TwoCarbons) {
  MolecularGraph g = parse_smiles("CC");
  ASSERT_EQ(g.atom_count(), 2);
  ASSERT_EQ(g.bond_count(), 1);
  EXPECT_EQ(g.bond(0).order, BondOrder::kSingle);
  EXPECT_EQ(g.atom(0).explicit_hydrogens, 3);
}

TEST(Parse, BromineIsOneAtom) {
  MolecularGraph g = parse_smiles("CBr");
  ASSERT_EQ(g.atom_count(), 2);
  EXPECT_EQ(g.atom(1).element, "Br");
  EXPECT_EQ(count_element(g, "B"), 0);
  MolecularGraph cl = parse_smiles("ClCCl");
  EXPECT_EQ(count_element(cl, "Cl"), 2);
  EXPECT_EQ(count_element(cl, "C"), 1);
}

TEST(Parse, KekuleBenzene) {
  MolecularGraph g = parse_smiles("C1=CC=CC=C1");
  EXPECT_EQ(g.atom_count(), 6);
  EXPECT_EQ(g.bond_count(), 6);
  EXPECT_EQ(count_order(g, BondOrder::kDouble), 3);
  EXPECT_EQ(count_order(g, BondOrder::kSingle), 3);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(g.neighbors(i).size(), 2U);
    EXPECT_EQ(g.bond_order_sum(i), 3);
    EXPECT_EQ(g.atom(i).explicit_hydrogens, 1);
  }
}

TEST(Parse, AromaticInputIsKekulized) {
  MolecularGraph g = parse_smiles("c1ccncc1");
  EXPECT_FALSE(g.has_aromatic_bonds());
  EXPECT_EQ(count_order(g, BondOrder::kDouble), 3);
  EXPECT_EQ(g.atom(3).explicit_hydrogens, 0);
  EXPECT_TRUE(check_valence(g).empty());

  MolecularGraph pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(count_order(pyrrole, BondOrder::kDouble), 2);
  EXPECT_EQ(canonical_smiles("c1cc[nH]c1"), canonical_smiles("C1=CNC=C1"));
  EXPECT_EQ(canonical_smiles("c1ccc2ccccc2c1"), canonical_smiles("C1=CC2=CC=CC=C2C=C1"));
}

TEST(Parse, BracketAtoms) {
  MolecularGraph g = parse_smiles("[NH4+]");
  EXPECT_EQ(g.atom(0).formal_charge, 1);
  EXPECT_EQ(g.atom(0).explicit_hydrogens, 4);
  MolecularGraph br = parse_smiles("[Br-]");
  EXPECT_EQ(br.atom(0).element, "Br");
  EXPECT_EQ(br.atom(0).formal_charge, -1);
  EXPECT_EQ(parse_smiles("[O--]").atom(0).formal_charge, -2);
  EXPECT_EQ(parse_smiles("[Fe+3]").atom(0).formal_charge, 3);
  EXPECT_EQ(parse_smiles("[Se]").atom(0).element, "Se");
}

TEST(Parse, StereoIsDiscarded) {
  SmilesParse p = parse_smiles_detailed("F/C=C/F");
  EXPECT_TRUE(p.stereo_discarded);
  EXPECT_EQ(write_smiles(p.graph), canonical_smiles("FC=CF"));
  SmilesParse q = parse_smiles_detailed("N[C@@H](C)C(=O)O");
  EXPECT_TRUE(q.stereo_discarded);
  EXPECT_EQ(q.graph.atom(1).explicit_hydrogens, 1);
  EXPECT_FALSE(parse_smiles_detailed("CCO").stereo_discarded);
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("C("), ErrorCode::kUnbalancedDelimiter);
  EXPECT_EQ(parse_error("C1CC"), ErrorCode::kUnbalancedDelimiter);
  EXPECT_EQ(parse_error("CC)"), ErrorCode::kUnbalancedDelimiter);
  EXPECT_EQ(parse_error("[CH4"), ErrorCode::kUnbalancedDelimiter);
  EXPECT_EQ(parse_error(""), ErrorCode::kEmptyInput);
  EXPECT_EQ(parse_error("   "), ErrorCode::kEmptyInput);
  EXPECT_EQ(parse_error("Xx"), ErrorCode::kUnknownElement);
  EXPECT_EQ(parse_error("[Zz]"), ErrorCode::kUnknownElement);
  EXPECT_EQ(parse_error("C*"), ErrorCode::kUnknownElement);
  EXPECT_EQ(parse_error("[13CH4]"), ErrorCode::kUnsupportedFeature);
  EXPECT_EQ(parse_error("[CH4:1]"), ErrorCode::kUnsupportedFeature);
  EXPECT_EQ(parse_error("C$C"), ErrorCode::kUnsupportedFeature);
  EXPECT_EQ(parse_error("C==C"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("C11"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("C12CC12"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("c1cccc1"), ErrorCode::kKekulizationFailed);
}

TEST(Parse, WhitespaceAndFragments) {
  MolecularGraph g = parse_smiles("  [Na+].[Cl-]\n");
  EXPECT_EQ(g.atom_count(), 2);
  EXPECT_EQ(g.bond_count(), 0);
  EXPECT_EQ(parse_smiles("C%12CC%12").bond_count(), 3);
}

TEST(Valence, Examples) {
  EXPECT_TRUE(check_valence(parse_smiles("CC")).empty());
  EXPECT_TRUE(check_valence(parse_smiles("O=C=O")).empty());

  MolecularGraph g;
  int c = g.add_atom({ "C", 0, 0, false });
  for (int i = 0; i < 5; ++i)
    g.add_bond(c, g.add_atom({ "F", 0, 0, false }), BondOrder::kSingle);
  auto v = check_valence(g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0], (ValenceViolation{ 0, 5, 4 }));
}

TEST(Valence, CorpusIsValid) {
  for (const std::string &s : corpus())
    EXPECT_TRUE(check_valence(parse_smiles(s)).empty()) << s;
}

TEST(Graph, InvalidConstruction) {
  MolecularGraph g;
  EXPECT_THROW(g.add_atom({ "Zz", 0, 0, false }), Error);
  EXPECT_THROW(g.add_atom({ "C", 5, 0, false }), Error);
  EXPECT_THROW(g.add_atom({ "C", 0, 10, false }), Error);
  g.add_atom({ "C", 0, 0, false });
  g.add_atom({ "C", 0, 0, false });
  EXPECT_THROW(g.add_bond(0, 0, BondOrder::kSingle), Error);
  EXPECT_THROW(g.add_bond(0, 2, BondOrder::kSingle), Error);
  g.add_bond(0, 1, BondOrder::kSingle);
  EXPECT_THROW(g.add_bond(1, 0, BondOrder::kDouble), Error);
}

TEST(Graph, RingBonds) {
  MolecularGraph g = parse_smiles("C1CC1CC");
  auto ring = ring_bond_flags(g);
  int ring_count = static_cast<int>(std::count(ring.begin(), ring.end(), true));
  EXPECT_EQ(ring_count, 3);
}

TEST(Write, Basics) {
  EXPECT_EQ(write_smiles(parse_smiles("CC")), "CC");
  EXPECT_EQ(write_smiles(MolecularGraph{}), "");
  EXPECT_EQ(canonical_smiles("OCC"), canonical_smiles("CCO"));
  EXPECT_EQ(canonical_smiles("OCC"), "CCO");
  EXPECT_EQ(write_smiles(parse_smiles("[NH4+]")), "[NH4+]");
  EXPECT_EQ(write_smiles(parse_smiles("C[S](C)(=O)=O")), "CS(C)(=O)=O");

  MolecularGraph bad;
  int c = bad.add_atom({ "C", 0, 0, false });
  for (int i = 0; i < 5; ++i)
    bad.add_bond(c, bad.add_atom({ "F", 0, 0, false }), BondOrder::kSingle);
  try {
    write_smiles(bad);
    FAIL() << "expected InvalidGraph";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidGraph);
  }
}

TEST(Write, AromaticOutputIsKekuleInvariant) {
  std::string a = canonical_smiles("C1=CC=CC=C1");
  std::string b = canonical_smiles("C1C=CC=CC=1");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, "c1ccccc1");
  // A single bond between two aromatic rings stays explicit.
  EXPECT_EQ(canonical_smiles("c1ccccc1-c1ccccc1"), canonical_smiles("C1=CC=C(C=C1)C1=CC=CC=C1"));
  EXPECT_NE(canonical_smiles("c1ccccc1-c1ccccc1").find('-'), std::string::npos);
  // An isolated ring double bond is not delocalized.
  EXPECT_EQ(canonical_smiles("C1=CCCCC1"), "C1=CCCCC1");
}

TEST(Write, NonCanonicalKeepsIndexOrder) {
  MolecularGraph g = parse_smiles("OCC");
  std::string s = write_smiles(g, false);
  EXPECT_EQ(s, "OCC");
}

TEST(Canonical, SingleAtom) {
  MolecularGraph g = parse_smiles("[Na+]");
  EXPECT_EQ(canonicalize(g), g);
}

TEST(Canonical, BenzeneAllRotationsAndReflections) {
  MolecularGraph base = parse_smiles("C1=CC=CC=C1");
  MolecularGraph reference = canonicalize(base);
  int checked = 0;
  for (int shift = 0; shift < 6; ++shift) {
    for (int dir : { 1, -1 }) {
      std::vector<int> perm(6);
      for (int i = 0; i < 6; ++i)
        perm[static_cast<std::size_t>(i)] = ((dir * i + shift) % 6 + 6) % 6;
      MolecularGraph moved = permute(base, perm);
      EXPECT_EQ(canonicalize(moved), reference);
      EXPECT_EQ(write_smiles(moved), write_smiles(base));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 12);
}

// Every valence-valid graph on up to four atoms over {C, N, O, F}: canonical
// SMILES agree exactly when the brute-force Kekule class certificates agree.
TEST(Canonical, ExhaustiveSmallGraphs) {
  const std::vector<std::string> elements = { "C", "N", "O", "F" };
  std::map<std::string, std::set<std::string>> by_cert;
  std::map<std::string, std::set<std::string>> by_smiles;
  int graphs = 0;
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    const int max_order = n <= 3 ? 3 : 2;
    int label_count = 1;
    for (int i = 0; i < n; ++i)
      label_count *= 4;
    int bond_count = 1;
    for (int i = 0; i < pairs; ++i)
      bond_count *= max_order + 1;
    for (int labels = 0; labels < label_count; ++labels) {
      for (int bonds = 0; bonds < bond_count; ++bonds) {
        MolecularGraph g;
        int l = labels;
        for (int i = 0; i < n; ++i) {
          g.add_atom({ elements[static_cast<std::size_t>(l % 4)], 0, 0, false });
          l /= 4;
        }
        int b = bonds;
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            int order = b % (max_order + 1);
            b /= max_order + 1;
            if (order > 0)
              g.add_bond(i, j, static_cast<BondOrder>(order));
          }
        }
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          int sum = g.bond_order_sum(i);
          if (sum > max_valence(g.atom(i).element, 0)) {
            ok = false;
            break;
          }
          g.set_hydrogens(i, implicit_hydrogens(g.atom(i).element, sum));
        }
        if (!ok)
          continue;
        ++graphs;
        std::string cert = kekule_class_certificate(g);
        std::string smiles = write_smiles(g);
        by_cert[cert].insert(smiles);
        by_smiles[smiles].insert(cert);
      }
    }
  }
  EXPECT_GT(graphs, 10000);
  for (const auto &[cert, smiles] : by_cert)
    EXPECT_EQ(smiles.size(), 1U) << "isomorphic graphs with different output: " << *smiles.begin();
  for (const auto &[smiles, certs] : by_smiles)
    EXPECT_EQ(certs.size(), 1U) << "non-isomorphic graphs share " << smiles;
}

TEST(Canonical, CorpusRoundTripIdempotentAndShuffleInvariant) {
  std::mt19937_64 rng(20240611);
  for (const std::string &s : corpus()) {
    MolecularGraph g = parse_smiles(s);
    std::string c1 = write_smiles(g);
    MolecularGraph back = parse_smiles(c1);
    EXPECT_EQ(back.atom_count(), g.atom_count()) << s;
    EXPECT_EQ(back.bond_count(), g.bond_count()) << s;
    EXPECT_TRUE(check_valence(back).empty()) << s;
    EXPECT_EQ(write_smiles(back), c1) << s;
    EXPECT_EQ(canonicalize(canonicalize(g)), canonicalize(g)) << s;

    std::vector<int> perm(static_cast<std::size_t>(g.atom_count()));
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 3; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      EXPECT_EQ(write_smiles(permute(g, perm)), c1) << s;
    }
  }
}

TEST(Canonical, RoundTripPreservesElementAndHydrogenCounts) {
  for (const std::string &s : corpus()) {
    MolecularGraph g = parse_smiles(s);
    MolecularGraph back = parse_smiles(write_smiles(g, false));
    std::multiset<std::string> before, after;
    for (const Atom &a : g.atoms())
      before.insert(a.element + std::to_string(a.explicit_hydrogens) + "/" + std::to_string(a.formal_charge));
    for (const Atom &a : back.atoms())
      after.insert(a.element + std::to_string(a.explicit_hydrogens) + "/" + std::to_string(a.formal_charge));
    EXPECT_EQ(before, after) << s;
  }
}

TEST(Canonical, TwoLetterIntegrityOnHalogens) {
  for (const std::string &s : testdata::read_lines(testdata::data_path("halogens.smi"))) {
    MolecularGraph g = parse_smiles(s);
    std::size_t br = 0, cl = 0;
    for (std::size_t p = s.find("Br"); p != std::string::npos; p = s.find("Br", p + 1))
      ++br;
    for (std::size_t p = s.find("Cl"); p != std::string::npos; p = s.find("Cl", p + 1))
      ++cl;
    EXPECT_EQ(count_element(g, "B"), 0) << s;
    EXPECT_EQ(static_cast<std::size_t>(count_element(g, "Br")), br) << s;
    EXPECT_EQ(static_cast<std::size_t>(count_element(g, "Cl")), cl) << s;
  }
}
