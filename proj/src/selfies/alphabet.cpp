//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"
#include "biocorpus/selfies.hpp"
#include "selfies/tokens.hpp"

namespace biocorpus {
namespace internal {
namespace {

constexpr int kMaxHydrogens = 4;

const char *prefix(int order) {
  switch (order) {
  case 2: return "=";
  case 3: return "#";
  default: return "";
  }
}

struct Tables {
  std::unordered_map<std::string, TokenInfo> info;
  std::vector<SelfiesToken> alphabet;

  Tables() {
    for (const std::string &e : selfies_elements()) {
      for (int charge : { 0, 1, -1 }) {
        int max = max_valence(e, charge);
        for (int h = -1; h <= kMaxHydrogens; ++h) {
          if (h == -1 && charge != 0)
            continue;
          int capacity = max - std::max(h, 0);
          if (capacity < 0)
            continue;
          for (int order = 1; order <= 3; ++order) {
            if (order > 1 && capacity < order)
              continue;
            TokenInfo t;
            t.kind = TokenKind::kAtom;
            t.order = order;
            t.element = e;
            t.charge = charge;
            t.hydrogens = h;
            t.capacity = capacity;
            add(atom_token_text(order, e, charge, h), t);
          }
        }
      }
    }
    for (int digits = 1; digits <= 3; ++digits) {
      for (int order = 1; order <= 3; ++order) {
        TokenInfo b;
        b.kind = TokenKind::kBranch;
        b.order = order;
        b.digits = digits;
        add(std::string("[") + prefix(order) + "Branch" + std::to_string(digits) + "]", b);
        TokenInfo r = b;
        r.kind = TokenKind::kRing;
        add(std::string("[") + prefix(order) + "Ring" + std::to_string(digits) + "]", r);
      }
    }
    std::sort(alphabet.begin(), alphabet.end(),
              [](const SelfiesToken &a, const SelfiesToken &b) { return a.text < b.text; });
  }

  void add(const std::string &text, const TokenInfo &t) {
    if (info.emplace(text, t).second)
      alphabet.push_back({ text, t.kind });
  }
};

const Tables &tables() {
  static const Tables t;
  return t;
}

}  // namespace

const TokenInfo *lookup_token(std::string_view text) {
  const auto &info = tables().info;
  auto it = info.find(std::string(text));
  return it == info.end() ? nullptr : &it->second;
}

std::string atom_token_text(int order, std::string_view element, int charge, int hydrogens) {
  std::string out = "[";
  out += prefix(order);
  out += element;
  if (hydrogens > 0)
    out += "H" + std::to_string(hydrogens);
  else if (hydrogens == 0 && charge == 0)
    out += "H0";
  if (charge > 0)
    out += "+" + std::to_string(charge);
  else if (charge < 0)
    out += "-" + std::to_string(-charge);
  return out + "]";
}

}  // namespace internal

const std::vector<std::string> &selfies_elements() {
  static const std::vector<std::string> kElements = { "B", "C", "N",  "O",  "P",
                                                      "S", "F", "Cl", "Br", "I" };
  return kElements;
}

const std::vector<SelfiesToken> &selfies_alphabet() { return internal::tables().alphabet; }

bool in_selfies_alphabet(std::string_view text) { return internal::lookup_token(text) != nullptr; }

const std::vector<std::string> &selfies_index_symbols() {
  static const std::vector<std::string> kIndex = {
    "[C]",      "[Ring1]", "[Ring2]", "[Branch1]", "[=Branch1]", "[#Branch1]",
    "[Branch2]", "[=Branch2]", "[#Branch2]", "[O]", "[N]", "[=N]", "[=C]", "[#C]", "[S]", "[P]",
  };
  return kIndex;
}

int selfies_index_value(std::string_view text) {
  const auto &symbols = selfies_index_symbols();
  auto it = std::find(symbols.begin(), symbols.end(), text);
  return it == symbols.end() ? 0 : static_cast<int>(it - symbols.begin());
}

SelfiesString parse_selfies(std::string_view text) {
  SelfiesString out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      out.push_back({ ".", TokenKind::kSeparator });
      ++i;
      continue;
    }
    if (text[i] != '[')
      throw Error(ErrorCode::kUnknownToken, "text outside brackets at offset " + std::to_string(i)
                                                + " in '" + std::string(text) + "'");
    std::size_t close = text.find(']', i);
    std::size_t nested = text.find('[', i + 1);
    if (close == std::string_view::npos || (nested != std::string_view::npos && nested < close))
      throw Error(ErrorCode::kUnknownToken,
                  "unterminated token at offset " + std::to_string(i) + " in '" + std::string(text) + "'");
    std::string_view token = text.substr(i, close - i + 1);
    const internal::TokenInfo *t = internal::lookup_token(token);
    if (!t)
      throw Error(ErrorCode::kUnknownToken, "'" + std::string(token) + "' is not in the alphabet");
    out.push_back({ std::string(token), t->kind });
    i = close + 1;
  }
  return out;
}

std::string format_selfies(const SelfiesString &tokens) {
  std::string out;
  for (const SelfiesToken &t : tokens)
    out += t.text;
  return out;
}

SelfiesString random_selfies(std::uint64_t seed, std::size_t length) {
  const auto &alphabet = selfies_alphabet();
  Rng rng(seed);
  SelfiesString out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    out.push_back(alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))]);
  return out;
}

std::string smiles_to_selfies(std::string_view smiles) {
  return format_selfies(encode_selfies(parse_smiles(smiles)));
}

std::string selfies_to_smiles(std::string_view selfies) {
  return write_smiles(decode_selfies(selfies), true);
}

}  // namespace biocorpus
