//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/molgraph.hpp"
#include "molgraph/internal.hpp"

namespace biocorpus {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

struct RingOpen {
  int atom = -1;
  std::optional<BondOrder> order;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { }

  SmilesParse run() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '[') {
        bracket_atom();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
        organic_atom();
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\'
                 || c == '$') {
        bond_symbol(c);
      } else if (c == '(') {
        if (prev_ < 0)
          fail(ErrorCode::kSyntaxError, "branch opened before any atom");
        if (pending_)
          fail(ErrorCode::kSyntaxError, "bond symbol before '('");
        branches_.push_back(prev_);
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty())
          fail(ErrorCode::kUnbalancedDelimiter, "')' without matching '('");
        if (pending_)
          fail(ErrorCode::kSyntaxError, "bond symbol before ')'");
        prev_ = branches_.back();
        branches_.pop_back();
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        ring_closure(c - '0');
        ++pos_;
      } else if (c == '%') {
        if (!std::isdigit(static_cast<unsigned char>(at(pos_ + 1)))
            || !std::isdigit(static_cast<unsigned char>(at(pos_ + 2))))
          fail(ErrorCode::kSyntaxError, "'%' must be followed by two digits");
        ring_closure((at(pos_ + 1) - '0') * 10 + (at(pos_ + 2) - '0'));
        pos_ += 3;
      } else if (c == '.') {
        if (pending_)
          fail(ErrorCode::kSyntaxError, "bond symbol before '.'");
        if (prev_ < 0)
          fail(ErrorCode::kSyntaxError, "'.' without a preceding atom");
        prev_ = -1;
        ++pos_;
      } else {
        fail(ErrorCode::kSyntaxError, std::string("unexpected character '") + c + "'");
      }
    }
    if (pending_)
      fail(ErrorCode::kSyntaxError, "dangling bond symbol at end of input");
    if (!branches_.empty())
      fail(ErrorCode::kUnbalancedDelimiter, "unclosed branch");
    for (std::size_t d = 0; d < rings_.size(); ++d) {
      if (rings_[d].atom >= 0)
        fail(ErrorCode::kUnbalancedDelimiter, "unclosed ring bond " + std::to_string(d));
    }
    if (prev_ < 0)
      fail(ErrorCode::kSyntaxError, "input ends with '.'");
    assign_hydrogens();
    return { std::move(graph_), stereo_ };
  }

 private:
  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  [[noreturn]] void fail(ErrorCode code, const std::string &what) const {
    throw Error(code, what + " at offset " + std::to_string(pos_) + " in '"
                          + std::string(text_) + "'");
  }

  void bond_symbol(char c) {
    if (c == '$')
      fail(ErrorCode::kUnsupportedFeature, "quadruple bonds are not supported");
    if (prev_ < 0)
      fail(ErrorCode::kSyntaxError, "bond symbol without a preceding atom");
    if (pending_)
      fail(ErrorCode::kSyntaxError, "two bond symbols in a row");
    switch (c) {
    case '=': pending_ = BondOrder::kDouble; break;
    case '#': pending_ = BondOrder::kTriple; break;
    case ':': pending_ = BondOrder::kAromatic; break;
    case '/':
    case '\\':
      stereo_ = true;
      pending_ = BondOrder::kSingle;
      break;
    default: pending_ = BondOrder::kSingle; break;
    }
    ++pos_;
  }

  void organic_atom() {
    char c = text_[pos_];
    if (c == '*')
      fail(ErrorCode::kUnknownElement, "wildcard atom '*'");
    std::string element;
    bool aromatic = false;
    // Two-letter symbols first so "Br" is never read as B followed by r.
    if (c == 'B' && at(pos_ + 1) == 'r') {
      element = "Br";
    } else if (c == 'C' && at(pos_ + 1) == 'l') {
      element = "Cl";
    } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P' || c == 'S'
               || c == 'F' || c == 'I') {
      element = std::string(1, c);
    } else if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's') {
      element = std::string(1, static_cast<char>(std::toupper(c)));
      aromatic = true;
    } else {
      fail(ErrorCode::kUnknownElement, std::string("'") + c + "' is not an organic-subset atom");
    }
    pos_ += element.size();
    Atom atom;
    atom.element = element;
    atom.aromatic = aromatic;
    add(std::move(atom), true);
  }

  void bracket_atom() {
    std::size_t open = pos_++;
    if (std::isdigit(static_cast<unsigned char>(at(pos_))))
      fail(ErrorCode::kUnsupportedFeature, "isotopes are not supported");

    Atom atom;
    char c = at(pos_);
    if (c == '*')
      fail(ErrorCode::kUnknownElement, "wildcard atom '*'");
    if (std::islower(static_cast<unsigned char>(c))) {
      static constexpr std::array<std::string_view, 9> kAromatic = {
        "se", "as", "te", "b", "c", "n", "o", "p", "s"
      };
      bool found = false;
      for (std::string_view sym : kAromatic) {
        if (text_.substr(pos_, sym.size()) == sym) {
          atom.element = std::string(sym);
          atom.element[0] = static_cast<char>(std::toupper(atom.element[0]));
          atom.aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorCode::kUnknownElement, "unknown aromatic symbol");
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string two{ c, at(pos_ + 1) };
      if (std::islower(static_cast<unsigned char>(two[1])) && atomic_number(two) != 0) {
        atom.element = two;
        pos_ += 2;
      } else if (atomic_number(std::string(1, c)) != 0) {
        atom.element = std::string(1, c);
        pos_ += 1;
      } else {
        fail(ErrorCode::kUnknownElement, "unknown element symbol");
      }
    } else if (pos_ >= text_.size()) {
      fail(ErrorCode::kUnbalancedDelimiter, "unterminated bracket atom");
    } else {
      fail(ErrorCode::kUnknownElement, "missing element symbol in bracket atom");
    }

    if (at(pos_) == '@') {
      stereo_ = true;
      while (at(pos_) == '@')
        ++pos_;
      // Extended chirality classes such as @TH1 or @OH12.
      if (std::isupper(static_cast<unsigned char>(at(pos_)))
          && std::isupper(static_cast<unsigned char>(at(pos_ + 1)))) {
        pos_ += 2;
        while (std::isdigit(static_cast<unsigned char>(at(pos_))))
          ++pos_;
      }
    }

    if (at(pos_) == 'H') {
      ++pos_;
      int h = 1;
      if (std::isdigit(static_cast<unsigned char>(at(pos_)))) {
        h = at(pos_) - '0';
        ++pos_;
        if (std::isdigit(static_cast<unsigned char>(at(pos_))))
          fail(ErrorCode::kUnsupportedFeature, "hydrogen count above 9");
      }
      atom.explicit_hydrogens = h;
    }

    if (at(pos_) == '+' || at(pos_) == '-') {
      char sign = at(pos_);
      int magnitude = 1;
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(at(pos_)))) {
        magnitude = 0;
        while (std::isdigit(static_cast<unsigned char>(at(pos_)))) {
          magnitude = magnitude * 10 + (at(pos_) - '0');
          ++pos_;
          if (magnitude > 99)
            break;
        }
      } else {
        while (at(pos_) == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > 4)
        fail(ErrorCode::kUnsupportedFeature, "formal charge beyond 4");
      atom.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    if (at(pos_) == ':')
      fail(ErrorCode::kUnsupportedFeature, "atom classes are not supported");
    if (pos_ >= text_.size()) {
      pos_ = open;
      fail(ErrorCode::kUnbalancedDelimiter, "unterminated bracket atom");
    }
    if (at(pos_) != ']')
      fail(ErrorCode::kSyntaxError, std::string("unexpected '") + at(pos_) + "' in bracket atom");
    ++pos_;
    add(std::move(atom), false);
  }

  BondOrder implicit_order(int a, int b) const {
    return graph_.atom(a).aromatic && graph_.atom(b).aromatic ? BondOrder::kAromatic
                                                              : BondOrder::kSingle;
  }

  void add(Atom atom, bool bare) {
    int idx = graph_.add_atom(std::move(atom));
    bare_.push_back(bare);
    if (prev_ >= 0) {
      BondOrder order = pending_ ? *pending_ : implicit_order(prev_, idx);
      graph_.add_bond(prev_, idx, order);
    }
    pending_.reset();
    prev_ = idx;
  }

  void ring_closure(int digit) {
    if (prev_ < 0)
      fail(ErrorCode::kSyntaxError, "ring bond digit without a preceding atom");
    if (rings_.size() <= static_cast<std::size_t>(digit))
      rings_.resize(static_cast<std::size_t>(digit) + 1);
    RingOpen &slot = rings_[static_cast<std::size_t>(digit)];
    if (slot.atom < 0) {
      slot.atom = prev_;
      slot.order = pending_;
      pending_.reset();
      return;
    }
    if (slot.atom == prev_)
      fail(ErrorCode::kSyntaxError, "ring bond closes on its own atom");
    if (graph_.find_bond(slot.atom, prev_))
      fail(ErrorCode::kSyntaxError, "ring bond duplicates an existing bond");
    BondOrder order;
    if (slot.order && pending_ && *slot.order != *pending_)
      fail(ErrorCode::kSyntaxError, "conflicting ring bond orders");
    if (slot.order)
      order = *slot.order;
    else if (pending_)
      order = *pending_;
    else
      order = implicit_order(slot.atom, prev_);
    graph_.add_bond(slot.atom, prev_, order);
    slot = RingOpen{};
    pending_.reset();
  }

  void assign_hydrogens() {
    const int n = graph_.atom_count();
    if (graph_.has_aromatic_bonds()) {
      std::vector<bool> needs(static_cast<std::size_t>(n), false);
      for (int i = 0; i < n; ++i) {
        int aromatic_bonds = 0, single_sum = 0;
        for (const Neighbor &nb : graph_.neighbors(i)) {
          BondOrder o = graph_.bond(nb.bond).order;
          if (o == BondOrder::kAromatic) {
            ++aromatic_bonds;
            single_sum += 1;
          } else {
            single_sum += static_cast<int>(o);
          }
        }
        if (aromatic_bonds == 0)
          continue;
        const Atom &a = graph_.atom(i);
        if (bare_[static_cast<std::size_t>(i)])
          needs[static_cast<std::size_t>(i)] = implicit_hydrogens(a.element, single_sum) >= 1;
        else
          needs[static_cast<std::size_t>(i)] =
              max_valence(a.element, a.formal_charge) - single_sum - a.explicit_hydrogens >= 1;
      }
      internal::assign_kekule(graph_, needs);
    }
    for (int i = 0; i < n; ++i) {
      if (bare_[static_cast<std::size_t>(i)])
        graph_.set_hydrogens(i, implicit_hydrogens(graph_.atom(i).element, graph_.bond_order_sum(i)));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::vector<bool> bare_;
  std::vector<int> branches_;
  std::vector<RingOpen> rings_;
  std::optional<BondOrder> pending_;
  int prev_ = -1;
  bool stereo_ = false;
};

}  // namespace

SmilesParse parse_smiles_detailed(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty())
    throw Error(ErrorCode::kEmptyInput, "empty SMILES string");
  return Parser(body).run();
}

MolecularGraph parse_smiles(std::string_view text) { return parse_smiles_detailed(text).graph; }

}  // namespace biocorpus
