//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/selfies.hpp"
#include "selfies/tokens.hpp"

namespace biocorpus {
namespace {

using internal::TokenInfo;

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
constexpr int kDone = -1;  // derivation state after an atom with no bonds left

struct RingRequest {
  int left;
  int right;
  int order;
};

class Decoder {
 public:
  MolecularGraph run(const SelfiesString &tokens) {
    std::vector<const TokenInfo *> infos;
    infos.reserve(tokens.size());
    for (const SelfiesToken &t : tokens) {
      if (t.text == ".") {
        infos.push_back(nullptr);
        continue;
      }
      const TokenInfo *info = internal::lookup_token(t.text);
      if (!info)
        throw Error(ErrorCode::kUnknownToken, "'" + t.text + "' is not in the alphabet");
      infos.push_back(info);
    }

    std::size_t begin = 0;
    for (std::size_t i = 0; i <= tokens.size(); ++i) {
      if (i == tokens.size() || infos[i] == nullptr) {
        tokens_ = &tokens;
        infos_ = &infos;
        pos_ = begin;
        end_ = i;
        derive(kUnbounded, 0, -1);
        begin = i + 1;
      }
    }
    form_rings();

    for (std::size_t a = 0; a < bare_.size(); ++a) {
      if (bare_[a]) {
        int atom = static_cast<int>(a);
        graph_.set_hydrogens(atom, implicit_hydrogens(graph_.atom(atom).element, used_[a]));
      }
    }
    return std::move(graph_);
  }

 private:
  bool next(std::size_t &index) {
    if (pos_ >= end_)
      return false;
    index = pos_++;
    return true;
  }

  // Base-16 value of the next n symbols, most significant first. Missing
  // symbols past the end count as 0.
  int read_index(int n) {
    int value = 0;
    for (int k = 0; k < n; ++k) {
      std::size_t i;
      int digit = next(i) ? selfies_index_value((*tokens_)[i].text) : 0;
      value = value * 16 + digit;
    }
    return value;
  }

  int add_atom(const TokenInfo &t) {
    Atom atom;
    atom.element = t.element;
    atom.formal_charge = t.charge;
    atom.explicit_hydrogens = std::max(t.hydrogens, 0);
    int idx = graph_.add_atom(std::move(atom));
    capacity_.push_back(t.capacity);
    used_.push_back(0);
    bare_.push_back(t.hydrogens < 0);
    return idx;
  }

  void add_bond(int a, int b, int order) {
    graph_.add_bond(a, b, static_cast<BondOrder>(order));
    used_[static_cast<std::size_t>(a)] += order;
    used_[static_cast<std::size_t>(b)] += order;
  }

  std::size_t derive(std::size_t max_derive, int init_state, int root) {
    std::size_t derived = 0;
    int state = init_state;
    int prev = root;

    while (state != kDone && derived < max_derive) {
      std::size_t i;
      if (!next(i))
        break;
      ++derived;
      const TokenInfo &t = *(*infos_)[i];
      int next_state = state;

      if (t.kind == TokenKind::kBranch) {
        if (state > 1) {
          int branch_state = std::min(state - 1, t.order);
          next_state = state - branch_state;
          int q = read_index(t.digits);
          derived += static_cast<std::size_t>(t.digits)
                     + derive(static_cast<std::size_t>(q) + 1, branch_state, prev);
        }
      } else if (t.kind == TokenKind::kRing) {
        if (state != 0) {
          int order = std::min(t.order, state);
          int left = state - order;
          next_state = left == 0 ? kDone : left;
          int q = read_index(t.digits);
          derived += static_cast<std::size_t>(t.digits);
          rings_.push_back({ std::max(0, prev - (q + 1)), prev, order });
        }
      } else {
        int order = state == 0 ? 0 : std::min({ t.order, state, t.capacity });
        int left = t.capacity - order;
        next_state = left == 0 ? kDone : left;
        if (order == 0) {
          if (state == 0)
            prev = add_atom(t);
        } else {
          int atom = add_atom(t);
          add_bond(prev, atom, order);
          prev = atom;
        }
      }

      if (next_state == kDone)
        break;
      state = next_state;
    }

    while (derived < max_derive) {
      std::size_t i;
      if (!next(i))
        break;
      ++derived;
    }
    return derived;
  }

  void form_rings() {
    for (const RingRequest &r : rings_) {
      if (r.left == r.right)
        continue;
      int lfree = capacity_[static_cast<std::size_t>(r.left)] - used_[static_cast<std::size_t>(r.left)];
      int rfree = capacity_[static_cast<std::size_t>(r.right)] - used_[static_cast<std::size_t>(r.right)];
      if (lfree <= 0 || rfree <= 0)
        continue;
      int order = std::min({ r.order, lfree, rfree });
      if (auto existing = graph_.find_bond(r.left, r.right)) {
        int current = static_cast<int>(graph_.bond(*existing).order);
        int updated = std::min(current + order, 3);
        graph_.set_bond_order(*existing, static_cast<BondOrder>(updated));
        used_[static_cast<std::size_t>(r.left)] += updated - current;
        used_[static_cast<std::size_t>(r.right)] += updated - current;
      } else {
        add_bond(r.left, r.right, order);
      }
    }
  }

  const SelfiesString *tokens_ = nullptr;
  const std::vector<const TokenInfo *> *infos_ = nullptr;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  MolecularGraph graph_;
  std::vector<int> capacity_;
  std::vector<int> used_;
  std::vector<bool> bare_;
  std::vector<RingRequest> rings_;
};

}  // namespace

MolecularGraph decode_selfies(const SelfiesString &tokens) { return Decoder().run(tokens); }

MolecularGraph decode_selfies(std::string_view text) { return decode_selfies(parse_selfies(text)); }

}  // namespace biocorpus
