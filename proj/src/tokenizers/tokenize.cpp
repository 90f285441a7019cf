//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/tokenizers.hpp"

namespace biocorpus {
namespace {

// Byte length of the UTF-8 sequence starting with lead byte c. Stray
// continuation bytes count as one.
std::size_t code_point_length(unsigned char c) {
  if (c < 0x80 || (c & 0xC0) == 0x80)
    return 1;
  if ((c & 0xE0) == 0xC0)
    return 2;
  if ((c & 0xF0) == 0xE0)
    return 3;
  if ((c & 0xF8) == 0xF0)
    return 4;
  return 1;
}

bool is_boundary(std::string_view s, std::size_t pos) {
  return pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

}  // namespace

std::vector<std::string> tokenize_selfies_string(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      out.emplace_back(".");
      ++i;
      continue;
    }
    if (text[i] != '[')
      throw Error(ErrorCode::kStrayCharacter, "'" + std::string(1, text[i]) + "' outside brackets at offset "
                                                  + std::to_string(i));
    std::size_t close = text.find_first_of("[]", i + 1);
    if (close == std::string_view::npos || text[close] != ']')
      throw Error(ErrorCode::kUnbalancedBracket, "bracket opened at offset " + std::to_string(i) + " is not closed");
    out.emplace_back(text.substr(i, close - i + 1));
    i = close + 1;
  }
  return out;
}

bool is_accepted_residue(char c) noexcept {
  static constexpr std::string_view kResidues = "ACDEFGHIKLMNPQRSTVWYXBZUO";
  return kResidues.find(c) != std::string_view::npos;
}

std::vector<std::string> tokenize_fasta(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_accepted_residue(text[i]))
      throw Error(ErrorCode::kInvalidResidue, "'" + std::string(1, text[i]) + "' at offset " + std::to_string(i));
    out.push_back(std::string("<p>") + text[i]);
  }
  return out;
}

std::vector<std::string> tokenize_text(std::string_view text, const Vocabulary &vocab) {
  if (vocab.count(Modality::kText) == 0)
    throw Error(ErrorCode::kMissingTextVocab, "vocabulary has no text tokens");
  std::string s;
  s.reserve(text.size() * 2);
  for (char c : text) {
    if (c == ' ')
      s += kWordBoundary;
    else
      s += c;
  }
  const std::string unk(special::kUnk);
  std::vector<std::string> out;
  std::size_t pos = 0;
  const std::size_t longest = vocab.max_text_token_bytes();
  while (pos < s.size()) {
    std::size_t len = std::min(longest, s.size() - pos);
    bool matched = false;
    for (; len > 0; --len) {
      if (!is_boundary(s, pos + len))
        continue;
      std::string_view piece(s.data() + pos, len);
      auto id = vocab.find(piece);
      if (id && vocab.modality(*id) == Modality::kText) {
        out.emplace_back(piece);
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.push_back(unk);
      pos += std::min(code_point_length(static_cast<unsigned char>(s[pos])), s.size() - pos);
    }
  }
  return out;
}

std::string detokenize_text(const std::vector<std::string> &tokens) {
  std::string joined;
  for (const std::string &t : tokens)
    joined += t;
  std::string out;
  out.reserve(joined.size());
  for (std::size_t i = 0; i < joined.size();) {
    if (joined.compare(i, kWordBoundary.size(), kWordBoundary) == 0) {
      out += ' ';
      i += kWordBoundary.size();
    } else {
      out += joined[i++];
    }
  }
  return out;
}

std::vector<std::string> tokenize_mixed(std::string_view text, const Vocabulary &vocab) {
  std::vector<std::string> out;
  auto append = [&out](std::vector<std::string> &&part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find(special::kBom, pos);
    std::size_t stop = open == std::string_view::npos ? text.size() : open;
    if (stop > pos)
      append(tokenize_text(text.substr(pos, stop - pos), vocab));
    if (open == std::string_view::npos)
      break;
    std::size_t body = open + special::kBom.size();
    std::size_t close = text.find(special::kEom, body);
    if (close == std::string_view::npos)
      throw Error(ErrorCode::kUnbalancedBracket, "<bom> at offset " + std::to_string(open) + " has no <eom>");
    std::string_view content = text.substr(body, close - body);
    out.emplace_back(special::kBom);
    if (!content.empty() && content.front() == '[')
      append(tokenize_selfies_string(content));
    else
      append(tokenize_fasta(content));
    out.emplace_back(special::kEom);
    pos = close + special::kEom.size();
  }
  return out;
}

TokenSequence encode_ids(const std::vector<std::string> &tokens, const Vocabulary &vocab) {
  TokenSequence ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) {
    if (auto id = vocab.find(t)) {
      ids.push_back(*id);
      continue;
    }
    bool selfies_shape = t.size() >= 2 && t.front() == '[' && t.back() == ']';
    bool angle_shape = t.size() >= 2 && t.front() == '<' && t.back() == '>';
    bool amino_shape = t.rfind("<p>", 0) == 0;
    if (selfies_shape || angle_shape || amino_shape)
      throw Error(ErrorCode::kUnknownNonTextToken, "'" + t + "' is not in the vocabulary");
    ids.push_back(vocab.unk_id());
  }
  return ids;
}

std::vector<std::string> decode_ids(const TokenSequence &ids, const Vocabulary &vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids)
    out.push_back(vocab.token(id));
  return out;
}

}  // namespace biocorpus
