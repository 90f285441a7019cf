//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "biocorpus/error.hpp"
#include "biocorpus/io.hpp"
#include "biocorpus/tokenizers.hpp"

namespace biocorpus {
namespace {

constexpr std::array<Modality, 5> kModalities = {
  Modality::kText, Modality::kSelfies, Modality::kAminoAcid, Modality::kSpecial, Modality::kSentinel,
};

void check_token_text(const std::string &token) {
  if (token.empty())
    throw Error(ErrorCode::kMalformedVocabFile, "empty token");
  if (token.find_first_of("\t\n\r") != std::string::npos)
    throw Error(ErrorCode::kMalformedVocabFile, "token contains a tab or newline");
}

// "<M12>" -> 12, anything else -> 0.
int parse_sentinel(std::string_view token) {
  if (token.size() < 4 || token.substr(0, 2) != "<M" || token.back() != '>')
    return 0;
  std::string_view digits = token.substr(2, token.size() - 3);
  if (digits.empty() || digits.front() == '0')
    return 0;
  int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9' || value > 100000000)
      return 0;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::string_view modality_name(Modality m) noexcept {
  switch (m) {
  case Modality::kText: return "text";
  case Modality::kSelfies: return "selfies";
  case Modality::kAminoAcid: return "amino_acid";
  case Modality::kSpecial: return "special";
  case Modality::kSentinel: return "sentinel";
  }
  return "text";
}

std::optional<Modality> parse_modality(std::string_view name) noexcept {
  for (Modality m : kModalities)
    if (modality_name(m) == name)
      return m;
  return std::nullopt;
}

const std::vector<std::string> &special_tokens() {
  static const std::vector<std::string> tokens = {
    std::string(special::kPad),          std::string(special::kEos),
    std::string(special::kUnk),          std::string(special::kBom),
    std::string(special::kEom),          std::string(special::kMoleculeName),
    std::string(special::kDescription),  std::string(special::kProteinName),
    std::string(special::kFunction),     std::string(special::kSubcellularLocation),
    std::string(special::kProteinFamilies),
  };
  return tokens;
}

const std::vector<std::string> &amino_acid_tokens() {
  static const std::vector<std::string> tokens = [] {
    std::vector<std::string> out;
    for (char c = 'A'; c <= 'Z'; ++c)
      out.push_back(std::string("<p>") + c);
    return out;
  }();
  return tokens;
}

std::string sentinel_token(int index) { return "<M" + std::to_string(index) + ">"; }

Vocabulary Vocabulary::build(const std::vector<std::string> &text_tokens,
                             const std::vector<SelfiesToken> &alphabet, int sentinel_count) {
  if (sentinel_count < 1)
    throw Error(ErrorCode::kInvalidArgument, "sentinel count must be at least 1");
  std::vector<std::string> selfies;
  selfies.reserve(alphabet.size());
  for (const SelfiesToken &t : alphabet)
    selfies.push_back(t.text);
  std::sort(selfies.begin(), selfies.end());
  selfies.erase(std::unique(selfies.begin(), selfies.end()), selfies.end());

  Vocabulary v;
  auto add = [&](const std::string &token, Modality m) {
    check_token_text(token);
    v.entries_.push_back({ token, m });
  };
  for (const std::string &t : text_tokens)
    add(t, Modality::kText);
  for (const std::string &t : selfies)
    add(t, Modality::kSelfies);
  for (const std::string &t : amino_acid_tokens())
    add(t, Modality::kAminoAcid);
  for (const std::string &t : special_tokens())
    add(t, Modality::kSpecial);
  for (int k = 1; k <= sentinel_count; ++k)
    add(sentinel_token(k), Modality::kSentinel);
  v.index();
  return v;
}

Vocabulary Vocabulary::build_from_file(const std::string &text_vocab_path,
                                       const std::vector<SelfiesToken> &alphabet, int sentinel_count) {
  std::vector<std::string> text;
  LineReader reader(text_vocab_path);
  std::string line;
  while (reader.next(line)) {
    std::string token = line.substr(0, line.find('\t'));
    if (token.empty())
      throw Error(ErrorCode::kMalformedVocabFile,
                  text_vocab_path + ":" + std::to_string(reader.line_number()) + ": empty token");
    text.push_back(std::move(token));
  }
  return build(text, alphabet, sentinel_count);
}

Vocabulary Vocabulary::from_tsv(std::string_view tsv) {
  Vocabulary v;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = tsv.size();
    std::string_view line = tsv.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw Error(ErrorCode::kMalformedVocabFile, "line " + std::to_string(line_no) + ": expected token<TAB>modality");
    auto m = parse_modality(line.substr(tab + 1));
    if (!m)
      throw Error(ErrorCode::kMalformedVocabFile, "line " + std::to_string(line_no) + ": unknown modality '"
                                                      + std::string(line.substr(tab + 1)) + "'");
    std::string token(line.substr(0, tab));
    check_token_text(token);
    v.entries_.push_back({ std::move(token), *m });
  }
  // Blocks must appear in layout order.
  for (std::size_t i = 1; i < v.entries_.size(); ++i)
    if (v.entries_[i].modality < v.entries_[i - 1].modality)
      throw Error(ErrorCode::kMalformedVocabFile, "line " + std::to_string(i + 1) + ": block out of order");
  v.index();
  for (const std::string &s : special_tokens())
    if (!v.find(s) || v.modality(*v.find(s)) != Modality::kSpecial)
      throw Error(ErrorCode::kMalformedVocabFile, "missing special token '" + s + "'");
  if (v.sentinel_count() < 1)
    throw Error(ErrorCode::kMalformedVocabFile, "no sentinel tokens");
  for (int k = 1; k <= v.sentinel_count(); ++k)
    if (v.entries_[static_cast<std::size_t>(v.first_sentinel_ + k - 1)].token != sentinel_token(k))
      throw Error(ErrorCode::kMalformedVocabFile, "sentinel block is not <M1>..<Mk>");
  return v;
}

Vocabulary Vocabulary::load(const std::string &path) { return from_tsv(read_text_file(path)); }

std::string Vocabulary::to_tsv() const {
  std::string out;
  for (const VocabEntry &e : entries_) {
    out += e.token;
    out += '\t';
    out += modality_name(e.modality);
    out += '\n';
  }
  return out;
}

void Vocabulary::save(const std::string &path) const { write_text_file(path, to_tsv()); }

std::string Vocabulary::manifest_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json counts;
  for (Modality m : kModalities)
    counts[std::string(modality_name(m))] = count(m);
  j["counts"] = counts;
  j["total"] = size();
  j["selfies_alphabet_size"] = count(Modality::kSelfies);
  j["sha256"] = sha256_hex(to_tsv());
  return j.dump(2);
}

int Vocabulary::count(Modality m) const noexcept {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                        [m](const VocabEntry &e) { return e.modality == m; }));
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end())
    return std::nullopt;
  return it->second;
}

const std::string &Vocabulary::token(int id) const {
  if (id < 0 || id >= size())
    throw Error(ErrorCode::kUnknownId, "id " + std::to_string(id) + " outside 0.." + std::to_string(size() - 1));
  return entries_[static_cast<std::size_t>(id)].token;
}

Modality Vocabulary::modality(int id) const {
  if (id < 0 || id >= size())
    throw Error(ErrorCode::kUnknownId, "id " + std::to_string(id) + " outside 0.." + std::to_string(size() - 1));
  return entries_[static_cast<std::size_t>(id)].modality;
}

int Vocabulary::special_id(std::string_view token) const {
  auto id = find(token);
  if (!id || modality(*id) != Modality::kSpecial)
    throw Error(ErrorCode::kInvalidArgument, "'" + std::string(token) + "' is not a special token");
  return *id;
}

int Vocabulary::sentinel_id(int k) const {
  if (k < 1 || k > sentinel_count())
    throw Error(ErrorCode::kTooManySpans, "sentinel <M" + std::to_string(k) + "> needed but the block has "
                                              + std::to_string(sentinel_count()));
  return first_sentinel_ + k - 1;
}

int Vocabulary::sentinel_index(int id) const {
  if (id < first_sentinel_ || id >= first_sentinel_ + sentinel_count())
    return 0;
  return id - first_sentinel_ + 1;
}

void Vocabulary::index() {
  ids_.clear();
  ids_.reserve(entries_.size());
  max_text_bytes_ = 0;
  first_sentinel_ = static_cast<int>(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const VocabEntry &e = entries_[i];
    auto [it, inserted] = ids_.emplace(e.token, static_cast<int>(i));
    if (!inserted)
      throw Error(ErrorCode::kDuplicateToken, "'" + e.token + "' appears as " + std::string(modality_name(
                                                  entries_[static_cast<std::size_t>(it->second)].modality))
                                                  + " and " + std::string(modality_name(e.modality)));
    if (e.modality == Modality::kText)
      max_text_bytes_ = std::max(max_text_bytes_, e.token.size());
    if (e.modality == Modality::kSentinel && first_sentinel_ == static_cast<int>(entries_.size()))
      first_sentinel_ = static_cast<int>(i);
    if (e.modality == Modality::kSentinel && parse_sentinel(e.token) == 0)
      throw Error(ErrorCode::kMalformedVocabFile, "'" + e.token + "' is not a sentinel token");
  }
}

}  // namespace biocorpus
