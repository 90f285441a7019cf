//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "biocorpus/error.hpp"
#include "biocorpus/metrics.hpp"

namespace biocorpus {
namespace {

std::vector<std::uint32_t> code_points(std::string_view s) {
  std::vector<std::uint32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
    len = std::min(len, s.size() - i);
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < len; ++k)
      v = (v << 8) | static_cast<unsigned char>(s[i + k]);
    out.push_back(v);
    i += len;
  }
  return out;
}

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const std::vector<std::string> &tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

template <typename T>
std::size_t edit_distance(std::vector<T> x, std::vector<T> y) {
  if (x.size() < y.size())
    std::swap(x, y);
  std::vector<std::size_t> row(y.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{ 0 });
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({ row[j] + 1, row[j - 1] + 1, diag + (x[i - 1] == y[j - 1] ? 0 : 1) });
      diag = up;
    }
  }
  return row[y.size()];
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) { return edit_distance(code_points(a), code_points(b)); }

std::size_t levenshtein(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  return edit_distance(a, b);
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start)
      out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> split_characters(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t j = i + 1;
    while (j < text.size() && (static_cast<unsigned char>(text[j]) & 0xC0) == 0x80)
      ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

BleuScore corpus_bleu(const std::vector<std::vector<std::string>> &preds,
                      const std::vector<std::vector<std::string>> &golds, int max_n) {
  if (preds.size() != golds.size())
    throw Error(ErrorCode::kLengthMismatch, std::to_string(preds.size()) + " predictions for "
                                                + std::to_string(golds.size()) + " references");
  if (preds.empty())
    throw Error(ErrorCode::kEmptyCorpus, "BLEU needs at least one pair");
  if (max_n < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_n must be at least 1");

  const auto orders = static_cast<std::size_t>(max_n);
  std::vector<std::size_t> matches(orders, 0);
  std::vector<std::size_t> totals(orders, 0);
  BleuScore score;
  for (std::size_t s = 0; s < preds.size(); ++s) {
    score.hypothesis_length += preds[s].size();
    score.reference_length += golds[s].size();
    for (std::size_t n = 1; n <= orders; ++n) {
      NgramCounts hyp = ngrams(preds[s], n);
      NgramCounts ref = ngrams(golds[s], n);
      for (const auto &[gram, count] : hyp) {
        totals[n - 1] += count;
        auto it = ref.find(gram);
        if (it != ref.end())
          matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  double log_sum = 0.0;
  std::size_t used = 0;
  bool zero = false;
  for (std::size_t n = 1; n <= orders; ++n) {
    if (totals[n - 1] == 0) {
      score.precisions.push_back(0.0);
      continue;
    }
    double p;
    if (matches[n - 1] > 0)
      p = static_cast<double>(matches[n - 1]) / static_cast<double>(totals[n - 1]);
    else if (n >= 2)
      p = kBleuEpsilon / static_cast<double>(totals[n - 1]);
    else
      p = 0.0;
    score.precisions.push_back(p);
    if (p == 0.0)
      zero = true;
    else
      log_sum += std::log(p);
    ++used;
  }

  const double c = static_cast<double>(score.hypothesis_length);
  const double r = static_cast<double>(score.reference_length);
  if (used == 0) {
    // No hypothesis n-grams at all: only identical (empty) corpora agree.
    score.brevity_penalty = c == r ? 1.0 : 0.0;
    score.bleu = score.brevity_penalty;
    return score;
  }
  score.brevity_penalty = c >= r ? 1.0 : std::exp(1.0 - r / c);
  score.bleu = zero ? 0.0 : score.brevity_penalty * std::exp(log_sum / static_cast<double>(used));
  return score;
}

}  // namespace biocorpus
