//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"

namespace biocorpus {
namespace {

// n split into k positive parts, uniform over all C(n-1, k-1) compositions.
std::vector<int> positive_composition(int n, int k, Rng &rng) {
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  auto picks = static_cast<std::size_t>(k - 1);
  for (std::size_t i = 0; i < picks; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(cuts.size() - i));
    std::swap(cuts[i], cuts[j]);
  }
  cuts.resize(picks);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(k));
  int prev = 0;
  for (int c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(n - prev);
  return parts;
}

std::vector<int> nonnegative_composition(int n, int k, Rng &rng) {
  std::vector<int> parts = positive_composition(n + k, k, rng);
  for (int &p : parts)
    --p;
  return parts;
}

void check_params(const CorruptionParams &p) {
  if (!(p.noise_density > 0.0 && p.noise_density <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "noise density must be in (0, 1]");
  if (!(p.mean_span_length > 0.0) || !std::isfinite(p.mean_span_length))
    throw Error(ErrorCode::kInvalidArgument, "mean span length must be positive");
  if (p.max_input_length < 1)
    throw Error(ErrorCode::kInvalidArgument, "max input length must be positive");
}

}  // namespace

SpanPlan plan_spans(int length, const CorruptionParams &params, std::uint64_t seed) {
  check_params(params);
  SpanPlan plan;
  plan.length = length;
  if (length <= 0)
    return plan;
  int noise = static_cast<int>(std::llround(length * params.noise_density));
  noise = std::clamp(noise, 0, length);
  if (noise == 0)
    return plan;
  int spans = static_cast<int>(std::llround(noise / params.mean_span_length));
  spans = std::clamp(spans, 1, length - noise + 1);

  Rng rng(seed);
  std::vector<int> span_lengths = positive_composition(noise, spans, rng);
  // Interior gaps need at least one token so spans never touch.
  std::vector<int> gaps = nonnegative_composition(length - noise - (spans - 1), spans + 1, rng);
  for (int i = 1; i < spans; ++i)
    ++gaps[static_cast<std::size_t>(i)];

  int pos = gaps[0];
  for (int i = 0; i < spans; ++i) {
    int len = span_lengths[static_cast<std::size_t>(i)];
    plan.spans.emplace_back(pos, pos + len);
    pos += len + gaps[static_cast<std::size_t>(i + 1)];
  }
  return plan;
}

TrainingExample span_corrupt(const TokenSequence &tokens, const CorruptionParams &params, std::uint64_t seed,
                             const Vocabulary &vocab, Task task) {
  check_params(params);
  if (tokens.empty())
    throw Error(ErrorCode::kEmptyInput, "cannot corrupt an empty sequence");
  const int length = std::min(static_cast<int>(tokens.size()), params.max_input_length);
  SpanPlan plan = plan_spans(length, params, seed);

  std::vector<std::pair<int, int>> spans;
  if (params.protect_delimiters) {
    const int bom = vocab.bom_id();
    const int eom = vocab.eom_id();
    for (auto [b, e] : plan.spans) {
      int start = b;
      for (int i = b; i < e; ++i) {
        int id = tokens[static_cast<std::size_t>(i)];
        if (id == bom || id == eom) {
          if (i > start)
            spans.emplace_back(start, i);
          start = i + 1;
        }
      }
      if (e > start)
        spans.emplace_back(start, e);
    }
  } else {
    spans = std::move(plan.spans);
  }

  const int needed = static_cast<int>(spans.size()) + 1;
  if (needed > vocab.sentinel_count())
    throw Error(ErrorCode::kTooManySpans, std::to_string(spans.size()) + " spans need " + std::to_string(needed)
                                              + " sentinels, the vocabulary has "
                                              + std::to_string(vocab.sentinel_count()));

  TrainingExample ex;
  ex.task = task;
  int pos = 0;
  int k = 1;
  for (auto [b, e] : spans) {
    ex.input_ids.insert(ex.input_ids.end(), tokens.begin() + pos, tokens.begin() + b);
    int sentinel = vocab.sentinel_id(k++);
    ex.input_ids.push_back(sentinel);
    ex.target_ids.push_back(sentinel);
    ex.target_ids.insert(ex.target_ids.end(), tokens.begin() + b, tokens.begin() + e);
    pos = e;
  }
  ex.input_ids.insert(ex.input_ids.end(), tokens.begin() + pos, tokens.begin() + length);
  ex.target_ids.push_back(vocab.sentinel_id(k));
  return ex;
}

}  // namespace biocorpus
