//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"

namespace biocorpus {
namespace {

constexpr std::array<std::string_view, kTaskCount> kTaskNames = {
  "mol_t5", "prot_t5", "text_t5", "wrapped_t5", "mol_text_pair", "prot_text_pair",
};

double weight_sum(const MixerConfig &config) {
  double sum = 0.0;
  for (double w : config.weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::kInvalidArgument, "mixing weights must be finite and non-negative");
    sum += w;
  }
  if (!(sum > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "mixing weights sum to zero");
  return sum;
}

}  // namespace

const std::array<Task, kTaskCount> &all_tasks() {
  static const std::array<Task, kTaskCount> tasks = {
    Task::kMolT5, Task::kProtT5, Task::kTextT5, Task::kWrappedT5, Task::kMolTextPair, Task::kProtTextPair,
  };
  return tasks;
}

std::string_view task_name(Task t) noexcept { return kTaskNames[static_cast<std::size_t>(t)]; }

std::optional<Task> parse_task(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kTaskCount; ++i)
    if (kTaskNames[i] == name)
      return all_tasks()[i];
  return std::nullopt;
}

std::optional<TrainingExample> VectorStream::next() {
  if (pos_ >= examples_.size())
    return std::nullopt;
  return examples_[pos_++];
}

std::array<int, kTaskCount> mixer_quotas(const MixerConfig &config) {
  if (config.batch_size < static_cast<int>(kTaskCount))
    throw Error(ErrorCode::kBatchTooSmall, "batch size " + std::to_string(config.batch_size)
                                               + " cannot hold one example of each of the six tasks");
  const double sum = weight_sum(config);
  std::array<int, kTaskCount> q{};
  for (std::size_t i = 0; i < kTaskCount; ++i)
    q[i] = std::max(1, static_cast<int>(std::floor(config.batch_size * config.weights[i] / sum)));
  while (std::accumulate(q.begin(), q.end(), 0) > config.batch_size) {
    auto largest = std::max_element(q.begin(), q.end());
    --*largest;
  }
  return q;
}

TaskMixer::TaskMixer(std::array<std::unique_ptr<ExampleStream>, kTaskCount> streams, const MixerConfig &config)
    : streams_(std::move(streams)), config_(config), quotas_(mixer_quotas(config)) {
  for (std::size_t i = 0; i < kTaskCount; ++i) {
    std::string name(task_name(all_tasks()[i]));
    if (!streams_[i])
      throw Error(ErrorCode::kEmptyStream, "no stream for task " + name);
    if (!streams_[i]->next())
      throw Error(ErrorCode::kEmptyStream, "stream for task " + name + " has no examples");
    streams_[i]->reset();
  }
}

TrainingExample TaskMixer::pull(std::size_t task) {
  if (auto ex = streams_[task]->next())
    return std::move(*ex);
  streams_[task]->reset();
  ++wraps_[task];
  if (auto ex = streams_[task]->next())
    return std::move(*ex);
  throw Error(ErrorCode::kEmptyStream, "stream for task " + std::string(task_name(all_tasks()[task]))
                                           + " has no examples");
}

std::vector<TrainingExample> TaskMixer::next_batch() {
  Rng rng(derive_seed(config_.seed, "mix", batch_index_));
  std::array<int, kTaskCount> counts = quotas_;
  const double sum = weight_sum(config_);
  int remainder = config_.batch_size - std::accumulate(counts.begin(), counts.end(), 0);
  for (int r = 0; r < remainder; ++r) {
    double u = rng.unit() * sum;
    std::size_t pick = kTaskCount - 1;
    while (config_.weights[pick] <= 0.0)
      --pick;
    double acc = 0.0;
    for (std::size_t i = 0; i < kTaskCount; ++i) {
      acc += config_.weights[i];
      if (u < acc && config_.weights[i] > 0.0) {
        pick = i;
        break;
      }
    }
    ++counts[pick];
  }

  std::vector<TrainingExample> batch;
  batch.reserve(static_cast<std::size_t>(config_.batch_size));
  for (std::size_t i = 0; i < kTaskCount; ++i)
    for (int k = 0; k < counts[i]; ++k)
      batch.push_back(pull(i));
  rng.shuffle(batch);
  ++batch_index_;
  return batch;
}

}  // namespace biocorpus
