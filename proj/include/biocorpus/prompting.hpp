//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biocorpus {

enum class OutputKind : std::uint8_t { kYesNo, kText, kSelfies };

/// One downstream task. Placeholders are written "{name}" in the
/// definition and instruction; sequence slots sit inside <bom>...<eom>.
struct PromptTemplate {
  std::string task_id;
  std::string definition;
  std::string instruction;
  OutputKind output_kind = OutputKind::kYesNo;
  std::vector<std::string> placeholders;
  std::map<std::string, std::string> defaults;
};

/// The 15 bundled templates, sorted by task id.
const std::vector<PromptTemplate> &prompt_templates();

/// Throws UnknownTask.
const PromptTemplate &prompt_template(std::string_view task_id);

/// Sub-task names for "tox21" (12), "sider" (27) and "clintox" (2), and the
/// placeholder they fill. Throws UnknownTask for other datasets.
const std::vector<std::string> &prompt_subtasks(std::string_view dataset);
const std::string &prompt_subtask_placeholder(std::string_view dataset);

using Fillers = std::map<std::string, std::string>;

struct RenderedPrompt {
  std::string input;
  std::optional<std::string> output;
};

/// definition + separator + instruction with every placeholder replaced
/// (fillers first, then template defaults). The expected output is "Yes" or
/// "No" from label for yes/no tasks, the answer text for text tasks and
/// "<bom>" + answer + "<eom>" for SELFIES tasks; absent when not supplied.
/// Throws UnknownTask, MissingFiller.
RenderedPrompt render_prompt(std::string_view task_id, const Fillers &fillers,
                             std::optional<bool> label = std::nullopt,
                             const std::optional<std::string> &answer = std::nullopt,
                             std::string_view separator = " ");

struct LabelScores {
  double p_pos = 0.0;
  double p_neg = 0.0;
  double pos = 0.0;  // p_pos / (p_pos + p_neg)
  double neg = 0.0;
};

/// Throws DegenerateZero when both are 0, InvalidArgument for negative or
/// non-finite input.
LabelScores normalize_label_probabilities(double p_pos, double p_neg);

}  // namespace biocorpus
