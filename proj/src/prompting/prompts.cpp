//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "biocorpus/prompting.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "biocorpus/error.hpp"

namespace biocorpus {
namespace {

struct EmbeddedFile {
  const char *name;
  const char *text;
};

constexpr EmbeddedFile kPromptFiles[] = {
#include "prompt_data.inc"
};

struct SubtaskSet {
  std::string placeholder;
  std::vector<std::string> names;
};

struct Catalog {
  std::vector<PromptTemplate> templates;
  std::map<std::string, SubtaskSet, std::less<>> subtasks;
};

OutputKind parse_output_kind(const std::string &s) {
  if (s == "yes_no")
    return OutputKind::kYesNo;
  if (s == "text")
    return OutputKind::kText;
  if (s == "selfies")
    return OutputKind::kSelfies;
  throw Error(ErrorCode::kInvalidArgument, "bundled template has output kind '" + s + "'");
}

Catalog load_catalog() {
  Catalog c;
  for (const EmbeddedFile &f : kPromptFiles) {
    nlohmann::json j = nlohmann::json::parse(f.text);
    if (std::string(f.name) == "subtasks.json") {
      for (auto it = j.begin(); it != j.end(); ++it)
        c.subtasks[it.key()] = { it.value().at("placeholder").get<std::string>(),
                                 it.value().at("subtasks").get<std::vector<std::string>>() };
      continue;
    }
    PromptTemplate t;
    t.task_id = j.at("task_id").get<std::string>();
    t.definition = j.at("definition").get<std::string>();
    t.instruction = j.at("instruction").get<std::string>();
    t.output_kind = parse_output_kind(j.at("output_kind").get<std::string>());
    t.placeholders = j.at("placeholders").get<std::vector<std::string>>();
    if (j.contains("defaults"))
      t.defaults = j.at("defaults").get<std::map<std::string, std::string>>();
    c.templates.push_back(std::move(t));
  }
  std::sort(c.templates.begin(), c.templates.end(),
            [](const PromptTemplate &a, const PromptTemplate &b) { return a.task_id < b.task_id; });
  return c;
}

const Catalog &catalog() {
  static const Catalog c = load_catalog();
  return c;
}

const SubtaskSet &subtask_set(std::string_view dataset) {
  auto it = catalog().subtasks.find(dataset);
  if (it == catalog().subtasks.end())
    throw Error(ErrorCode::kUnknownTask, "no sub-task list for '" + std::string(dataset) + "'");
  return it->second;
}

std::string substitute(const std::string &text, const PromptTemplate &t, const Fillers &fillers) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out.append(text, pos, std::string::npos);
      break;
    }
    std::size_t close = text.find('}', open);
    out.append(text, pos, open - pos);
    std::string name = text.substr(open + 1, close - open - 1);
    if (auto f = fillers.find(name); f != fillers.end())
      out += f->second;
    else if (auto d = t.defaults.find(name); d != t.defaults.end())
      out += d->second;
    else
      throw Error(ErrorCode::kMissingFiller, "task " + t.task_id + " needs a value for '" + name + "'");
    pos = close + 1;
  }
  return out;
}

}  // namespace

const std::vector<PromptTemplate> &prompt_templates() { return catalog().templates; }

const PromptTemplate &prompt_template(std::string_view task_id) {
  for (const PromptTemplate &t : prompt_templates())
    if (t.task_id == task_id)
      return t;
  throw Error(ErrorCode::kUnknownTask, "no prompt template for task '" + std::string(task_id) + "'");
}

const std::vector<std::string> &prompt_subtasks(std::string_view dataset) { return subtask_set(dataset).names; }

const std::string &prompt_subtask_placeholder(std::string_view dataset) { return subtask_set(dataset).placeholder; }

RenderedPrompt render_prompt(std::string_view task_id, const Fillers &fillers, std::optional<bool> label,
                             const std::optional<std::string> &answer, std::string_view separator) {
  const PromptTemplate &t = prompt_template(task_id);
  RenderedPrompt r;
  r.input = substitute(t.definition, t, fillers);
  r.input += separator;
  r.input += substitute(t.instruction, t, fillers);
  switch (t.output_kind) {
  case OutputKind::kYesNo:
    if (label)
      r.output = *label ? "Yes" : "No";
    break;
  case OutputKind::kText:
    r.output = answer;
    break;
  case OutputKind::kSelfies:
    if (answer)
      r.output = "<bom>" + *answer + "<eom>";
    break;
  }
  return r;
}

LabelScores normalize_label_probabilities(double p_pos, double p_neg) {
  if (!std::isfinite(p_pos) || !std::isfinite(p_neg) || p_pos < 0.0 || p_neg < 0.0)
    throw Error(ErrorCode::kInvalidArgument, "label probabilities must be finite and non-negative");
  double scale = std::max(p_pos, p_neg);
  if (scale == 0.0)
    throw Error(ErrorCode::kDegenerateZero, "both label probabilities are zero");
  // Scaling first keeps the sum finite for huge inputs.
  double a = p_pos / scale;
  double b = p_neg / scale;
  return { p_pos, p_neg, a / (a + b), b / (a + b) };
}

}  // namespace biocorpus
