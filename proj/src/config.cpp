// Copyright 2026 The tabconf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabconf/config.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

#include "tabconf/error.hpp"

namespace tabconf {
namespace {

struct TaskTypeEntry {
  TaskType type;
  std::string_view label;
  std::string_view name;
};

constexpr std::array<TaskTypeEntry, 4> kTaskTypes = {{
    {TaskType::kQA, "QA", "qa"},
    {TaskType::kSummarization, "Summarization", "summarization"},
    {TaskType::kFactChecking, "Fact-checking", "fact_checking"},
    {TaskType::kCellGeneration, "Cell-generation", "cell_generation"},
}};

struct IoTypeEntry {
  IoType type;
  std::string_view label;
  std::string_view name;
};

constexpr std::array<IoTypeEntry, 7> kIoTypes = {{
    {IoType::kQuery, "query", "query"},
    {IoType::kTable, "table", "table"},
    {IoType::kPassage, "passage", "passage"},
    {IoType::kCells, "cells", "cells"},
    {IoType::kShortAnswer, "short answer", "short_answer"},
    {IoType::kLongAnswer, "long answer", "long_answer"},
    {IoType::kBinaryAnswer, "binary answer", "binary_answer"},
}};

constexpr std::array<std::pair<Facet, std::string_view>, 7> kFacets = {{
    {Facet::kDataset, "dataset"},
    {Facet::kTaskType, "task_type"},
    {Facet::kInput, "input"},
    {Facet::kOutput, "output"},
    {Facet::kInputPassage, "input_passage"},
    {Facet::kInputTable, "input_table"},
    {Facet::kOutputCells, "output_cells"},
}};

template <typename T>
bool has_duplicates(const std::vector<T>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return true;
    }
  }
  return false;
}

bool is_strictly_valid(const TaskConfig& c) {
  try {
    validate_config(c);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::string_view task_type_label(TaskType t) {
  for (const auto& e : kTaskTypes) {
    if (e.type == t) return e.label;
  }
  return "";
}

std::optional<TaskType> task_type_from_label(std::string_view label) {
  for (const auto& e : kTaskTypes) {
    if (e.label == label) return e.type;
  }
  return std::nullopt;
}

std::string_view io_type_label(IoType t) {
  for (const auto& e : kIoTypes) {
    if (e.type == t) return e.label;
  }
  return "";
}

std::optional<IoType> io_type_from_label(std::string_view label) {
  for (const auto& e : kIoTypes) {
    if (e.label == label) return e.type;
  }
  return std::nullopt;
}

std::optional<TaskType> task_type_from_name(std::string_view name) {
  for (const auto& e : kTaskTypes) {
    if (e.name == name) return e.type;
  }
  return std::nullopt;
}

std::optional<IoType> io_type_from_name(std::string_view name) {
  for (const auto& e : kIoTypes) {
    if (e.name == name) return e.type;
  }
  return std::nullopt;
}

std::optional<Facet> facet_from_name(std::string_view name) {
  for (const auto& [facet, n] : kFacets) {
    if (n == name) return facet;
  }
  return std::nullopt;
}

std::string_view facet_name(Facet f) {
  for (const auto& [facet, n] : kFacets) {
    if (facet == f) return n;
  }
  return "";
}

bool is_input_type(IoType t) {
  return t == IoType::kQuery || t == IoType::kTable || t == IoType::kPassage;
}

bool is_answer_kind(IoType t) {
  return t == IoType::kShortAnswer || t == IoType::kLongAnswer || t == IoType::kBinaryAnswer;
}

bool TaskConfig::has_input(IoType t) const {
  return std::find(inputs.begin(), inputs.end(), t) != inputs.end();
}

bool TaskConfig::has_output(IoType t) const {
  return std::find(outputs.begin(), outputs.end(), t) != outputs.end();
}

std::optional<IoType> TaskConfig::answer_kind() const {
  if (!outputs.empty() && is_answer_kind(outputs.back())) return outputs.back();
  return std::nullopt;
}

void validate_config_relaxed(const TaskConfig& c) {
  for (IoType t : c.inputs) {
    if (!is_input_type(t)) {
      throw Error(ErrorCode::kInvalidRole, "'" + std::string(io_type_label(t)) + "' is not an input type");
    }
  }
  for (IoType t : c.outputs) {
    if (is_input_type(t)) {
      throw Error(ErrorCode::kInvalidRole, "'" + std::string(io_type_label(t)) + "' is not an output type");
    }
  }
  if (has_duplicates(c.inputs)) throw Error(ErrorCode::kDuplicateType, "duplicate input type");
  if (has_duplicates(c.outputs)) throw Error(ErrorCode::kDuplicateType, "duplicate output type");

  if (c.dataset) {
    const std::string& d = *c.dataset;
    if (d.empty() || d.find_first_of("[]") != std::string::npos || d.front() == ' ' || d.back() == ' ') {
      throw Error(ErrorCode::kInvalidDatasetName, "dataset name '" + d + "' cannot be rendered");
    }
  }

  auto answers = std::count_if(c.outputs.begin(), c.outputs.end(), is_answer_kind);
  if (answers > 1) throw Error(ErrorCode::kMissingAnswerKind, "more than one answer kind in outputs");
  if (answers == 1 && !is_answer_kind(c.outputs.back())) {
    throw Error(ErrorCode::kMissingAnswerKind, "the answer kind must be the last output");
  }
  if (c.singular_cell_label && !c.has_output(IoType::kCells)) {
    throw Error(ErrorCode::kInvalidRole, "singular cell label set without a cells output");
  }
}

void validate_config(const TaskConfig& c) {
  validate_config_relaxed(c);
  if (!c.task_type) throw Error(ErrorCode::kMissingAnswerKind, "task type is required");
  bool cells_only = c.task_type == TaskType::kCellGeneration && c.outputs.size() == 1 &&
                    c.outputs.front() == IoType::kCells;
  if (!cells_only && !c.answer_kind()) {
    throw Error(ErrorCode::kMissingAnswerKind, "outputs must end with an answer kind");
  }
}

TaskConfig make_config(TaskType task_type, std::optional<std::string> dataset, std::vector<IoType> inputs,
                       std::vector<IoType> outputs) {
  TaskConfig c;
  c.task_type = task_type;
  c.dataset = std::move(dataset);
  c.inputs = std::move(inputs);
  c.outputs = std::move(outputs);
  validate_config(c);
  return c;
}

TaskConfig compose_for_unseen(TaskType task_type, std::vector<IoType> inputs, std::vector<IoType> outputs) {
  return make_config(task_type, std::nullopt, std::move(inputs), std::move(outputs));
}

TaskConfig ablate(const TaskConfig& config, Facet facet) {
  TaskConfig out = config;
  auto absent = [&] {
    throw Error(ErrorCode::kFacetAbsent, "facet '" + std::string(facet_name(facet)) + "' is not present");
  };
  auto erase = [&](std::vector<IoType>& v, IoType t) {
    auto it = std::find(v.begin(), v.end(), t);
    if (it == v.end()) absent();
    v.erase(it);
  };

  switch (facet) {
    case Facet::kDataset:
      if (!out.dataset) absent();
      out.dataset.reset();
      break;
    case Facet::kTaskType:
      if (!out.task_type) absent();
      out.task_type.reset();
      break;
    case Facet::kInput:
      if (out.inputs.empty()) absent();
      out.inputs.clear();
      break;
    case Facet::kOutput:
      if (out.outputs.empty()) absent();
      out.outputs.clear();
      break;
    case Facet::kInputPassage:
      erase(out.inputs, IoType::kPassage);
      break;
    case Facet::kInputTable:
      erase(out.inputs, IoType::kTable);
      break;
    case Facet::kOutputCells:
      erase(out.outputs, IoType::kCells);
      break;
  }
  if (!out.has_output(IoType::kCells)) out.singular_cell_label = false;
  out.ablated = false;
  out.ablated = !is_strictly_valid(out);
  return out;
}

std::string render_prefix(const TaskConfig& c) {
  std::string s;
  auto segment = [&s](std::string_view key, std::string_view value) {
    if (!s.empty()) s += ' ';
    s += '[';
    s += key;
    s += ": ";
    s += value;
    s += ']';
  };
  if (c.task_type) segment("Task", task_type_label(*c.task_type));
  if (c.dataset) segment("Dataset", *c.dataset);
  for (IoType t : c.inputs) segment("Input", io_type_label(t));
  for (IoType t : c.outputs) {
    if (t == IoType::kCells && c.singular_cell_label) {
      segment("Output", "cell");
    } else {
      segment("Output", io_type_label(t));
    }
  }
  return s;
}

const std::vector<std::string>& builtin_dataset_ids() {
  static const std::vector<std::string> ids = {
      "wikisql", "wikisql_answer_only", "wikitq", "squad",  "totto",   "totto_reverse",
      "tabfact", "nq_tables",           "hybridqa", "tatqa", "fetaqa", "feverous",
  };
  return ids;
}

TaskConfig builtin_config(std::string_view id) {
  using enum IoType;
  const std::vector<IoType> query_table = {kQuery, kTable};
  const std::vector<IoType> hybrid = {kQuery, kTable, kPassage};

  if (id == "wikisql") return make_config(TaskType::kQA, "WikiSQL", query_table, {kCells, kShortAnswer});
  if (id == "wikisql_answer_only") return make_config(TaskType::kQA, "WikiSQL", query_table, {kShortAnswer});
  if (id == "wikitq") return make_config(TaskType::kQA, "WikiTQ", query_table, {kShortAnswer});
  if (id == "squad") return make_config(TaskType::kQA, "SQuAD", {kQuery, kPassage}, {kShortAnswer});
  // The table is still fed to the encoder; only its input segment is absent from the prefix.
  if (id == "totto") return make_config(TaskType::kSummarization, "ToTTo", {}, {kCells, kLongAnswer});
  if (id == "totto_reverse") {
    TaskConfig c = compose_for_unseen(TaskType::kCellGeneration, query_table, {kCells});
    c.singular_cell_label = true;
    return c;
  }
  if (id == "tabfact") return make_config(TaskType::kFactChecking, "TabFact", query_table, {kBinaryAnswer});
  if (id == "nq_tables") return compose_for_unseen(TaskType::kQA, query_table, {kShortAnswer});
  if (id == "hybridqa" || id == "tatqa") return compose_for_unseen(TaskType::kQA, hybrid, {kShortAnswer});
  if (id == "fetaqa") return compose_for_unseen(TaskType::kSummarization, query_table, {kCells, kLongAnswer});
  if (id == "feverous") return compose_for_unseen(TaskType::kFactChecking, hybrid, {kBinaryAnswer});
  throw Error(ErrorCode::kUnknownDataset, "no builtin configuration for '" + std::string(id) + "'");
}

nlohmann::json config_to_json(const TaskConfig& c) {
  nlohmann::json j;
  if (c.task_type) j["task"] = task_type_label(*c.task_type);
  if (c.dataset) j["dataset"] = *c.dataset;
  j["inputs"] = nlohmann::json::array();
  for (IoType t : c.inputs) j["inputs"].push_back(io_type_label(t));
  j["outputs"] = nlohmann::json::array();
  for (IoType t : c.outputs) j["outputs"].push_back(io_type_label(t));
  if (c.singular_cell_label) j["singular_cell_label"] = true;
  if (c.ablated) j["ablated"] = true;
  return j;
}

TaskConfig config_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& what) -> TaskConfig {
    throw Error(ErrorCode::kSchemaMismatch, "config JSON: " + what);
  };
  if (!j.is_object()) return fail("expected an object");
  TaskConfig c;
  if (j.contains("task")) {
    auto t = task_type_from_label(j.at("task").get<std::string>());
    if (!t) return fail("unknown task '" + j.at("task").get<std::string>() + "'");
    c.task_type = *t;
  }
  if (j.contains("dataset")) c.dataset = j.at("dataset").get<std::string>();
  for (const char* key : {"inputs", "outputs"}) {
    if (!j.contains(key)) return fail(std::string("missing field '") + key + "'");
    auto& dest = std::string_view(key) == "inputs" ? c.inputs : c.outputs;
    for (const auto& item : j.at(key)) {
      auto t = io_type_from_label(item.get<std::string>());
      if (!t) return fail("unknown type '" + item.get<std::string>() + "'");
      dest.push_back(*t);
    }
  }
  c.singular_cell_label = j.value("singular_cell_label", false);
  c.ablated = j.value("ablated", false);
  if (c.ablated) {
    validate_config_relaxed(c);
  } else {
    validate_config(c);
  }
  return c;
}

}  // namespace tabconf
