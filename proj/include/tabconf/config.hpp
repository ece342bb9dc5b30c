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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tabconf {

enum class TaskType { kQA, kSummarization, kFactChecking, kCellGeneration };

enum class IoType { kQuery, kTable, kPassage, kCells, kShortAnswer, kLongAnswer, kBinaryAnswer };

enum class Facet { kDataset, kTaskType, kInput, kOutput, kInputPassage, kInputTable, kOutputCells };

// "QA", "Summarization", "Fact-checking", "Cell-generation".
std::string_view task_type_label(TaskType t);
std::optional<TaskType> task_type_from_label(std::string_view label);

// "query", "table", ..., "binary answer".
std::string_view io_type_label(IoType t);
std::optional<IoType> io_type_from_label(std::string_view label);

// Command-line spellings: "qa", "fact_checking", "short_answer", "input_passage", ...
std::optional<TaskType> task_type_from_name(std::string_view name);
std::optional<IoType> io_type_from_name(std::string_view name);
std::optional<Facet> facet_from_name(std::string_view name);
std::string_view facet_name(Facet f);

bool is_input_type(IoType t);
bool is_answer_kind(IoType t);

// A compositional task configuration: task type, optional dataset name,
// ordered input types and ordered output types.
//
// Instances built through make_config / compose_for_unseen / builtin_config
// satisfy every structural invariant. Instances produced by ablate() may be
// flagged `ablated`, meaning the answer-kind and task-type requirements are
// relaxed and the value is meant for rendering only.
struct TaskConfig {
  std::optional<TaskType> task_type;
  std::optional<std::string> dataset;
  std::vector<IoType> inputs;
  std::vector<IoType> outputs;
  // Render Cells as "[Output: cell]" (the cell-generation template's spelling).
  bool singular_cell_label = false;
  bool ablated = false;

  bool has_input(IoType t) const;
  bool has_output(IoType t) const;
  // Final answer-kind output, if any.
  std::optional<IoType> answer_kind() const;

  friend bool operator==(const TaskConfig&, const TaskConfig&) = default;
};

TaskConfig make_config(TaskType task_type, std::optional<std::string> dataset, std::vector<IoType> inputs,
                       std::vector<IoType> outputs);

// Same as make_config with the dataset name omitted.
TaskConfig compose_for_unseen(TaskType task_type, std::vector<IoType> inputs, std::vector<IoType> outputs);

// Throws kFacetAbsent when the facet is not present in `config`.
TaskConfig ablate(const TaskConfig& config, Facet facet);

// Deterministic "[Task: ..] [Dataset: ..] [Input: ..] ... [Output: ..]" string.
std::string render_prefix(const TaskConfig& config);

// Checks the invariants that hold for a non-ablated configuration; throws on violation.
void validate_config(const TaskConfig& config);
// Checks the relaxed invariants that hold for any configuration, ablated or not.
void validate_config_relaxed(const TaskConfig& config);

const std::vector<std::string>& builtin_dataset_ids();
TaskConfig builtin_config(std::string_view dataset_id);

nlohmann::json config_to_json(const TaskConfig& config);
TaskConfig config_from_json(const nlohmann::json& j);

}  // namespace tabconf
