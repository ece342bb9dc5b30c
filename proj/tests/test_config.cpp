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

#include "doctest.h"
#include "support.hpp"
#include "tabconf/config.hpp"
#include "tabconf/error.hpp"
#include "tabconf/text.hpp"

using namespace tabconf;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

std::string prefix_part(const std::string& encoder) {
  // Golden encoder strings are the prefix followed by payload segments.
  auto pos = encoder.find(" [query]");
  if (pos == std::string::npos) pos = encoder.find(" [passage]");
  return pos == std::string::npos ? encoder : encoder.substr(0, pos);
}

}  // namespace

TEST_CASE("builtin prefixes match the reference templates") {
  CHECK(builtin_dataset_ids().size() == 12);
  for (const auto& g : testsupport::golden_templates()) {
    CAPTURE(g.id);
    CHECK(render_prefix(builtin_config(g.id)) == prefix_part(g.encoder));
  }
}

TEST_CASE("every builtin config is strictly valid") {
  for (const auto& id : builtin_dataset_ids()) {
    CAPTURE(id);
    CHECK_NOTHROW(validate_config(builtin_config(id)));
    CHECK_FALSE(builtin_config(id).ablated);
  }
  CHECK(code_of([] { builtin_config("spider"); }) == ErrorCode::kUnknownDataset);
}

TEST_CASE("render_prefix is deterministic and keeps segment order") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    TaskConfig c = testsupport::random_config(rng);
    std::string a = render_prefix(c);
    CHECK(a == render_prefix(c));

    std::vector<std::string> expected;
    expected.push_back("[Task: " + std::string(task_type_label(*c.task_type)) + "]");
    if (c.dataset) expected.push_back("[Dataset: " + *c.dataset + "]");
    for (auto t : c.inputs) expected.push_back("[Input: " + std::string(io_type_label(t)) + "]");
    for (auto t : c.outputs) {
      std::string label = (t == IoType::kCells && c.singular_cell_label) ? "cell" : std::string(io_type_label(t));
      expected.push_back("[Output: " + label + "]");
    }
    CHECK(a == join(expected, " "));
  }
}

TEST_CASE("role and duplicate violations are rejected") {
  using T = IoType;
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kCells}, {T::kShortAnswer}); }) == ErrorCode::kInvalidRole);
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kQuery}, {T::kTable, T::kShortAnswer}); }) ==
        ErrorCode::kInvalidRole);
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kQuery, T::kQuery}, {T::kShortAnswer}); }) ==
        ErrorCode::kDuplicateType);
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kQuery}, {T::kCells}); }) == ErrorCode::kMissingAnswerKind);
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kQuery}, {T::kShortAnswer, T::kCells}); }) ==
        ErrorCode::kMissingAnswerKind);
  CHECK(code_of([] { make_config(TaskType::kQA, "D", {T::kQuery}, {T::kShortAnswer, T::kLongAnswer}); }) ==
        ErrorCode::kMissingAnswerKind);
  CHECK(code_of([] { make_config(TaskType::kQA, "", {T::kQuery}, {T::kShortAnswer}); }) ==
        ErrorCode::kInvalidDatasetName);
  CHECK(code_of([] { make_config(TaskType::kQA, "a]b", {T::kQuery}, {T::kShortAnswer}); }) ==
        ErrorCode::kInvalidDatasetName);
  CHECK(code_of([] { make_config(TaskType::kQA, " pad", {T::kQuery}, {T::kShortAnswer}); }) ==
        ErrorCode::kInvalidDatasetName);
  // Cell generation may end with cells.
  CHECK_NOTHROW(make_config(TaskType::kCellGeneration, std::nullopt, {T::kQuery, T::kTable}, {T::kCells}));
}

TEST_CASE("compose_for_unseen omits the dataset segment") {
  using T = IoType;
  TaskConfig c = compose_for_unseen(TaskType::kSummarization, {T::kQuery, T::kTable}, {T::kCells, T::kLongAnswer});
  CHECK_FALSE(c.dataset.has_value());
  CHECK(c == builtin_config("fetaqa"));
  CHECK(render_prefix(c) ==
        "[Task: Summarization] [Input: query] [Input: table] [Output: cells] [Output: long answer]");
}

TEST_CASE("ablate touches only the named facet") {
  TaskConfig base = builtin_config("wikisql");

  TaskConfig d = ablate(base, Facet::kDataset);
  CHECK_FALSE(d.dataset);
  CHECK(d.task_type == base.task_type);
  CHECK(d.inputs == base.inputs);
  CHECK(d.outputs == base.outputs);
  CHECK_FALSE(d.ablated);

  TaskConfig t = ablate(base, Facet::kTaskType);
  CHECK_FALSE(t.task_type);
  CHECK(t.ablated);
  CHECK(render_prefix(t).find("[Task:") == std::string::npos);
  CHECK(render_prefix(t).starts_with("[Dataset: WikiSQL]"));

  TaskConfig o = ablate(base, Facet::kOutput);
  CHECK(o.outputs.empty());
  CHECK(o.ablated);
  CHECK(render_prefix(o).find("[Output:") == std::string::npos);

  TaskConfig i = ablate(base, Facet::kInput);
  CHECK(i.inputs.empty());
  CHECK(i.outputs == base.outputs);

  TaskConfig tb = ablate(base, Facet::kInputTable);
  CHECK(tb.inputs == std::vector<IoType>{IoType::kQuery});

  TaskConfig oc = ablate(base, Facet::kOutputCells);
  CHECK(oc.outputs == std::vector<IoType>{IoType::kShortAnswer});
  CHECK(oc == builtin_config("wikisql_answer_only"));
}

TEST_CASE("ablating a missing facet raises FacetAbsent") {
  TaskConfig base = builtin_config("wikisql");
  for (Facet f : {Facet::kDataset, Facet::kTaskType, Facet::kInput, Facet::kOutput, Facet::kInputTable,
                  Facet::kOutputCells}) {
    CAPTURE(facet_name(f));
    TaskConfig once = ablate(base, f);
    CHECK(code_of([&] { ablate(once, f); }) == ErrorCode::kFacetAbsent);
  }
  CHECK(code_of([&] { ablate(base, Facet::kInputPassage); }) == ErrorCode::kFacetAbsent);
  CHECK(code_of([] { ablate(builtin_config("totto"), Facet::kInput); }) == ErrorCode::kFacetAbsent);
}

TEST_CASE("removing cells from cell generation clears the singular label") {
  TaskConfig c = ablate(builtin_config("totto_reverse"), Facet::kOutputCells);
  CHECK(c.outputs.empty());
  CHECK_FALSE(c.singular_cell_label);
  CHECK(c.ablated);
  CHECK_NOTHROW(validate_config_relaxed(c));
}

TEST_CASE("config JSON round trip") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    TaskConfig c = testsupport::random_config(rng);
    CHECK(config_from_json(config_to_json(c)) == c);
  }
  TaskConfig a = ablate(builtin_config("tabfact"), Facet::kTaskType);
  CHECK(config_from_json(config_to_json(a)) == a);
}

TEST_CASE("label and name lookups") {
  CHECK(task_type_from_label("Fact-checking") == TaskType::kFactChecking);
  CHECK(task_type_from_name("cell_generation") == TaskType::kCellGeneration);
  CHECK(io_type_from_label("short answer") == IoType::kShortAnswer);
  CHECK(io_type_from_name("binary_answer") == IoType::kBinaryAnswer);
  CHECK(facet_from_name("input_passage") == Facet::kInputPassage);
  CHECK_FALSE(task_type_from_label("qa"));
  CHECK_FALSE(facet_from_name("nothing"));
}
