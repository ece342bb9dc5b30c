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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabconf/config.hpp"
#include "tabconf/table.hpp"

namespace tabconf {

inline constexpr std::string_view kDefaultCellDelimiter = " | ";

// kNone marks a cells-only target (the cell-generation task has no answer).
enum class AnswerKind { kShort, kLong, kBinary, kNone };

std::string_view answer_kind_name(AnswerKind k);
std::optional<AnswerKind> answer_kind_from_name(std::string_view name);
// Answer kind implied by a configuration's outputs.
AnswerKind answer_kind_of(const TaskConfig& config);

// Surface strings for binary answers: {positive, negative}.
using BinaryLabels = std::array<std::string, 2>;
const BinaryLabels& default_binary_labels();

// Decoder-side target or parsed prediction.
struct StructuredOutput {
  std::optional<std::vector<std::string>> cells;
  std::optional<std::string> answer;
  AnswerKind kind = AnswerKind::kShort;

  friend bool operator==(const StructuredOutput&, const StructuredOutput&) = default;
};

// Throws kInvalidOutput if `out` could not be rendered and parsed back
// unchanged: empty or bracket-bearing text, '|' inside a cell, a binary
// answer outside `labels`, or an answer/kind mismatch.
void validate_output(const StructuredOutput& out, const BinaryLabels& labels = default_binary_labels());

struct InputPayload {
  std::optional<std::string> query;
  std::optional<std::string> passage;
  std::optional<std::string> table;  // linearized text

  static InputPayload with_table(std::optional<std::string> query, const LinearizedTable& table,
                                 std::optional<std::string> passage = std::nullopt) {
    return InputPayload{std::move(query), std::move(passage), table.text};
  }
};

struct EncoderRecord {
  std::string prefix;
  std::optional<std::string> query;
  std::optional<std::string> passage;
  std::optional<std::string> table_text;
  std::string full_input;
};

// Prefix followed by each payload as "[x] content [/x]", in the order of
// config.inputs. Payloads must match the declared inputs exactly
// (kPayloadMismatch otherwise), except that a configuration with no declared
// inputs accepts any payloads and renders them as query, table, passage.
EncoderRecord render_input(const TaskConfig& config, const InputPayload& payload);

// "[cell] c1 | c2 [/cell] [answer] a [/answer]", omitting absent blocks.
std::string render_target(const StructuredOutput& out, std::string_view cell_delimiter = kDefaultCellDelimiter);

enum class ParseMode { kStrict, kLenient };

struct ParseOptions {
  ParseMode mode = ParseMode::kLenient;
  std::string cell_delimiter{kDefaultCellDelimiter};
  // Kind assigned to a parsed answer; a text without an answer block parses as kNone.
  AnswerKind answer_kind = AnswerKind::kShort;
  BinaryLabels binary_labels = default_binary_labels();
};

// Strict mode accepts exactly an optional cell block followed by an optional
// answer block (at least one) and throws kMalformedOutput otherwise.
// Lenient mode never throws: it takes the first well-formed answer and cell
// spans and ignores the rest; with neither span present the trimmed text
// becomes the answer.
StructuredOutput parse_output(std::string_view text, const ParseOptions& options = {});

// True when `text` strict-parses.
bool is_well_formed(std::string_view text, const ParseOptions& options = {});

struct PrefixParse {
  TaskConfig config;
  std::string remainder;
};

// Inverse of render_prefix. Consumes leading "[Key: value]" segments in
// task, dataset, input, output order and returns the rest of the text.
PrefixParse parse_prefix(std::string_view text);

}  // namespace tabconf
