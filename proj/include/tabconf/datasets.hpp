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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabconf/config.hpp"
#include "tabconf/markup.hpp"
#include "tabconf/table.hpp"

namespace tabconf {

struct Example {
  std::string dataset;  // builtin id, e.g. "wikisql"
  TaskConfig config;
  std::optional<std::string> query;
  std::optional<std::string> passage;
  std::optional<Table> table;
  StructuredOutput target;
  std::set<std::size_t> protected_rows;
  std::string example_id;
};

// Per-reason drop counts plus the first few messages. Reasons are error code
// names ("SchemaMismatch", ...) or adapter policies ("empty_extraction", ...).
struct DropReport {
  std::size_t records_in = 0;
  std::size_t kept = 0;
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> messages;

  void drop(const std::string& reason, const std::string& message);
  std::size_t dropped() const;
  void merge(const DropReport& other);
  nlohmann::json to_json() const;
};

struct IngestResult {
  std::vector<Example> examples;
  DropReport drops;
};

// Raw record shapes, one JSON object per record ("id" is optional everywhere,
// "table" is {"header": [...], "rows": [[...]]}):
//   wikisql, wikisql_answer_only   question, table, sql {sel, agg, conds}
//   wikitq, nq_tables              question, table, answers [..]
//   squad                          question, context, answers ({"text": [..]} or [..])
//   totto, totto_reverse           table, highlighted_cells [[row, col]], sentence
//   tabfact                        statement, table, label (1 entailed, 0 refuted)
//   hybridqa                       question, table, passages [..], answer
//   tatqa                          question, table, paragraphs [..], answer
//   fetaqa                         question, table, highlighted_cells, answer
//   feverous                       claim, table, passages [..], label (SUPPORTS/REFUTES)
// Throws kUnknownDataset for an unknown adapter; record-level problems are
// counted in the drop report.
IngestResult ingest(std::span<const nlohmann::json> records, std::string_view adapter_id);

// Reads JSONL; unparsable lines are counted as drops.
IngestResult ingest_jsonl(std::istream& in, std::string_view adapter_id);

std::vector<Example> make_wikisql_answer_only(const std::vector<Example>& examples);

// Throws kMissingCells for an example without target cells.
std::vector<Example> make_totto_reverse(const std::vector<Example>& examples);

// Keeps records whose every answer equals the text of at least one table
// cell (trimmed, case-insensitive), deduplicated on (table, question, answers).
IngestResult filter_nq_tables(std::span<const nlohmann::json> records);

struct BuildOptions {
  std::size_t budget = kDefaultBudget;
  std::size_t cell_limit = kDefaultCellLimit;
  std::uint64_t seed = 0;
  std::string cell_delimiter{kDefaultCellDelimiter};
  unsigned threads = 1;
};

struct ModelReadyRecord {
  std::string input;
  std::string target;
  std::string dataset;
  std::string example_id;
  std::vector<std::size_t> retained_row_indices;
  std::size_t input_tokens = 0;

  // {"input", "target", "dataset", "meta": {"example_id", "retained_row_indices"}}
  std::string to_jsonl_line() const;
  static ModelReadyRecord from_json(const nlohmann::json& j);
};

struct BuildResult {
  std::vector<ModelReadyRecord> records;
  DropReport drops;
};

// Renders every example under the token budget. Each example's table is
// linearized under the budget left by the prefix and the other segments,
// with a row-truncation seed derived from (seed, example_id), so output does
// not depend on sharding or thread count.
BuildResult build_model_ready(const std::vector<Example>& examples, const BuildOptions& options,
                              const TokenCounter& counter = default_counter());

}  // namespace tabconf
