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

// Restricted WikiSQL-style queries: one selected column, an optional
// aggregate and a conjunction of comparisons against literals.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabconf/table.hpp"

namespace tabconf {

// Codes follow the WikiSQL release: agg 0..5, op 0..2.
enum class Aggregate { kNone = 0, kMax = 1, kMin = 2, kCount = 3, kSum = 4, kAvg = 5 };
enum class CompareOp { kEq = 0, kGt = 1, kLt = 2 };

std::string_view aggregate_name(Aggregate a);
std::string_view compare_op_symbol(CompareOp op);

struct Condition {
  std::size_t column = 0;
  CompareOp op = CompareOp::kEq;
  std::string literal;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct SqlQuery {
  std::size_t select_column = 0;
  Aggregate agg = Aggregate::kNone;
  std::vector<Condition> conditions;

  friend bool operator==(const SqlQuery&, const SqlQuery&) = default;
};

struct StructuredCondition {
  std::int64_t column;
  std::int64_t op;
  std::string literal;
};

// Throws kUnknownCode for an aggregate or operator code outside the release
// tables, kColumnOutOfRange for a negative column.
SqlQuery from_structured(std::int64_t sel, std::int64_t agg, const std::vector<StructuredCondition>& conds);

// {"sel": int, "agg": int, "conds": [[col, op, value], ...]}. Numeric literals
// are stringified.
SqlQuery query_from_json(const nlohmann::json& j);
nlohmann::json query_to_json(const SqlQuery& q);

// "SELECT [AGG] col WHERE col OP value AND ..." with columns resolved
// case-insensitively against `headers` (or written as col0, col1, ...).
// Names and values may be quoted with '...' or "...". Throws kSqlSyntax.
SqlQuery parse_sql(std::string_view text, const std::vector<std::string>& headers);
std::string to_sql(const SqlQuery& q, const std::vector<std::string>& headers);

// Trims, drops one leading currency symbol and every ',' then parses a
// decimal. Returns nullopt unless the whole text is a finite number.
std::optional<double> coerce_number(std::string_view text);

// Integral values print without a fraction; others use the shortest
// round-trip form.
std::string format_number(double value);
// Up to 6 significant digits, trailing zeros trimmed.
std::string format_average(double value);

struct RelevantCell {
  std::size_t row = 0;
  std::size_t column = 0;
  std::string text;

  friend bool operator==(const RelevantCell&, const RelevantCell&) = default;
};

struct ExecutionResult {
  std::vector<RelevantCell> relevant_cells;
  std::vector<std::string> answer_values;
};

// Matches rows where every condition holds, then aggregates the selected
// column over them. A comparison is numeric when both sides coerce to a
// number; otherwise '=' is ASCII case-insensitive string equality and '>'/'<'
// throw kNonComparable. An empty match yields empty results (COUNT yields "0").
ExecutionResult execute(const SqlQuery& query, const Table& table);

// Texts of execute(...).relevant_cells in row order.
std::vector<std::string> extract_relevant_cells(const SqlQuery& query, const Table& table);

}  // namespace tabconf
