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
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tabconf {

inline constexpr std::size_t kDefaultBudget = 1024;
inline constexpr std::size_t kDefaultCellLimit = 15;

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  std::size_t width() const { return headers.size(); }
  friend bool operator==(const Table&, const Table&) = default;
};

// Throws kRaggedTable unless there is at least one header and every row has
// exactly one cell per header.
void validate_table(const Table& table);

// Reads {"header": [...], "rows": [[...]]}. Non-string cells are stringified.
Table table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const Table& table);

// Counts tokens of a text. Implementations must satisfy count("") == 0 and
// count(a + b) >= max(count(a), count(b)).
class TokenCounter {
 public:
  virtual ~TokenCounter() = default;
  virtual std::size_t count(std::string_view text) const = 0;

  // Longest prefix of `text` whose count is <= limit, trailing whitespace
  // removed. The base implementation binary-searches UTF-8 boundaries and
  // relies only on the monotonicity contract above.
  virtual std::string clip(std::string_view text, std::size_t limit) const;
};

// Default counter: words are maximal runs of non-space, non-ASCII-punctuation
// characters; every ASCII punctuation character is a token of its own. This
// approximates subword counts and is meant to be swapped for a real
// tokenizer when exact parity matters.
class WordPunctCounter final : public TokenCounter {
 public:
  std::size_t count(std::string_view text) const override;
  std::string clip(std::string_view text, std::size_t limit) const override;
};

// Adapts any callable, e.g. a binding to an external tokenizer.
class FunctionCounter final : public TokenCounter {
 public:
  explicit FunctionCounter(std::function<std::size_t(std::string_view)> fn) : fn_(std::move(fn)) {}
  std::size_t count(std::string_view text) const override { return fn_(text); }

 private:
  std::function<std::size_t(std::string_view)> fn_;
};

const TokenCounter& default_counter();

// Replaces the reserved characters '|', '[' and ']' with U+00A6, U+27E6 and
// U+27E7, collapses whitespace runs to one space and trims.
std::string sanitize_cell(std::string_view text);

std::string clip_cell(std::string_view text, std::size_t limit, const TokenCounter& counter);

struct LinearizedTable {
  std::string text;
  std::vector<std::size_t> retained_row_indices;
  std::size_t token_count = 0;
};

// Flattens a table to "Headers: h1 | ... | hm Row 1: c11 | ... | c1m ...".
// Every header and cell is sanitized and clipped to `cell_limit` tokens.
// When the text exceeds `budget`, unprotected rows are removed in a uniformly
// random order drawn from `rng_seed` until it fits; survivors keep their
// original order and are relabeled Row 1..k. Throws kBudgetInfeasible when the
// headers plus protected rows alone exceed the budget.
LinearizedTable linearize(const Table& table, std::size_t budget, std::size_t cell_limit, const TokenCounter& counter,
                          std::uint64_t rng_seed, const std::set<std::size_t>& protected_rows = {});

// Inverse of the linearized layout (without clipping). Throws kInvalidArgument
// if the text is not a linearized table.
Table parse_linearized(std::string_view text);

}  // namespace tabconf
