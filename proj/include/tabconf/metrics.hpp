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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabconf/markup.hpp"
#include "tabconf/table.hpp"

namespace tabconf {

// NFKC, lowercase, punctuation stripped from both ends of every
// whitespace-separated token, whitespace collapsed, trimmed.
std::string normalize_answer(std::string_view text);

// Set-valued answers ("a | b") become their normalized parts, sorted and
// rejoined with " | ". A single value reduces to normalize_answer.
std::string canonical_answer(std::string_view text);

// 1 iff the canonical prediction equals the canonical form of some gold.
// Throws kInvalidArgument when golds is empty.
int exact_match(std::string_view prediction, const std::vector<std::string>& golds);

enum class BleuSmoothing { kNone, kAddEpsilon };

struct BleuOptions {
  BleuSmoothing smoothing = BleuSmoothing::kAddEpsilon;
  double epsilon = 0.1;
  int max_order = 4;
};

struct BleuStats {
  std::vector<std::size_t> matches;  // clipped n-gram matches per order
  std::vector<std::size_t> totals;   // hypothesis n-grams per order
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;  // closest reference length, summed
  std::vector<double> precisions;
  double brevity_penalty = 1.0;
  double score = 0.0;  // 0..100
};

// Corpus-level BLEU on whitespace tokens. Counts are pooled over the corpus
// before precisions are taken. With kAddEpsilon, a zero match count at an
// order becomes epsilon, and orders the corpus has no n-grams for are left
// out of the geometric mean. Throws kLengthMismatch.
BleuStats corpus_bleu_stats(const std::vector<std::string>& predictions,
                            const std::vector<std::vector<std::string>>& references, const BleuOptions& options = {});
double corpus_bleu(const std::vector<std::string>& predictions,
                   const std::vector<std::vector<std::string>>& references, const BleuOptions& options = {});

// Fraction of positions whose normalized prediction equals the normalized
// gold. With `labels`, predictions outside the label set never count.
double accuracy(const std::vector<std::string>& predictions, const std::vector<std::string>& golds,
                const std::optional<BinaryLabels>& labels = std::nullopt);

struct CellAudit {
  std::vector<std::string> valid_cells;
  std::vector<std::string> invalid_cells;
  double validity_rate = 0.0;
};

// A generated cell is valid iff, after sanitizing and clipping both sides
// the same way, it equals some table cell ignoring case. Throws kNoCells.
CellAudit audit_cells(const StructuredOutput& parsed, const Table& table, std::size_t cell_limit = kDefaultCellLimit,
                      const TokenCounter& counter = default_counter());

struct EvalReport {
  std::string metric;
  double score = 0.0;
  std::size_t n_examples = 0;
  std::size_t malformed = 0;
  std::vector<double> per_example;
};

nlohmann::json report_to_json(const EvalReport& report);

}  // namespace tabconf
