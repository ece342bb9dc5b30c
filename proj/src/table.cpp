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

#include "tabconf/table.hpp"

#include <algorithm>

#include "tabconf/error.hpp"
#include "tabconf/rng.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

constexpr std::string_view kCellSeparator = " | ";

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) || (c >= 0x5b && c <= 0x60) ||
         (c >= 0x7b && c <= 0x7e);
}

std::string cell_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (j > 0) out += kCellSeparator;
    out += cells[j];
  }
}

std::vector<std::string> split_cells(std::string_view segment) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = segment.find(kCellSeparator, pos);
    if (next == std::string_view::npos) break;
    cells.emplace_back(segment.substr(pos, next - pos));
    pos = next + kCellSeparator.size();
  }
  std::string_view last = segment.substr(pos);
  // A trailing empty cell loses its space when the surrounding text is trimmed.
  if (last.size() >= 2 && last.substr(last.size() - 2) == " |") {
    cells.emplace_back(last.substr(0, last.size() - 2));
    cells.emplace_back();
  } else {
    cells.emplace_back(last);
  }
  return cells;
}

}  // namespace

void validate_table(const Table& table) {
  if (table.headers.empty()) throw Error(ErrorCode::kRaggedTable, "table has no headers");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != table.headers.size()) {
      throw Error(ErrorCode::kRaggedTable, "row " + std::to_string(i) + " has " +
                                               std::to_string(table.rows[i].size()) + " cells, expected " +
                                               std::to_string(table.headers.size()));
    }
  }
}

Table table_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchemaMismatch, "table: expected an object");
  const char* header_key = j.contains("header") ? "header" : "headers";
  if (!j.contains(header_key) || !j.at(header_key).is_array()) {
    throw Error(ErrorCode::kSchemaMismatch, "table: missing field 'header'");
  }
  if (!j.contains("rows") || !j.at("rows").is_array()) {
    throw Error(ErrorCode::kSchemaMismatch, "table: missing field 'rows'");
  }
  Table t;
  for (const auto& h : j.at(header_key)) t.headers.push_back(cell_to_string(h));
  for (const auto& row : j.at("rows")) {
    if (!row.is_array()) throw Error(ErrorCode::kSchemaMismatch, "table: row is not an array");
    auto& cells = t.rows.emplace_back();
    for (const auto& c : row) cells.push_back(cell_to_string(c));
  }
  validate_table(t);
  return t;
}

nlohmann::json table_to_json(const Table& table) {
  return nlohmann::json{{"header", table.headers}, {"rows", table.rows}};
}

std::string TokenCounter::clip(std::string_view text, std::size_t limit) const {
  if (count(text) <= limit) return std::string(text);
  std::vector<std::size_t> cuts = utf8_boundaries(text);
  // Largest cut whose trimmed prefix fits; cut 0 always fits.
  std::size_t lo = 0, hi = cuts.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (count(rtrim(text.substr(0, cuts[mid]))) <= limit) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return std::string(rtrim(text.substr(0, cuts[lo])));
}

std::size_t WordPunctCounter::count(std::string_view text) const {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    if (is_ascii_space(c)) {
      in_word = false;
    } else if (is_ascii_punct(c)) {
      in_word = false;
      ++n;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::string WordPunctCounter::clip(std::string_view text, std::size_t limit) const {
  std::size_t n = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    bool starts_token = false;
    if (is_ascii_space(c)) {
      in_word = false;
    } else if (is_ascii_punct(c)) {
      in_word = false;
      starts_token = true;
    } else if (!in_word) {
      in_word = true;
      starts_token = true;
    }
    if (starts_token && ++n > limit) return std::string(rtrim(text.substr(0, i)));
  }
  return std::string(text);
}

const TokenCounter& default_counter() {
  static const WordPunctCounter counter;
  return counter;
}

std::string sanitize_cell(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    switch (ch) {
      case '|': out += "¦"; break;
      case '[': out += "⟦"; break;
      case ']': out += "⟧"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string clip_cell(std::string_view text, std::size_t limit, const TokenCounter& counter) {
  return counter.clip(text, limit);
}

LinearizedTable linearize(const Table& table, std::size_t budget, std::size_t cell_limit, const TokenCounter& counter,
                          std::uint64_t rng_seed, const std::set<std::size_t>& protected_rows) {
  validate_table(table);
  if (cell_limit == 0) throw Error(ErrorCode::kInvalidArgument, "cell limit must be at least 1");
  for (std::size_t r : protected_rows) {
    if (r >= table.rows.size()) {
      throw Error(ErrorCode::kInvalidArgument, "protected row " + std::to_string(r) + " is out of range");
    }
  }

  auto prepare = [&](const std::string& s) { return clip_cell(sanitize_cell(s), cell_limit, counter); };
  std::vector<std::string> headers;
  for (const auto& h : table.headers) headers.push_back(prepare(h));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto& out = rows.emplace_back();
    for (const auto& c : row) out.push_back(prepare(c));
  }

  std::vector<std::size_t> removal_order;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!protected_rows.contains(i)) removal_order.push_back(i);
  }
  Rng rng(rng_seed);
  rng.shuffle(std::span<std::size_t>(removal_order));

  // Text and survivors after removing the first `removed` rows of removal_order.
  auto render = [&](std::size_t removed) {
    std::vector<bool> dropped(rows.size(), false);
    for (std::size_t i = 0; i < removed; ++i) dropped[removal_order[i]] = true;
    LinearizedTable lt;
    lt.text = "Headers: ";
    append_row(lt.text, headers);
    std::size_t label = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (dropped[i]) continue;
      lt.text += " Row " + std::to_string(++label) + ": ";
      append_row(lt.text, rows[i]);
      lt.retained_row_indices.push_back(i);
    }
    lt.token_count = counter.count(lt.text);
    return lt;
  };

  LinearizedTable full = render(0);
  if (full.token_count <= budget) return full;
  LinearizedTable minimal = render(removal_order.size());
  if (minimal.token_count > budget) {
    throw Error(ErrorCode::kBudgetInfeasible, "headers and protected rows need " + std::to_string(minimal.token_count) +
                                                  " tokens, budget is " + std::to_string(budget));
  }
  // Fewest removals that fit; the counter contract makes the fit monotone in removals.
  std::size_t lo = 1, hi = removal_order.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (render(mid).token_count <= budget) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo == removal_order.size() ? minimal : render(lo);
}

Table parse_linearized(std::string_view text) {
  constexpr std::string_view kHeaders = "Headers: ";
  if (!text.starts_with(kHeaders)) throw Error(ErrorCode::kInvalidArgument, "linearized table must start with 'Headers: '");
  std::vector<std::string_view> segments;
  std::size_t pos = kHeaders.size();
  for (std::size_t k = 1;; ++k) {
    std::string marker = " Row " + std::to_string(k) + ": ";
    std::size_t next = text.find(marker, pos);
    if (next == std::string_view::npos) {
      // The final row may have lost its trailing separator space.
      std::string bare = " Row " + std::to_string(k) + ":";
      if (text.substr(pos).ends_with(bare)) {
        segments.push_back(text.substr(pos, text.size() - bare.size() - pos));
        segments.push_back("");
      } else {
        segments.push_back(text.substr(pos));
      }
      break;
    }
    segments.push_back(text.substr(pos, next - pos));
    pos = next + marker.size();
  }

  Table t;
  t.headers = split_cells(segments.front());
  for (std::size_t i = 1; i < segments.size(); ++i) {
    t.rows.push_back(split_cells(segments[i]));
    if (t.rows.back().size() != t.headers.size()) {
      throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(i) + " width does not match the headers");
    }
  }
  return t;
}

}  // namespace tabconf
