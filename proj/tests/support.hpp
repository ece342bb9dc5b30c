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

// Shared test helpers: golden template strings, reference implementations
// written independently of the library, and random generators.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tabconf/config.hpp"
#include "tabconf/error.hpp"
#include "tabconf/markup.hpp"
#include "tabconf/minisql.hpp"
#include "tabconf/rng.hpp"
#include "tabconf/table.hpp"

#ifndef TABCONF_FIXTURE_DIR
#define TABCONF_FIXTURE_DIR "tests/fixtures"
#endif

namespace testsupport {

inline std::string fixture(const std::string& name) { return std::string(TABCONF_FIXTURE_DIR) + "/" + name; }

// --- golden templates -------------------------------------------------------

struct Golden {
  const char* id;
  const char* encoder;
  const char* decoder;
};

// Reference encoder/decoder templates, "..." standing for data.
inline const std::vector<Golden>& golden_templates() {
  static const std::vector<Golden> g = {
      {"wikisql",
       "[Task: QA] [Dataset: WikiSQL] [Input: query] [Input: table] [Output: cells] [Output: short answer] "
       "[query] ... [/query] [table] ... [/table]",
       "[cell] ... [/cell] [answer] ... [/answer]"},
      {"wikitq",
       "[Task: QA] [Dataset: WikiTQ] [Input: query] [Input: table] [Output: short answer] [query] ... [/query] "
       "[table] ... [/table]",
       "[answer] ... [/answer]"},
      {"squad",
       "[Task: QA] [Dataset: SQuAD] [Input: query] [Input: passage] [Output: short answer] [query] ... [/query] "
       "[passage] ... [/passage]",
       "[answer] ... [/answer]"},
      {"totto", "[Task: Summarization] [Dataset: ToTTo] [Output: cells] [Output: long answer]",
       "[cell] ... [/cell] [answer] ... [/answer]"},
      {"tabfact",
       "[Task: Fact-checking] [Dataset: TabFact] [Input: query] [Input: table] [Output: binary answer] "
       "[query] ... [/query] [table] ... [/table]",
       "[answer] ... [/answer]"},
      {"nq_tables",
       "[Task: QA] [Input: query] [Input: table] [Output: short answer] [query] ... [/query] [table] ... [/table]",
       "[answer] ... [/answer]"},
      {"hybridqa",
       "[Task: QA] [Input: query] [Input: table] [Input: passage] [Output: short answer] [query] ... [/query] "
       "[table] ... [/table] [passage] ... [/passage]",
       "[answer] ... [/answer]"},
      {"tatqa",
       "[Task: QA] [Input: query] [Input: table] [Input: passage] [Output: short answer] [query] ... [/query] "
       "[table] ... [/table] [passage] ... [/passage]",
       "[answer] ... [/answer]"},
      {"fetaqa",
       "[Task: Summarization] [Input: query] [Input: table] [Output: cells] [Output: long answer] "
       "[query] ... [/query] [table] ... [/table]",
       "[cell] ... [/cell] [answer] ... [/answer]"},
      {"feverous",
       "[Task: Fact-checking] [Input: query] [Input: table] [Input: passage] [Output: binary answer] "
       "[query] ... [/query] [table] ... [/table] [passage] ... [/passage]",
       "[answer] ... [/answer]"},
      {"wikisql_answer_only",
       "[Task: QA] [Dataset: WikiSQL] [Input: query] [Input: table] [Output: short answer] [query] ... [/query] "
       "[table] ... [/table]",
       "[answer] ... [/answer]"},
      {"totto_reverse",
       "[Task: Cell-generation] [Input: query] [Input: table] [Output: cell] [query] ... [/query] "
       "[table] ... [/table]",
       "[cell] ... [/cell]"},
  };
  return g;
}

// Replaces each "..." in order with the next payload.
inline std::string fill(std::string templ, const std::vector<std::string>& payloads) {
  std::size_t pos = 0;
  for (const auto& p : payloads) {
    pos = templ.find("...", pos);
    if (pos == std::string::npos) throw std::logic_error("more payloads than placeholders");
    templ.replace(pos, 3, p);
    pos += p.size();
  }
  if (templ.find("...", pos) != std::string::npos) throw std::logic_error("unfilled placeholder");
  return templ;
}

// --- SQL reference ----------------------------------------------------------

inline std::optional<double> ref_number(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  for (const char* sym : {"$", "\xE2\x82\xAC", "\xC2\xA3", "\xC2\xA5"}) {
    if (s.rfind(sym, 0) == 0) {
      s.erase(0, std::string(sym).size());
      s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
      break;
    }
  }
  s.erase(std::remove(s.begin(), s.end(), ','), s.end());
  static const std::regex num(R"(^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?$)");
  if (!std::regex_match(s, num)) return std::nullopt;
  double v = std::stod(s);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::string ref_lower_trim(const std::string& s) {
  std::string out;
  std::size_t b = s.find_first_not_of(" \t\n\r\f\v");
  if (b == std::string::npos) return out;
  std::size_t e = s.find_last_not_of(" \t\n\r\f\v");
  for (char c : s.substr(b, e - b + 1)) out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  return out;
}

inline std::string ref_render(double v) {
  std::ostringstream os;
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    os << static_cast<long long>(v);
  } else {
    os << std::setprecision(17) << v;
    // Shortest form that still round-trips.
    for (int p = 1; p <= 17; ++p) {
      std::ostringstream t;
      t << std::setprecision(p) << v;
      if (std::stod(t.str()) == v) return t.str();
    }
  }
  return os.str();
}

inline std::string ref_render_avg(double v) {
  if (v == 0) return "0";
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

struct RefResult {
  std::vector<std::pair<std::size_t, std::string>> cells;  // (row, text)
  std::vector<std::string> answers;
};

// Row-by-row scan. Returns the error the query should raise, if any.
inline std::variant<RefResult, tabconf::ErrorCode> ref_execute(const tabconf::SqlQuery& q, const tabconf::Table& t) {
  using tabconf::CompareOp;
  for (const auto& c : q.conditions) {
    if (c.column >= t.headers.size()) return tabconf::ErrorCode::kColumnOutOfRange;
  }
  if (q.select_column >= t.headers.size()) return tabconf::ErrorCode::kColumnOutOfRange;

  RefResult r;
  bool incomparable = false;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    bool all = true;
    for (const auto& c : q.conditions) {
      auto a = ref_number(t.rows[i][c.column]);
      auto b = ref_number(c.literal);
      bool ok;
      if (a && b) {
        ok = c.op == CompareOp::kEq ? *a == *b : c.op == CompareOp::kGt ? *a > *b : *a < *b;
      } else if (c.op == CompareOp::kEq) {
        ok = ref_lower_trim(t.rows[i][c.column]) == ref_lower_trim(c.literal);
      } else {
        incomparable = true;
        ok = false;
      }
      if (!ok) all = false;
    }
    if (all) r.cells.emplace_back(i, t.rows[i][q.select_column]);
  }
  if (incomparable) return tabconf::ErrorCode::kNonComparable;

  using tabconf::Aggregate;
  if (q.agg == Aggregate::kNone) {
    for (const auto& [row, text] : r.cells) r.answers.push_back(text);
    return r;
  }
  if (q.agg == Aggregate::kCount) {
    r.answers.push_back(std::to_string(r.cells.size()));
    return r;
  }
  if (r.cells.empty()) return r;
  std::vector<double> v;
  for (const auto& [row, text] : r.cells) {
    auto x = ref_number(text);
    if (!x) return tabconf::ErrorCode::kNonNumericAggregate;
    v.push_back(*x);
  }
  double total = 0;
  for (double x : v) total += x;
  switch (q.agg) {
    case Aggregate::kMax: r.answers.push_back(ref_render(*std::max_element(v.begin(), v.end()))); break;
    case Aggregate::kMin: r.answers.push_back(ref_render(*std::min_element(v.begin(), v.end()))); break;
    case Aggregate::kSum: r.answers.push_back(ref_render(total)); break;
    case Aggregate::kAvg: r.answers.push_back(ref_render_avg(total / static_cast<double>(v.size()))); break;
    default: break;
  }
  return r;
}

// Cells mix clean numbers, formatted numbers and words in mixed case.
inline std::string random_cell(tabconf::Rng& rng, bool numeric_column) {
  static const std::vector<std::string> numbers = {"0", "1", "2", "3", "7", "12", "12.5", "-4", "1,200", "$30",
                                                   " 7 ", "2.5", "100", "\xE2\x82\xAC" "5", "+3", "0.5"};
  static const std::vector<std::string> words = {"Oslo", "oslo", "Lima", "LIMA", "n/a", "x", "Red Sox", "", "1st",
                                                 "12a"};
  if (numeric_column) {
    return rng.below(10) == 0 ? words[rng.below(words.size())] : numbers[rng.below(numbers.size())];
  }
  return rng.below(5) == 0 ? numbers[rng.below(numbers.size())] : words[rng.below(words.size())];
}

inline tabconf::Table random_table(tabconf::Rng& rng, std::size_t max_rows = 8, std::size_t max_cols = 5) {
  tabconf::Table t;
  std::size_t cols = 1 + rng.below(max_cols);
  std::size_t rows = 1 + rng.below(max_rows);
  for (std::size_t c = 0; c < cols; ++c) t.headers.push_back("col" + std::to_string(c));
  std::vector<bool> numeric(cols);
  for (std::size_t c = 0; c < cols; ++c) numeric[c] = rng.below(2) == 0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(random_cell(rng, numeric[c]));
    t.rows.push_back(row);
  }
  return t;
}

inline tabconf::SqlQuery random_query(tabconf::Rng& rng, const tabconf::Table& t, tabconf::Aggregate agg) {
  tabconf::SqlQuery q;
  q.agg = agg;
  q.select_column = rng.below(t.headers.size());
  std::size_t n = rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    tabconf::Condition c;
    c.column = rng.below(t.headers.size());
    c.op = static_cast<tabconf::CompareOp>(rng.below(3));
    // Mostly literals taken from the table so that matches are common.
    const auto& row = t.rows[rng.below(t.rows.size())];
    c.literal = rng.below(4) == 0 ? random_cell(rng, rng.below(2) == 0) : row[c.column];
    q.conditions.push_back(c);
  }
  return q;
}

// --- BLEU reference ---------------------------------------------------------

inline std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string x; in >> x;) w.push_back(x);
  return w;
}

// Clipped matches and hypothesis totals for order n, one pair, by direct
// enumeration.
inline std::pair<std::size_t, std::size_t> clipped_ngrams(const std::string& hyp, const std::string& ref,
                                                          std::size_t n) {
  auto h = words_of(hyp), r = words_of(ref);
  std::map<std::vector<std::string>, std::size_t> hc, rc;
  for (std::size_t i = 0; i + n <= h.size(); ++i) ++hc[{h.begin() + i, h.begin() + i + n}];
  for (std::size_t i = 0; i + n <= r.size(); ++i) ++rc[{r.begin() + i, r.begin() + i + n}];
  std::size_t match = 0, total = 0;
  for (const auto& [g, k] : hc) {
    total += k;
    auto it = rc.find(g);
    match += std::min(k, it == rc.end() ? 0 : it->second);
  }
  return {match, total};
}

// --- random configurations and outputs -------------------------------------

inline tabconf::TaskConfig random_config(tabconf::Rng& rng) {
  using tabconf::IoType;
  static const std::vector<std::string> names = {"WikiSQL", "Some Data", "Ünïcode Set", "a:b", "x-1", "Q&A (v2)"};
  tabconf::TaskConfig c;
  c.task_type = static_cast<tabconf::TaskType>(rng.below(4));
  if (rng.below(2)) c.dataset = names[rng.below(names.size())];
  std::vector<IoType> ins = {IoType::kQuery, IoType::kTable, IoType::kPassage};
  rng.shuffle(std::span<IoType>(ins));
  ins.resize(rng.below(4));
  c.inputs = ins;
  bool cells = rng.below(2) == 0;
  if (cells) c.outputs.push_back(IoType::kCells);
  static const IoType kinds[] = {IoType::kShortAnswer, IoType::kLongAnswer, IoType::kBinaryAnswer};
  if (cells && c.task_type == tabconf::TaskType::kCellGeneration && rng.below(2)) {
    // cells-only output
  } else {
    c.outputs.push_back(kinds[rng.below(3)]);
  }
  c.singular_cell_label = cells && rng.below(3) == 0;
  tabconf::validate_config(c);
  return c;
}

inline std::string random_text(tabconf::Rng& rng) {
  static const std::vector<std::string> words = {"alpha", "Beta", "12", "3.5", "naïve", "x/y", "(a)", "end.",
                                                 "東京", "o'clock", "-", "a,b"};
  std::string s;
  std::size_t n = 1 + rng.below(4);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += words[rng.below(words.size())];
  }
  return s;
}

inline tabconf::StructuredOutput random_output(tabconf::Rng& rng, tabconf::AnswerKind kind, bool with_cells) {
  tabconf::StructuredOutput o;
  o.kind = kind;
  if (with_cells || kind == tabconf::AnswerKind::kNone) {
    std::vector<std::string> cells;
    std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) cells.push_back(random_text(rng));
    o.cells = cells;
  }
  if (kind == tabconf::AnswerKind::kBinary) {
    o.answer = tabconf::default_binary_labels()[rng.below(2)];
  } else if (kind != tabconf::AnswerKind::kNone) {
    o.answer = random_text(rng);
  }
  return o;
}

}  // namespace testsupport
