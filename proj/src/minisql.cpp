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

#include "tabconf/minisql.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "tabconf/error.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

constexpr std::string_view kCurrencySymbols[] = {"$", "€", "£", "¥"};

std::string literal_from_json(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  throw Error(ErrorCode::kSchemaMismatch, "condition value must be a string or number");
}

bool holds(const Condition& cond, std::string_view cell) {
  auto lhs = coerce_number(cell);
  auto rhs = coerce_number(cond.literal);
  if (lhs && rhs) {
    switch (cond.op) {
      case CompareOp::kEq: return *lhs == *rhs;
      case CompareOp::kGt: return *lhs > *rhs;
      case CompareOp::kLt: return *lhs < *rhs;
    }
  }
  if (cond.op != CompareOp::kEq) {
    throw Error(ErrorCode::kNonComparable, "cannot order '" + std::string(cell) + "' against '" + cond.literal + "'");
  }
  return iequals_ascii(trim(cell), trim(cond.literal));
}

// --- text grammar -----------------------------------------------------------

struct Token {
  enum Kind { kWord, kQuoted, kOp, kLParen, kRParen } kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (is_ascii_space(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\'' || c == '"') {
      std::size_t end = s.find(c, i + 1);
      if (end == std::string_view::npos) throw Error(ErrorCode::kSqlSyntax, "unterminated quote");
      tokens.push_back({Token::kQuoted, std::string(s.substr(i + 1, end - i - 1))});
      i = end + 1;
    } else if (c == '=' || c == '<' || c == '>') {
      tokens.push_back({Token::kOp, std::string(1, c)});
      ++i;
    } else if (c == '(') {
      tokens.push_back({Token::kLParen, "("});
      ++i;
    } else if (c == ')') {
      tokens.push_back({Token::kRParen, ")"});
      ++i;
    } else {
      std::size_t start = i;
      while (i < s.size() && !is_ascii_space(static_cast<unsigned char>(s[i])) &&
             std::string_view("=<>()'\"").find(s[i]) == std::string_view::npos) {
        ++i;
      }
      tokens.push_back({Token::kWord, std::string(s.substr(start, i - start))});
    }
  }
  return tokens;
}

class SqlParser {
 public:
  SqlParser(std::vector<Token> tokens, const std::vector<std::string>& headers)
      : tokens_(std::move(tokens)), headers_(headers) {}

  SqlQuery parse() {
    SqlQuery q;
    if (!take_keyword("SELECT")) fail("expected SELECT");
    if (auto agg = peek_aggregate()) {
      q.agg = *agg;
      ++pos_;
    }
    bool paren = take(Token::kLParen);
    q.select_column = column_until({"WHERE"}, paren);
    if (paren && !take(Token::kRParen)) fail("expected ')'");
    if (take_keyword("WHERE")) {
      do {
        Condition cond;
        cond.column = column_until({}, false);
        if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::kOp) fail("expected =, > or <");
        char op = tokens_[pos_++].text[0];
        cond.op = op == '=' ? CompareOp::kEq : op == '>' ? CompareOp::kGt : CompareOp::kLt;
        cond.literal = value_until_and();
        q.conditions.push_back(std::move(cond));
      } while (take_keyword("AND"));
    }
    if (pos_ != tokens_.size()) fail("unexpected '" + tokens_[pos_].text + "'");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& why) { throw Error(ErrorCode::kSqlSyntax, why); }

  bool is_keyword(std::size_t i, std::string_view kw) const {
    return i < tokens_.size() && tokens_[i].kind == Token::kWord && iequals_ascii(tokens_[i].text, kw);
  }

  bool take_keyword(std::string_view kw) {
    if (!is_keyword(pos_, kw)) return false;
    ++pos_;
    return true;
  }

  bool take(Token::Kind kind) {
    if (pos_ < tokens_.size() && tokens_[pos_].kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  // An aggregate keyword only counts when something follows it, so a column
  // literally named "count" still parses.
  std::optional<Aggregate> peek_aggregate() const {
    static constexpr std::pair<std::string_view, Aggregate> kAggs[] = {
        {"MAX", Aggregate::kMax}, {"MIN", Aggregate::kMin}, {"COUNT", Aggregate::kCount},
        {"SUM", Aggregate::kSum}, {"AVG", Aggregate::kAvg}};
    if (pos_ + 1 >= tokens_.size() || is_keyword(pos_ + 1, "WHERE")) return std::nullopt;
    for (const auto& [name, agg] : kAggs) {
      if (is_keyword(pos_, name)) return agg;
    }
    return std::nullopt;
  }

  std::size_t column_until(std::initializer_list<std::string_view> stops, bool stop_at_paren) {
    std::string name;
    if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::kQuoted) {
      name = tokens_[pos_++].text;
    } else {
      while (pos_ < tokens_.size() && tokens_[pos_].kind == Token::kWord) {
        bool stop = false;
        for (auto kw : stops) stop = stop || is_keyword(pos_, kw);
        if (stop) break;
        if (!name.empty()) name += ' ';
        name += tokens_[pos_++].text;
      }
      if (stop_at_paren && pos_ < tokens_.size() && tokens_[pos_].kind != Token::kRParen) fail("expected ')'");
    }
    if (name.empty()) fail("expected a column name");
    return resolve(name);
  }

  std::string value_until_and() {
    if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::kQuoted) return tokens_[pos_++].text;
    std::string value;
    while (pos_ < tokens_.size() && tokens_[pos_].kind == Token::kWord && !is_keyword(pos_, "AND")) {
      if (!value.empty()) value += ' ';
      value += tokens_[pos_++].text;
    }
    if (value.empty()) fail("expected a value");
    return value;
  }

  std::size_t resolve(const std::string& name) {
    for (std::size_t i = 0; i < headers_.size(); ++i) {
      if (iequals_ascii(trim(headers_[i]), name)) return i;
    }
    std::string lowered = ascii_lower(name);
    if (lowered.starts_with("col")) {
      std::string_view digits = trim(std::string_view(lowered).substr(3));
      std::size_t idx = 0;
      auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
      if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) return idx;
    }
    fail("unknown column '" + name + "'");
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& headers_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view aggregate_name(Aggregate a) {
  switch (a) {
    case Aggregate::kNone: return "";
    case Aggregate::kMax: return "MAX";
    case Aggregate::kMin: return "MIN";
    case Aggregate::kCount: return "COUNT";
    case Aggregate::kSum: return "SUM";
    case Aggregate::kAvg: return "AVG";
  }
  return "";
}

std::string_view compare_op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kGt: return ">";
    case CompareOp::kLt: return "<";
  }
  return "";
}

SqlQuery from_structured(std::int64_t sel, std::int64_t agg, const std::vector<StructuredCondition>& conds) {
  if (agg < 0 || agg > 5) throw Error(ErrorCode::kUnknownCode, "aggregate code " + std::to_string(agg));
  if (sel < 0) throw Error(ErrorCode::kColumnOutOfRange, "select column " + std::to_string(sel));
  SqlQuery q;
  q.select_column = static_cast<std::size_t>(sel);
  q.agg = static_cast<Aggregate>(agg);
  for (const auto& c : conds) {
    if (c.op < 0 || c.op > 2) throw Error(ErrorCode::kUnknownCode, "operator code " + std::to_string(c.op));
    if (c.column < 0) throw Error(ErrorCode::kColumnOutOfRange, "condition column " + std::to_string(c.column));
    q.conditions.push_back({static_cast<std::size_t>(c.column), static_cast<CompareOp>(c.op), c.literal});
  }
  return q;
}

SqlQuery query_from_json(const nlohmann::json& j) {
  for (const char* key : {"sel", "agg", "conds"}) {
    if (!j.contains(key)) throw Error(ErrorCode::kSchemaMismatch, std::string("sql: missing field '") + key + "'");
  }
  std::vector<StructuredCondition> conds;
  for (const auto& c : j.at("conds")) {
    if (!c.is_array() || c.size() != 3) throw Error(ErrorCode::kSchemaMismatch, "sql: condition must be [col, op, value]");
    conds.push_back({c[0].get<std::int64_t>(), c[1].get<std::int64_t>(), literal_from_json(c[2])});
  }
  return from_structured(j.at("sel").get<std::int64_t>(), j.at("agg").get<std::int64_t>(), conds);
}

nlohmann::json query_to_json(const SqlQuery& q) {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& c : q.conditions) conds.push_back({c.column, static_cast<int>(c.op), c.literal});
  return {{"sel", q.select_column}, {"agg", static_cast<int>(q.agg)}, {"conds", conds}};
}

SqlQuery parse_sql(std::string_view text, const std::vector<std::string>& headers) {
  return SqlParser(tokenize(text), headers).parse();
}

std::string to_sql(const SqlQuery& q, const std::vector<std::string>& headers) {
  auto col = [&](std::size_t i) {
    return i < headers.size() ? "\"" + headers[i] + "\"" : "col" + std::to_string(i);
  };
  std::string s = "SELECT ";
  if (q.agg != Aggregate::kNone) s += std::string(aggregate_name(q.agg)) + " ";
  s += col(q.select_column);
  for (std::size_t i = 0; i < q.conditions.size(); ++i) {
    const auto& c = q.conditions[i];
    s += i == 0 ? " WHERE " : " AND ";
    s += col(c.column) + " " + std::string(compare_op_symbol(c.op)) + " \"" + c.literal + "\"";
  }
  return s;
}

std::optional<double> coerce_number(std::string_view text) {
  std::string_view s = trim(text);
  for (auto sym : kCurrencySymbols) {
    if (s.starts_with(sym)) {
      s = ltrim(s.substr(sym.size()));
      break;
    }
  }
  std::string digits;
  for (char c : s) {
    if (c != ',') digits += c;
  }
  std::string_view d = digits;
  if (d.starts_with('+')) d.remove_prefix(1);
  if (d.empty()) return std::nullopt;
  double value = 0;
  auto [end, ec] = std::from_chars(d.data(), d.data() + d.size(), value);
  if (ec != std::errc() || end != d.data() + d.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  if (value == 0) return "0";
  if (std::nearbyint(value) == value && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string format_average(double value) {
  if (value == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

ExecutionResult execute(const SqlQuery& query, const Table& table) {
  validate_table(table);
  auto check = [&](std::size_t col) {
    if (col >= table.width()) {
      throw Error(ErrorCode::kColumnOutOfRange,
                  "column " + std::to_string(col) + " but table has " + std::to_string(table.width()));
    }
  };
  check(query.select_column);
  for (const auto& c : query.conditions) check(c.column);

  ExecutionResult result;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    // Every condition is evaluated so that errors do not depend on condition order.
    bool match = true;
    for (const auto& c : query.conditions) match = holds(c, row[c.column]) && match;
    if (match) result.relevant_cells.push_back({i, query.select_column, row[query.select_column]});
  }

  const auto& cells = result.relevant_cells;
  switch (query.agg) {
    case Aggregate::kNone:
      for (const auto& c : cells) result.answer_values.push_back(c.text);
      return result;
    case Aggregate::kCount:
      result.answer_values.push_back(std::to_string(cells.size()));
      return result;
    default:
      break;
  }
  if (cells.empty()) return result;

  std::vector<double> values;
  for (const auto& c : cells) {
    auto v = coerce_number(c.text);
    if (!v) {
      throw Error(ErrorCode::kNonNumericAggregate,
                  std::string(aggregate_name(query.agg)) + " over non-numeric cell '" + c.text + "'");
    }
    values.push_back(*v);
  }
  double sum = 0;
  for (double v : values) sum += v;
  switch (query.agg) {
    case Aggregate::kMax: result.answer_values.push_back(format_number(*std::max_element(values.begin(), values.end()))); break;
    case Aggregate::kMin: result.answer_values.push_back(format_number(*std::min_element(values.begin(), values.end()))); break;
    case Aggregate::kSum: result.answer_values.push_back(format_number(sum)); break;
    case Aggregate::kAvg: result.answer_values.push_back(format_average(sum / static_cast<double>(values.size()))); break;
    default: break;
  }
  return result;
}

std::vector<std::string> extract_relevant_cells(const SqlQuery& query, const Table& table) {
  std::vector<std::string> texts;
  for (auto& c : execute(query, table).relevant_cells) texts.push_back(std::move(c.text));
  return texts;
}

}  // namespace tabconf
