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

#include "tabconf/markup.hpp"

#include <algorithm>

#include "tabconf/error.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

constexpr std::string_view kCellOpen = "[cell]";
constexpr std::string_view kCellClose = "[/cell]";
constexpr std::string_view kAnswerOpen = "[answer]";
constexpr std::string_view kAnswerClose = "[/answer]";

bool is_trimmed(std::string_view s) { return !s.empty() && trim(s).size() == s.size(); }

bool contains_tag(std::string_view s) {
  for (auto tag : {kCellOpen, kCellClose, kAnswerOpen, kAnswerClose}) {
    if (s.find(tag) != std::string_view::npos) return true;
  }
  return false;
}

std::string_view payload_tag(IoType t) {
  switch (t) {
    case IoType::kQuery: return "query";
    case IoType::kTable: return "table";
    case IoType::kPassage: return "passage";
    default: return "";
  }
}

const std::optional<std::string>& payload_for(const InputPayload& p, IoType t) {
  static const std::optional<std::string> kNone;
  switch (t) {
    case IoType::kQuery: return p.query;
    case IoType::kTable: return p.table;
    case IoType::kPassage: return p.passage;
    default: return kNone;
  }
}

struct Span {
  std::size_t content_begin;
  std::size_t content_end;
};

// First open..close pair with no other opener in between.
std::optional<Span> first_span(std::string_view text, std::string_view open, std::string_view close) {
  std::size_t p = text.find(open);
  while (p != std::string_view::npos) {
    std::size_t c = text.find(close, p + open.size());
    if (c == std::string_view::npos) return std::nullopt;
    std::size_t q = text.find(open, p + open.size());
    if (q != std::string_view::npos && q < c) {
      p = q;
      continue;
    }
    return Span{p + open.size(), c};
  }
  return std::nullopt;
}

std::optional<std::string> canonical_binary(std::string_view answer, const BinaryLabels& labels) {
  std::string lowered = ascii_lower(trim(answer));
  for (const auto& label : labels) {
    if (lowered == ascii_lower(label)) return label;
  }
  return std::nullopt;
}

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::kMalformedOutput, why); }

StructuredOutput parse_strict(std::string_view text, const ParseOptions& opt) {
  std::string_view rest = trim(text);
  StructuredOutput out;

  auto take_block = [&](std::string_view open, std::string_view close) -> std::optional<std::string_view> {
    if (!rest.starts_with(open)) return std::nullopt;
    std::size_t c = rest.find(close);
    if (c == std::string_view::npos) malformed("unterminated " + std::string(open) + " block");
    std::string_view content = rest.substr(open.size(), c - open.size());
    if (contains_tag(content)) malformed("nested or duplicated tag inside " + std::string(open) + " block");
    rest = ltrim(rest.substr(c + close.size()));
    return trim(content);
  };

  if (auto cells = take_block(kCellOpen, kCellClose)) {
    std::vector<std::string> parts;
    std::string_view delim = trim(opt.cell_delimiter).empty() ? std::string_view(opt.cell_delimiter)
                                                              : trim(opt.cell_delimiter);
    for (const auto& piece : split(*cells, delim)) {
      std::string_view cell = trim(piece);
      if (cell.empty()) malformed("empty cell in [cell] block");
      parts.emplace_back(cell);
    }
    out.cells = std::move(parts);
  }
  if (auto answer = take_block(kAnswerOpen, kAnswerClose)) {
    if (answer->empty()) malformed("empty [answer] block");
    out.answer = std::string(*answer);
  }
  if (!rest.empty()) malformed("unexpected text '" + std::string(rest.substr(0, 40)) + "'");
  if (!out.cells && !out.answer) malformed("no [cell] or [answer] block");

  if (!out.answer) {
    out.kind = AnswerKind::kNone;
  } else {
    out.kind = opt.answer_kind == AnswerKind::kNone ? AnswerKind::kShort : opt.answer_kind;
    if (out.kind == AnswerKind::kBinary) {
      auto label = canonical_binary(*out.answer, opt.binary_labels);
      if (!label) malformed("'" + *out.answer + "' is not a binary label");
      out.answer = *label;
    }
  }
  return out;
}

StructuredOutput parse_lenient(std::string_view text, const ParseOptions& opt) {
  StructuredOutput out;
  auto answer = first_span(text, kAnswerOpen, kAnswerClose);
  auto cells = first_span(text, kCellOpen, kCellClose);

  if (cells) {
    std::string_view delim = trim(opt.cell_delimiter).empty() ? std::string_view(opt.cell_delimiter)
                                                              : trim(opt.cell_delimiter);
    std::vector<std::string> parts;
    for (const auto& piece : split(text.substr(cells->content_begin, cells->content_end - cells->content_begin), delim)) {
      std::string_view cell = trim(piece);
      if (!cell.empty()) parts.emplace_back(cell);
    }
    if (!parts.empty()) out.cells = std::move(parts);
  }

  if (answer) {
    out.answer = std::string(trim(text.substr(answer->content_begin, answer->content_end - answer->content_begin)));
  } else if (out.cells) {
    out.kind = AnswerKind::kNone;
    return out;
  } else {
    out.answer = std::string(trim(text));
  }
  out.kind = opt.answer_kind == AnswerKind::kNone ? AnswerKind::kShort : opt.answer_kind;
  if (out.kind == AnswerKind::kBinary) {
    if (auto label = canonical_binary(*out.answer, opt.binary_labels)) out.answer = *label;
  }
  return out;
}

}  // namespace

std::string_view answer_kind_name(AnswerKind k) {
  switch (k) {
    case AnswerKind::kShort: return "short";
    case AnswerKind::kLong: return "long";
    case AnswerKind::kBinary: return "binary";
    case AnswerKind::kNone: return "none";
  }
  return "";
}

std::optional<AnswerKind> answer_kind_from_name(std::string_view name) {
  for (auto k : {AnswerKind::kShort, AnswerKind::kLong, AnswerKind::kBinary, AnswerKind::kNone}) {
    if (answer_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

AnswerKind answer_kind_of(const TaskConfig& config) {
  auto kind = config.answer_kind();
  if (!kind) return AnswerKind::kNone;
  switch (*kind) {
    case IoType::kLongAnswer: return AnswerKind::kLong;
    case IoType::kBinaryAnswer: return AnswerKind::kBinary;
    default: return AnswerKind::kShort;
  }
}

const BinaryLabels& default_binary_labels() {
  static const BinaryLabels labels = {"entailed", "refuted"};
  return labels;
}

void validate_output(const StructuredOutput& out, const BinaryLabels& labels) {
  auto invalid = [](const std::string& why) { throw Error(ErrorCode::kInvalidOutput, why); };
  if (!out.cells && !out.answer) invalid("output has neither cells nor an answer");
  if (out.cells) {
    if (out.cells->empty()) invalid("cell list is present but empty");
    for (const auto& c : *out.cells) {
      if (!is_trimmed(c) || c.find_first_of("[]|") != std::string::npos) {
        invalid("cell '" + c + "' is empty, untrimmed or contains a reserved character");
      }
    }
  }
  if (out.answer) {
    const std::string& a = *out.answer;
    if (!is_trimmed(a) || a.find_first_of("[]") != std::string::npos) {
      invalid("answer '" + a + "' is empty, untrimmed or contains a bracket");
    }
    if (out.kind == AnswerKind::kNone) invalid("answer present on a cells-only output");
    if (out.kind == AnswerKind::kBinary && std::find(labels.begin(), labels.end(), a) == labels.end()) {
      invalid("'" + a + "' is not a binary label");
    }
  } else if (out.kind != AnswerKind::kNone) {
    invalid("answer kind set without an answer");
  }
}

EncoderRecord render_input(const TaskConfig& config, const InputPayload& payload) {
  EncoderRecord rec;
  rec.prefix = render_prefix(config);
  rec.full_input = rec.prefix;

  std::vector<IoType> order = config.inputs;
  if (order.empty()) {
    for (IoType t : {IoType::kQuery, IoType::kTable, IoType::kPassage}) {
      if (payload_for(payload, t)) order.push_back(t);
    }
  } else {
    for (IoType t : {IoType::kQuery, IoType::kTable, IoType::kPassage}) {
      bool declared = config.has_input(t);
      bool given = payload_for(payload, t).has_value();
      if (declared != given) {
        throw Error(ErrorCode::kPayloadMismatch, std::string(payload_tag(t)) +
                                                     (declared ? " declared but no payload given"
                                                               : " payload given but not declared"));
      }
    }
  }

  for (IoType t : order) {
    const std::string& content = *payload_for(payload, t);
    std::string_view tag = payload_tag(t);
    if (!rec.full_input.empty()) rec.full_input += ' ';
    rec.full_input += '[';
    rec.full_input += tag;
    rec.full_input += "] ";
    rec.full_input += content;
    rec.full_input += " [/";
    rec.full_input += tag;
    rec.full_input += ']';
  }
  rec.query = payload.query;
  rec.passage = payload.passage;
  rec.table_text = payload.table;
  return rec;
}

std::string render_target(const StructuredOutput& out, std::string_view cell_delimiter) {
  std::string s;
  if (out.cells) {
    s += kCellOpen;
    s += ' ';
    for (std::size_t i = 0; i < out.cells->size(); ++i) {
      if (i > 0) s += cell_delimiter;
      s += (*out.cells)[i];
    }
    s += ' ';
    s += kCellClose;
  }
  if (out.answer) {
    if (!s.empty()) s += ' ';
    s += kAnswerOpen;
    s += ' ';
    s += *out.answer;
    s += ' ';
    s += kAnswerClose;
  }
  return s;
}

StructuredOutput parse_output(std::string_view text, const ParseOptions& options) {
  return options.mode == ParseMode::kStrict ? parse_strict(text, options) : parse_lenient(text, options);
}

bool is_well_formed(std::string_view text, const ParseOptions& options) {
  try {
    parse_strict(text, options);
    return true;
  } catch (const Error&) {
    return false;
  }
}

PrefixParse parse_prefix(std::string_view text) {
  auto fail = [](const std::string& why) -> PrefixParse { throw Error(ErrorCode::kMalformedPrefix, why); };
  TaskConfig c;
  int stage = 0;  // 0 task, 1 dataset, 2 inputs, 3 outputs
  bool consumed = false;
  std::string_view rest = ltrim(text);

  while (rest.starts_with('[')) {
    std::size_t close = rest.find(']');
    if (close == std::string_view::npos) break;
    std::string_view segment = rest.substr(1, close - 1);
    std::size_t colon = segment.find(": ");
    if (colon == std::string_view::npos) break;
    std::string_view key = segment.substr(0, colon);
    std::string_view value = segment.substr(colon + 2);

    if (key == "Task") {
      if (stage > 0) return fail("[Task: ...] must come first");
      auto t = task_type_from_label(value);
      if (!t) return fail("unknown task type '" + std::string(value) + "'");
      c.task_type = *t;
      stage = 1;
    } else if (key == "Dataset") {
      if (stage > 1) return fail("[Dataset: ...] must precede inputs and outputs");
      c.dataset = std::string(value);
      stage = 2;
    } else if (key == "Input") {
      if (stage > 2) return fail("[Input: ...] must precede outputs");
      auto t = io_type_from_label(value);
      if (!t) return fail("unknown input type '" + std::string(value) + "'");
      c.inputs.push_back(*t);
      stage = 2;
    } else if (key == "Output") {
      std::optional<IoType> t;
      if (value == "cell") {
        t = IoType::kCells;
        c.singular_cell_label = true;
      } else {
        t = io_type_from_label(value);
      }
      if (!t) return fail("unknown output type '" + std::string(value) + "'");
      c.outputs.push_back(*t);
      stage = 3;
    } else {
      break;
    }
    consumed = true;
    rest = ltrim(rest.substr(close + 1));
  }
  if (!consumed) return fail("text does not start with a configuration segment");

  try {
    validate_config_relaxed(c);
  } catch (const Error& e) {
    return fail(e.what());
  }
  try {
    validate_config(c);
  } catch (const Error&) {
    c.ablated = true;
  }
  return PrefixParse{std::move(c), std::string(rest)};
}

}  // namespace tabconf
