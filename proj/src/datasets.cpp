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

#include "tabconf/datasets.hpp"

#include <algorithm>
#include <istream>
#include <thread>
#include <unordered_set>

#include "tabconf/error.hpp"
#include "tabconf/minisql.hpp"
#include "tabconf/rng.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

constexpr std::size_t kMaxDropMessages = 50;

// Thrown for policy drops that are not errors.
struct Skip {
  std::string reason;
  std::string message;
};

const nlohmann::json& field(const nlohmann::json& rec, const char* name) {
  if (!rec.is_object() || !rec.contains(name) || rec.at(name).is_null()) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("missing field '") + name + "'");
  }
  return rec.at(name);
}

std::string text_of(const nlohmann::json& v, const char* name) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  throw Error(ErrorCode::kSchemaMismatch, std::string("field '") + name + "' must be a string");
}

std::string string_field(const nlohmann::json& rec, const char* name) { return text_of(field(rec, name), name); }

std::vector<std::string> string_list(const nlohmann::json& v, const char* name) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& item : v) out.push_back(text_of(item, name));
  } else {
    out.push_back(text_of(v, name));
  }
  return out;
}

std::string record_id(const nlohmann::json& rec, std::string_view adapter, std::size_t index) {
  if (rec.is_object() && rec.contains("id") && !rec.at("id").is_null()) return text_of(rec.at("id"), "id");
  return std::string(adapter) + "-" + std::to_string(index);
}

std::string clean(std::string_view s) { return sanitize_cell(s); }

// Joins sanitized answer values; multi-valued answers use the cell delimiter.
std::string join_answers(const std::vector<std::string>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) {
    std::string c = clean(v);
    if (!c.empty()) parts.push_back(std::move(c));
  }
  return join(parts, kDefaultCellDelimiter);
}

std::set<std::size_t> rows_containing(const Table& table, const std::vector<std::string>& answers) {
  std::set<std::size_t> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (const auto& cell : table.rows[i]) {
      for (const auto& a : answers) {
        if (!trim(a).empty() && iequals_ascii(trim(cell), trim(a))) rows.insert(i);
      }
    }
  }
  return rows;
}

Example base_example(std::string_view adapter, std::string id) {
  Example ex;
  ex.dataset = std::string(adapter);
  ex.config = builtin_config(adapter);
  ex.example_id = std::move(id);
  ex.target.kind = answer_kind_of(ex.config);
  return ex;
}

void require_answer(const Example& ex) {
  if (!ex.target.answer || ex.target.answer->empty()) throw Skip{"empty_answer", "answer is empty after cleaning"};
}

std::vector<std::pair<std::size_t, std::size_t>> coordinates(const nlohmann::json& v, const Table& table) {
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (const auto& c : v) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw Error(ErrorCode::kSchemaMismatch, "highlighted_cells entries must be [row, col]");
    }
    auto r = c[0].get<std::int64_t>(), col = c[1].get<std::int64_t>();
    if (r < 0 || col < 0 || static_cast<std::size_t>(r) >= table.rows.size() ||
        static_cast<std::size_t>(col) >= table.width()) {
      throw Error(ErrorCode::kColumnOutOfRange, "highlighted cell [" + std::to_string(r) + ", " +
                                                    std::to_string(col) + "] is outside the table");
    }
    coords.emplace_back(static_cast<std::size_t>(r), static_cast<std::size_t>(col));
  }
  return coords;
}

// Target cells from highlighted coordinates, in the annotation's order.
void set_highlighted_cells(Example& ex, const nlohmann::json& rec) {
  const Table& table = *ex.table;
  std::vector<std::string> cells;
  for (auto [r, c] : coordinates(field(rec, "highlighted_cells"), table)) {
    std::string text = clean(table.rows[r][c]);
    if (text.empty()) continue;
    cells.push_back(std::move(text));
    ex.protected_rows.insert(r);
  }
  if (cells.empty()) throw Skip{"empty_cells", "no non-empty highlighted cells"};
  ex.target.cells = std::move(cells);
}

Example adapt_wikisql(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("wikisql", std::move(id));
  ex.query = clean(string_field(rec, "question"));
  ex.table = table_from_json(field(rec, "table"));
  SqlQuery q = query_from_json(field(rec, "sql"));
  ExecutionResult result = execute(q, *ex.table);

  std::vector<std::string> cells;
  for (const auto& c : result.relevant_cells) {
    std::string text = clean(c.text);
    if (text.empty()) continue;
    cells.push_back(std::move(text));
    ex.protected_rows.insert(c.row);
  }
  if (cells.empty()) throw Skip{"empty_extraction", "query matched no non-empty cells"};
  ex.target.cells = std::move(cells);
  ex.target.answer = join_answers(result.answer_values);
  require_answer(ex);
  return ex;
}

Example adapt_short_table_qa(std::string_view adapter, const nlohmann::json& rec, std::string id) {
  Example ex = base_example(adapter, std::move(id));
  ex.query = clean(string_field(rec, "question"));
  ex.table = table_from_json(field(rec, "table"));
  auto answers = string_list(field(rec, "answers"), "answers");
  ex.target.answer = join_answers(answers);
  ex.protected_rows = rows_containing(*ex.table, answers);
  require_answer(ex);
  return ex;
}

Example adapt_squad(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("squad", std::move(id));
  ex.query = clean(string_field(rec, "question"));
  ex.passage = clean(string_field(rec, "context"));
  const auto& answers = field(rec, "answers");
  auto texts = answers.is_object() ? string_list(field(answers, "text"), "answers.text") : string_list(answers, "answers");
  if (texts.empty()) throw Skip{"empty_answer", "no answer texts"};
  ex.target.answer = clean(texts.front());
  require_answer(ex);
  return ex;
}

Example adapt_totto(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("totto", std::move(id));
  ex.table = table_from_json(field(rec, "table"));
  set_highlighted_cells(ex, rec);
  ex.target.answer = clean(string_field(rec, "sentence"));
  require_answer(ex);
  return ex;
}

Example adapt_tabfact(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("tabfact", std::move(id));
  ex.query = clean(string_field(rec, "statement"));
  ex.table = table_from_json(field(rec, "table"));
  const auto& label = field(rec, "label");
  if (!label.is_number_integer() || (label.get<int>() != 0 && label.get<int>() != 1)) {
    throw Error(ErrorCode::kSchemaMismatch, "field 'label' must be 0 or 1");
  }
  ex.target.answer = default_binary_labels()[label.get<int>() == 1 ? 0 : 1];
  return ex;
}

std::string joined_passages(const nlohmann::json& rec, const char* name) {
  return clean(join(string_list(field(rec, name), name), " "));
}

Example adapt_hybrid_qa(std::string_view adapter, const nlohmann::json& rec, std::string id, const char* passages) {
  Example ex = base_example(adapter, std::move(id));
  ex.query = clean(string_field(rec, "question"));
  ex.table = table_from_json(field(rec, "table"));
  ex.passage = joined_passages(rec, passages);
  auto answer = string_list(field(rec, "answer"), "answer");
  ex.target.answer = join_answers(answer);
  ex.protected_rows = rows_containing(*ex.table, answer);
  require_answer(ex);
  return ex;
}

Example adapt_fetaqa(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("fetaqa", std::move(id));
  ex.query = clean(string_field(rec, "question"));
  ex.table = table_from_json(field(rec, "table"));
  set_highlighted_cells(ex, rec);
  ex.target.answer = clean(string_field(rec, "answer"));
  require_answer(ex);
  return ex;
}

Example adapt_feverous(const nlohmann::json& rec, std::string id) {
  Example ex = base_example("feverous", std::move(id));
  ex.query = clean(string_field(rec, "claim"));
  ex.table = table_from_json(field(rec, "table"));
  ex.passage = joined_passages(rec, "passages");
  std::string label = ascii_lower(trim(string_field(rec, "label")));
  if (label == "supports") {
    ex.target.answer = default_binary_labels()[0];
  } else if (label == "refutes") {
    ex.target.answer = default_binary_labels()[1];
  } else {
    throw Skip{"unsupported_label", "label '" + label + "' is neither SUPPORTS nor REFUTES"};
  }
  return ex;
}

Example adapt_one(std::string_view adapter, const nlohmann::json& rec, std::string id) {
  if (adapter == "wikisql") return adapt_wikisql(rec, std::move(id));
  if (adapter == "wikitq") return adapt_short_table_qa("wikitq", rec, std::move(id));
  if (adapter == "squad") return adapt_squad(rec, std::move(id));
  if (adapter == "totto") return adapt_totto(rec, std::move(id));
  if (adapter == "tabfact") return adapt_tabfact(rec, std::move(id));
  if (adapter == "hybridqa") return adapt_hybrid_qa("hybridqa", rec, std::move(id), "passages");
  if (adapter == "tatqa") return adapt_hybrid_qa("tatqa", rec, std::move(id), "paragraphs");
  if (adapter == "fetaqa") return adapt_fetaqa(rec, std::move(id));
  if (adapter == "feverous") return adapt_feverous(rec, std::move(id));
  throw Error(ErrorCode::kUnknownDataset, "no adapter for '" + std::string(adapter) + "'");
}

IngestResult ingest_records(std::span<const nlohmann::json> records, std::string_view adapter) {
  IngestResult result;
  result.drops.records_in = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string id;
    try {
      id = record_id(records[i], adapter, i);
      Example ex = adapt_one(adapter, records[i], id);
      validate_output(ex.target);
      result.examples.push_back(std::move(ex));
    } catch (const Skip& s) {
      result.drops.drop(s.reason, "record " + std::to_string(i) + ": " + s.message);
    } catch (const Error& e) {
      result.drops.drop(std::string(error_code_name(e.code())), "record " + std::to_string(i) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      result.drops.drop("SchemaMismatch", "record " + std::to_string(i) + ": " + e.what());
    }
  }
  result.drops.kept = result.examples.size();
  return result;
}

}  // namespace

void DropReport::drop(const std::string& reason, const std::string& message) {
  ++counts[reason];
  if (messages.size() < kMaxDropMessages) messages.push_back(message);
}

std::size_t DropReport::dropped() const {
  std::size_t n = 0;
  for (const auto& [_, c] : counts) n += c;
  return n;
}

void DropReport::merge(const DropReport& other) {
  records_in += other.records_in;
  kept += other.kept;
  for (const auto& [reason, c] : other.counts) counts[reason] += c;
  for (const auto& m : other.messages) {
    if (messages.size() < kMaxDropMessages) messages.push_back(m);
  }
}

nlohmann::json DropReport::to_json() const {
  return {{"records_in", records_in}, {"kept", kept}, {"dropped", dropped()}, {"counts", counts}, {"messages", messages}};
}

IngestResult ingest(std::span<const nlohmann::json> records, std::string_view adapter_id) {
  if (adapter_id == "nq_tables") return filter_nq_tables(records);
  if (adapter_id == "wikisql_answer_only") {
    IngestResult r = ingest_records(records, "wikisql");
    r.examples = make_wikisql_answer_only(r.examples);
    return r;
  }
  if (adapter_id == "totto_reverse") {
    IngestResult r = ingest_records(records, "totto");
    r.examples = make_totto_reverse(r.examples);
    return r;
  }
  const auto& ids = builtin_dataset_ids();
  if (std::find(ids.begin(), ids.end(), adapter_id) == ids.end()) {
    throw Error(ErrorCode::kUnknownDataset, "no adapter for '" + std::string(adapter_id) + "'");
  }
  return ingest_records(records, adapter_id);
}

IngestResult ingest_jsonl(std::istream& in, std::string_view adapter_id) {
  std::vector<nlohmann::json> records;
  DropReport parse_drops;
  std::string line;
  for (std::size_t n = 0; std::getline(in, line); ++n) {
    if (trim(line).empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      ++parse_drops.records_in;
      parse_drops.drop("SchemaMismatch", "line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  IngestResult r = ingest(records, adapter_id);
  r.drops.merge(parse_drops);
  return r;
}

std::vector<Example> make_wikisql_answer_only(const std::vector<Example>& examples) {
  std::vector<Example> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    Example copy = ex;
    copy.dataset = "wikisql_answer_only";
    copy.config = builtin_config("wikisql_answer_only");
    copy.target.cells.reset();
    out.push_back(std::move(copy));
  }
  return out;
}

std::vector<Example> make_totto_reverse(const std::vector<Example>& examples) {
  std::vector<Example> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    if (!ex.target.cells || ex.target.cells->empty() || !ex.target.answer) {
      throw Error(ErrorCode::kMissingCells, "example '" + ex.example_id + "' lacks cells or a summary");
    }
    Example rev = ex;
    rev.dataset = "totto_reverse";
    rev.config = builtin_config("totto_reverse");
    rev.query = *ex.target.answer;
    rev.target.answer.reset();
    rev.target.kind = AnswerKind::kNone;
    out.push_back(std::move(rev));
  }
  return out;
}

IngestResult filter_nq_tables(std::span<const nlohmann::json> records) {
  IngestResult result;
  result.drops.records_in = records.size();
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    try {
      Example ex = base_example("nq_tables", record_id(rec, "nq_tables", i));
      std::string question = string_field(rec, "question");
      Table table = table_from_json(field(rec, "table"));
      auto answers = string_list(field(rec, "answers"), "answers");
      if (answers.empty()) throw Skip{"empty_answer", "no answers"};

      for (const auto& a : answers) {
        bool found = false;
        for (const auto& row : table.rows) {
          for (const auto& cell : row) found = found || iequals_ascii(trim(cell), trim(a));
        }
        if (!found) throw Skip{"not_locatable", "answer '" + a + "' matches no table cell"};
      }

      nlohmann::json key = {table_to_json(table), trim(question), answers};
      if (!seen.insert(key.dump()).second) throw Skip{"duplicate", "repeated (table, question, answers) triple"};

      ex.query = clean(question);
      ex.protected_rows = rows_containing(table, answers);
      ex.table = std::move(table);
      ex.target.answer = join_answers(answers);
      require_answer(ex);
      validate_output(ex.target);
      result.examples.push_back(std::move(ex));
    } catch (const Skip& s) {
      result.drops.drop(s.reason, "record " + std::to_string(i) + ": " + s.message);
    } catch (const Error& e) {
      result.drops.drop(std::string(error_code_name(e.code())), "record " + std::to_string(i) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      result.drops.drop("SchemaMismatch", "record " + std::to_string(i) + ": " + e.what());
    }
  }
  result.drops.kept = result.examples.size();
  return result;
}

std::string ModelReadyRecord::to_jsonl_line() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["target"] = target;
  j["dataset"] = dataset;
  j["meta"]["example_id"] = example_id;
  j["meta"]["retained_row_indices"] = retained_row_indices;
  return j.dump();
}

ModelReadyRecord ModelReadyRecord::from_json(const nlohmann::json& j) {
  ModelReadyRecord r;
  r.input = string_field(j, "input");
  r.target = string_field(j, "target");
  r.dataset = j.value("dataset", "");
  if (j.contains("meta") && j.at("meta").is_object()) {
    const auto& meta = j.at("meta");
    if (meta.contains("example_id")) r.example_id = text_of(meta.at("example_id"), "example_id");
    if (meta.contains("retained_row_indices")) {
      r.retained_row_indices = meta.at("retained_row_indices").get<std::vector<std::size_t>>();
    }
  }
  return r;
}

namespace {

ModelReadyRecord build_one(const Example& ex, const BuildOptions& opt, const TokenCounter& counter) {
  ModelReadyRecord rec;
  rec.dataset = ex.dataset;
  rec.example_id = ex.example_id;

  InputPayload payload{ex.query, ex.passage, std::nullopt};
  if (!ex.table) {
    rec.input = render_input(ex.config, payload).full_input;
  } else {
    payload.table = "";
    std::size_t base = counter.count(render_input(ex.config, payload).full_input);
    if (base >= opt.budget) {
      throw Error(ErrorCode::kBudgetInfeasible, "non-table segments alone need " + std::to_string(base) + " tokens");
    }
    std::size_t table_budget = opt.budget - base;
    const std::uint64_t seed = derive_seed(opt.seed, ex.example_id);
    // Shrink the table's share until the assembled input fits; one pass for additive counters.
    while (true) {
      LinearizedTable lt = linearize(*ex.table, table_budget, opt.cell_limit, counter, seed, ex.protected_rows);
      payload.table = lt.text;
      rec.input = render_input(ex.config, payload).full_input;
      std::size_t n = counter.count(rec.input);
      if (n <= opt.budget) {
        rec.retained_row_indices = std::move(lt.retained_row_indices);
        break;
      }
      std::size_t excess = n - opt.budget;
      if (excess >= table_budget) {
        throw Error(ErrorCode::kBudgetInfeasible, "input cannot be brought under " + std::to_string(opt.budget));
      }
      table_budget -= excess;
    }
  }
  rec.input_tokens = counter.count(rec.input);
  if (rec.input_tokens > opt.budget) {
    throw Error(ErrorCode::kBudgetInfeasible,
                "input needs " + std::to_string(rec.input_tokens) + " tokens, budget is " + std::to_string(opt.budget));
  }

  rec.target = render_target(ex.target, opt.cell_delimiter);
  ParseOptions strict{ParseMode::kStrict, opt.cell_delimiter, ex.target.kind, default_binary_labels()};
  if (parse_output(rec.target, strict) != ex.target) {
    throw Error(ErrorCode::kInvalidOutput, "target does not parse back: " + rec.target);
  }
  return rec;
}

}  // namespace

BuildResult build_model_ready(const std::vector<Example>& examples, const BuildOptions& options,
                              const TokenCounter& counter) {
  struct Slot {
    std::optional<ModelReadyRecord> record;
    std::string reason;
    std::string message;
  };
  std::vector<Slot> slots(examples.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        slots[i].record = build_one(examples[i], options, counter);
      } catch (const Error& e) {
        slots[i].reason = std::string(error_code_name(e.code()));
        slots[i].message = "example '" + examples[i].example_id + "': " + e.what();
      }
    }
  };

  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || examples.size() < 2) {
    work(0, examples.size());
  } else {
    std::vector<std::jthread> pool;
    std::size_t chunk = (examples.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < examples.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(examples.size(), begin + chunk));
    }
  }

  BuildResult result;
  result.drops.records_in = examples.size();
  for (auto& s : slots) {
    if (s.record) {
      result.records.push_back(std::move(*s.record));
    } else {
      result.drops.drop(s.reason, s.message);
    }
  }
  result.drops.kept = result.records.size();
  return result;
}

}  // namespace tabconf
