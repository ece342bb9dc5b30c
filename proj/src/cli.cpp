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

#include "tabconf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tabconf/config.hpp"
#include "tabconf/config_file.hpp"
#include "tabconf/datasets.hpp"
#include "tabconf/error.hpp"
#include "tabconf/markup.hpp"
#include "tabconf/metrics.hpp"
#include "tabconf/mixing.hpp"
#include "tabconf/text.hpp"

namespace tabconf::cli {
namespace {

namespace fs = std::filesystem;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<ModelReadyRecord> read_records(const fs::path& path) {
  std::vector<ModelReadyRecord> records;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      records.push_back(ModelReadyRecord::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch, path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return records;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  for (const auto& part : split(s, ",")) {
    std::string_view t = trim(part);
    if (!t.empty()) items.emplace_back(t);
  }
  return items;
}

// Answer kind a gold record was built for, read back from its prefix.
AnswerKind kind_of_record(const ModelReadyRecord& rec) {
  try {
    return answer_kind_of(parse_prefix(rec.input).config);
  } catch (const Error&) {
    return AnswerKind::kShort;
  }
}

// Text compared by answer metrics; cells-only outputs compare their cell list.
std::string answer_text(const StructuredOutput& o) {
  if (o.answer) return *o.answer;
  if (o.cells) return join(*o.cells, kDefaultCellDelimiter);
  return "";
}

std::optional<std::string> table_segment(std::string_view input) {
  std::size_t open = input.find("[table] ");
  if (open == std::string_view::npos) return std::nullopt;
  std::size_t start = open + 8;
  std::size_t close = input.find(" [/table]", start);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(input.substr(start, close - start));
}

std::string remove_segment(std::string_view text, std::string_view tag) {
  std::string open = "[" + std::string(tag) + "]";
  std::string close = "[/" + std::string(tag) + "]";
  std::size_t b = text.find(open);
  if (b == std::string_view::npos) return std::string(text);
  std::size_t e = text.find(close, b);
  if (e == std::string_view::npos) return std::string(text);
  std::string out(rtrim(text.substr(0, b)));
  std::string_view tail = ltrim(text.substr(e + close.size()));
  if (!out.empty() && !tail.empty()) out += ' ';
  out += tail;
  return out;
}

// --- build ------------------------------------------------------------------

struct BuildArgs {
  std::string manifest;
  std::string out_dir = "build_out";
  std::optional<std::size_t> budget, cell_limit;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> cell_delimiter;
};

int cmd_build(const BuildArgs& a, Streams io) {
  fs::path manifest = a.manifest;
  if (!fs::exists(manifest)) {
    io.err << "error: manifest not found: " << manifest.string() << "\n";
    return kExitFatal;
  }
  PipelineConfig cfg = pipeline_from_json(load_config_file(manifest), manifest.parent_path());
  if (a.budget) cfg.budget = *a.budget;
  if (a.cell_limit) cfg.cell_limit = *a.cell_limit;
  if (a.seed) cfg.seed = *a.seed;
  if (a.threads) cfg.threads = *a.threads;
  if (a.cell_delimiter) cfg.cell_delimiter = *a.cell_delimiter;
  if (cfg.datasets.empty()) {
    io.err << "error: manifest " << manifest.string() << " lists no [[dataset]] entries\n";
    return kExitFatal;
  }
  std::set<std::string> seen;
  for (const auto& d : cfg.datasets) {
    if (!seen.insert(d.name).second) {
      io.err << "error: dataset name '" << d.name << "' listed twice\n";
      return kExitFatal;
    }
    if (!fs::exists(d.path)) {
      io.err << "error: dataset file not found: " << d.path.string() << "\n";
      return kExitFatal;
    }
  }

  BuildOptions opts{cfg.budget, cfg.cell_limit, cfg.seed, cfg.cell_delimiter, cfg.threads};
  nlohmann::ordered_json report;
  std::size_t total_dropped = 0;
  for (const auto& d : cfg.datasets) {
    std::ifstream in(d.path);
    IngestResult ingested = ingest_jsonl(in, d.id);
    BuildResult built = build_model_ready(ingested.examples, opts);

    std::string jsonl;
    for (const auto& r : built.records) jsonl += r.to_jsonl_line() + "\n";
    write_text(fs::path(a.out_dir) / (d.name + ".jsonl"), jsonl);

    report[d.name] = {{"ingest", ingested.drops.to_json()}, {"build", built.drops.to_json()}};
    total_dropped += ingested.drops.dropped() + built.drops.dropped();
    io.err << d.name << ": " << built.records.size() << " records (" << ingested.drops.dropped()
           << " dropped at ingest, " << built.drops.dropped() << " at build)\n";
  }
  write_text(fs::path(a.out_dir) / "drop_report.json", report.dump(2) + "\n");
  return total_dropped > 0 ? kExitPartial : kExitOk;
}

// --- compose ----------------------------------------------------------------

struct ComposeArgs {
  std::string task;
  std::string inputs;
  std::string outputs;
  std::optional<std::string> dataset;
  bool json = false;
};

int cmd_compose(const ComposeArgs& a, Streams io) {
  auto task = task_type_from_name(a.task);
  if (!task) throw Error(ErrorCode::kInvalidArgument, "unknown task '" + a.task + "'");
  auto types = [](const std::string& list) {
    std::vector<IoType> v;
    for (const auto& name : split_list(list)) {
      auto t = io_type_from_name(name);
      if (!t) throw Error(ErrorCode::kInvalidArgument, "unknown type '" + name + "'");
      v.push_back(*t);
    }
    return v;
  };
  TaskConfig c = a.dataset ? make_config(*task, a.dataset, types(a.inputs), types(a.outputs))
                           : compose_for_unseen(*task, types(a.inputs), types(a.outputs));
  io.out << (a.json ? config_to_json(c).dump() : render_prefix(c)) << "\n";
  return kExitOk;
}

// --- mix --------------------------------------------------------------------

struct MixArgs {
  std::optional<std::string> manifest;
  std::vector<std::string> sizes;
  std::optional<double> temperature;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> seed;
  std::size_t length = 0;
  std::optional<std::string> out;
};

int cmd_mix(const MixArgs& a, Streams io) {
  PipelineConfig cfg;
  if (a.manifest) {
    fs::path p = *a.manifest;
    if (!fs::exists(p)) {
      io.err << "error: manifest not found: " << p.string() << "\n";
      return kExitFatal;
    }
    cfg = pipeline_from_json(load_config_file(p), p.parent_path());
  }
  for (const auto& item : a.sizes) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--size expects id=count, got '" + item + "'");
    cfg.mix.push_back({item.substr(0, eq), std::stoull(item.substr(eq + 1))});
  }
  if (a.temperature) cfg.temperature = *a.temperature;
  if (a.cap) cfg.cap = *a.cap;
  if (a.seed) cfg.seed = *a.seed;

  MixSpec spec{cfg.mix, cfg.temperature, cfg.cap};
  auto weights = mixing_weights(spec);
  nlohmann::ordered_json j;
  j["temperature"] = spec.temperature;
  j["cap"] = spec.cap ? nlohmann::ordered_json(*spec.cap) : nlohmann::ordered_json(nullptr);
  j["weights"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    j["weights"].push_back({{"dataset", spec.entries[i].dataset}, {"size", spec.entries[i].size}, {"weight", weights[i]}});
  }
  io.out << j.dump(2) << "\n";

  if (a.length > 0) {
    std::string manifest;
    MixStream stream(spec, cfg.seed);
    for (std::size_t i = 0; i < a.length; ++i) {
      StreamItem item = stream.next();
      nlohmann::ordered_json line;
      line["dataset"] = spec.entries[item.dataset].dataset;
      line["index"] = item.example;
      manifest += line.dump() + "\n";
    }
    if (a.out) {
      write_text(*a.out, manifest);
    } else {
      io.out << manifest;
    }
  }
  return kExitOk;
}

// --- parse ------------------------------------------------------------------

struct ParseArgs {
  std::optional<std::string> text;
  std::string mode = "lenient";
  std::string kind = "short";
  std::string delimiter{kDefaultCellDelimiter};
};

ParseMode mode_from(const std::string& m) {
  if (m == "strict") return ParseMode::kStrict;
  if (m == "lenient") return ParseMode::kLenient;
  throw Error(ErrorCode::kInvalidArgument, "mode must be strict or lenient");
}

int cmd_parse(const ParseArgs& a, Streams io) {
  std::string text;
  if (a.text) {
    text = *a.text;
  } else {
    std::stringstream buf;
    buf << io.in.rdbuf();
    text = buf.str();
  }
  auto kind = answer_kind_from_name(a.kind);
  if (!kind) throw Error(ErrorCode::kInvalidArgument, "unknown answer kind '" + a.kind + "'");
  ParseOptions opts{mode_from(a.mode), a.delimiter, *kind, default_binary_labels()};
  StructuredOutput o = parse_output(text, opts);
  nlohmann::ordered_json j;
  j["cells"] = o.cells ? nlohmann::ordered_json(*o.cells) : nlohmann::ordered_json(nullptr);
  j["answer"] = o.answer ? nlohmann::ordered_json(*o.answer) : nlohmann::ordered_json(nullptr);
  j["kind"] = answer_kind_name(o.kind);
  j["well_formed"] = is_well_formed(text, opts);
  io.out << j.dump() << "\n";
  return kExitOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string gold;
  std::string metric = "em";
  std::string mode = "lenient";
  std::string smoothing = "epsilon";
  std::string delimiter{kDefaultCellDelimiter};
  std::optional<std::string> out;
};

int cmd_evaluate(const EvalArgs& a, Streams io) {
  auto preds = read_lines(a.pred);
  auto golds = read_records(a.gold);
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(preds.size()) + " prediction lines vs " +
                                                std::to_string(golds.size()) + " gold records");
  }
  ParseMode mode = mode_from(a.mode);

  EvalReport report;
  report.metric = a.metric;
  report.n_examples = preds.size();
  std::vector<std::string> pred_answers, gold_answers;
  std::vector<AnswerKind> kinds;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    AnswerKind kind = kind_of_record(golds[i]);
    ParseOptions strict{ParseMode::kStrict, a.delimiter, kind, default_binary_labels()};
    gold_answers.push_back(answer_text(parse_output(golds[i].target, strict)));
    kinds.push_back(kind);

    bool well_formed = is_well_formed(preds[i], strict);
    if (!well_formed) ++report.malformed;
    if (mode == ParseMode::kStrict && !well_formed) {
      pred_answers.emplace_back();
    } else {
      pred_answers.push_back(answer_text(parse_output(preds[i], {ParseMode::kLenient, a.delimiter, kind})));
    }
  }

  if (a.metric == "em") {
    double sum = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      double s = (mode == ParseMode::kStrict && !is_well_formed(preds[i], {ParseMode::kStrict, a.delimiter, kinds[i]}))
                     ? 0.0
                     : exact_match(pred_answers[i], {gold_answers[i]});
      report.per_example.push_back(s);
      sum += s;
    }
    report.score = preds.empty() ? 0.0 : sum / static_cast<double>(preds.size());
  } else if (a.metric == "bleu") {
    BleuOptions opts;
    if (a.smoothing == "none") {
      opts.smoothing = BleuSmoothing::kNone;
    } else if (a.smoothing != "epsilon") {
      throw Error(ErrorCode::kInvalidArgument, "smoothing must be none or epsilon");
    }
    std::vector<std::vector<std::string>> refs;
    for (const auto& g : gold_answers) refs.push_back({g});
    report.score = corpus_bleu(pred_answers, refs, opts);
    for (std::size_t i = 0; i < preds.size(); ++i) report.per_example.push_back(corpus_bleu({pred_answers[i]}, {refs[i]}, opts));
  } else if (a.metric == "acc") {
    bool binary = std::all_of(kinds.begin(), kinds.end(), [](AnswerKind k) { return k == AnswerKind::kBinary; });
    std::optional<BinaryLabels> labels;
    if (binary && !kinds.empty()) labels = default_binary_labels();
    report.score = accuracy(pred_answers, gold_answers, labels);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      report.per_example.push_back(accuracy({pred_answers[i]}, {gold_answers[i]}, labels));
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "metric must be em, bleu or acc");
  }

  std::string json = report_to_json(report).dump(2) + "\n";
  if (a.out) {
    write_text(*a.out, json);
  } else {
    io.out << json;
  }
  io.err << std::left << std::setw(12) << "metric" << std::setw(12) << "score" << std::setw(12) << "examples"
         << "malformed\n"
         << std::setw(12) << report.metric << std::setw(12) << std::fixed << std::setprecision(4) << report.score
         << std::setw(12) << report.n_examples << report.malformed << "\n";
  return kExitOk;
}

// --- audit ------------------------------------------------------------------

struct AuditArgs {
  std::string pred;
  std::string gold;
  std::size_t cell_limit = kDefaultCellLimit;
  std::string delimiter{kDefaultCellDelimiter};
  std::optional<std::string> out;
};

int cmd_audit(const AuditArgs& a, Streams io) {
  auto preds = read_lines(a.pred);
  auto golds = read_records(a.gold);
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(preds.size()) + " prediction lines vs " +
                                                std::to_string(golds.size()) + " gold records");
  }
  std::size_t valid = 0, invalid = 0, no_cells = 0, no_table = 0;
  nlohmann::json per_example = nlohmann::json::array();
  for (std::size_t i = 0; i < preds.size(); ++i) {
    StructuredOutput o = parse_output(preds[i], {ParseMode::kLenient, a.delimiter, kind_of_record(golds[i])});
    auto segment = table_segment(golds[i].input);
    if (!o.cells) {
      ++no_cells;
      per_example.push_back(nullptr);
      continue;
    }
    if (!segment) {
      ++no_table;
      per_example.push_back(nullptr);
      continue;
    }
    CellAudit audit = audit_cells(o, parse_linearized(*segment), a.cell_limit);
    valid += audit.valid_cells.size();
    invalid += audit.invalid_cells.size();
    per_example.push_back({{"validity_rate", audit.validity_rate}, {"invalid_cells", audit.invalid_cells}});
  }
  nlohmann::ordered_json j;
  j["n_examples"] = preds.size();
  j["audited"] = preds.size() - no_cells - no_table;
  j["no_cells"] = no_cells;
  j["no_table"] = no_table;
  j["valid_cells"] = valid;
  j["invalid_cells"] = invalid;
  j["validity_rate"] = valid + invalid == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(valid + invalid);
  j["per_example"] = per_example;
  std::string json = j.dump(2) + "\n";
  if (a.out) {
    write_text(*a.out, json);
  } else {
    io.out << json;
  }
  return kExitOk;
}

// --- ablate -----------------------------------------------------------------

struct AblateArgs {
  std::string in;
  std::string facet;
  std::string out;
  bool drop_payload = false;
};

int cmd_ablate(const AblateArgs& a, Streams io) {
  auto facet = facet_from_name(a.facet);
  if (!facet) throw Error(ErrorCode::kInvalidArgument, "unknown facet '" + a.facet + "'");
  auto records = read_records(a.in);
  std::size_t absent = 0;
  std::string jsonl;
  for (auto& rec : records) {
    try {
      PrefixParse parsed = parse_prefix(rec.input);
      TaskConfig ablated = ablate(parsed.config, *facet);
      std::string payload = parsed.remainder;
      if (a.drop_payload) {
        if (*facet == Facet::kInputPassage || *facet == Facet::kInput) payload = remove_segment(payload, "passage");
        if (*facet == Facet::kInputTable || *facet == Facet::kInput) payload = remove_segment(payload, "table");
        if (*facet == Facet::kInput) payload = remove_segment(payload, "query");
      }
      std::string prefix = render_prefix(ablated);
      rec.input = prefix.empty() ? payload : payload.empty() ? prefix : prefix + " " + payload;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFacetAbsent) throw;
      ++absent;
      io.err << "warning: " << rec.example_id << ": " << e.what() << "\n";
    }
    jsonl += rec.to_jsonl_line() + "\n";
  }
  write_text(a.out, jsonl);
  io.err << records.size() << " records, " << absent << " without facet '" << a.facet << "' passed through\n";
  return kExitOk;
}

// --- fewshot ----------------------------------------------------------------

struct FewShotArgs {
  std::uint64_t size = 0;
  std::uint64_t n = 0;
  std::string seeds = "0,1,2,3,4";
  std::optional<std::string> out;
};

int cmd_fewshot(const FewShotArgs& a, Streams io) {
  nlohmann::ordered_json j;
  j["dataset_size"] = a.size;
  j["n"] = a.n;
  j["runs"] = nlohmann::ordered_json::array();
  std::set<std::uint64_t> seen;
  for (const auto& s : split_list(a.seeds)) {
    std::uint64_t seed = std::stoull(s);
    if (!seen.insert(seed).second) throw Error(ErrorCode::kInvalidArgument, "seed " + s + " repeated");
    j["runs"].push_back({{"seed", seed}, {"indices", sample_few_shot(a.size, a.n, seed)}});
  }
  std::string json = j.dump() + "\n";
  if (a.out) {
    write_text(*a.out, json);
  } else {
    io.out << json;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"Task-configuration preprocessing, mixing and evaluation for table-to-text models", "tabconf"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Ingest datasets from a manifest and write model-ready JSONL");
  b->add_option("--manifest", build.manifest, "Pipeline manifest (TOML subset)")->required();
  b->add_option("--out", build.out_dir, "Output directory");
  b->add_option("--budget", build.budget, "Input token budget");
  b->add_option("--cell-limit", build.cell_limit, "Per-cell token limit");
  b->add_option("--seed", build.seed, "Row-truncation seed");
  b->add_option("--threads", build.threads, "Worker threads");
  b->add_option("--cell-delimiter", build.cell_delimiter, "Delimiter between target cells");

  ComposeArgs compose;
  auto* c = app.add_subcommand("compose", "Print the prefix for a task configuration");
  c->add_option("--task", compose.task, "qa | summarization | fact_checking | cell_generation")->required();
  c->add_option("--inputs", compose.inputs, "Comma-separated: query,table,passage");
  c->add_option("--outputs", compose.outputs, "Comma-separated: cells,short_answer,long_answer,binary_answer")
      ->required();
  c->add_option("--dataset", compose.dataset, "Dataset name (omit for unseen tasks)");
  c->add_flag("--json", compose.json, "Print the configuration as JSON");

  MixArgs mix;
  auto* m = app.add_subcommand("mix", "Print temperature mixing weights and optionally a sampled stream");
  m->add_option("--manifest", mix.manifest, "Manifest with [[mix]] entries");
  m->add_option("--size", mix.sizes, "dataset=count (repeatable)");
  m->add_option("--temperature", mix.temperature, "Sampling temperature");
  m->add_option("--cap", mix.cap, "Size cap applied before tempering");
  m->add_option("--seed", mix.seed, "Stream seed");
  m->add_option("--length", mix.length, "Number of stream items to emit");
  m->add_option("--out", mix.out, "Write the stream manifest here instead of stdout");

  ParseArgs parse;
  auto* p = app.add_subcommand("parse", "Parse one decoder output");
  p->add_option("text", parse.text, "Decoder output (stdin when omitted)");
  p->add_option("--mode", parse.mode, "strict | lenient");
  p->add_option("--kind", parse.kind, "short | long | binary | none");
  p->add_option("--delimiter", parse.delimiter, "Cell delimiter");

  EvalArgs eval;
  auto* e = app.add_subcommand("evaluate", "Score predictions against gold model-ready records");
  e->add_option("--pred", eval.pred, "Predictions, one decoder string per line")->required();
  e->add_option("--gold", eval.gold, "Gold model-ready JSONL")->required();
  e->add_option("--metric", eval.metric, "em | bleu | acc");
  e->add_option("--mode", eval.mode, "lenient | strict");
  e->add_option("--smoothing", eval.smoothing, "BLEU smoothing: epsilon | none");
  e->add_option("--delimiter", eval.delimiter, "Cell delimiter");
  e->add_option("--out", eval.out, "Write the JSON report here instead of stdout");

  AuditArgs audit;
  auto* au = app.add_subcommand("audit", "Check that generated cells exist in the input table");
  au->add_option("--pred", audit.pred, "Predictions, one decoder string per line")->required();
  au->add_option("--gold", audit.gold, "Gold model-ready JSONL (tables are read from the inputs)")->required();
  au->add_option("--cell-limit", audit.cell_limit, "Per-cell token limit used at build time");
  au->add_option("--delimiter", audit.delimiter, "Cell delimiter");
  au->add_option("--out", audit.out, "Write the JSON report here instead of stdout");

  AblateArgs abl;
  auto* ab = app.add_subcommand("ablate", "Remove one configuration facet from every record's prefix");
  ab->add_option("--in", abl.in, "Model-ready JSONL")->required();
  ab->add_option("--facet", abl.facet,
                 "dataset | task_type | input | output | input_passage | input_table | output_cells")
      ->required();
  ab->add_option("--out", abl.out, "Output JSONL")->required();
  ab->add_flag("--drop-payload", abl.drop_payload, "Also drop payload segments of removed inputs");

  FewShotArgs few;
  auto* f = app.add_subcommand("fewshot", "Emit few-shot training indices for each seed");
  f->add_option("--size", few.size, "Training set size")->required();
  f->add_option("--n", few.n, "Examples per run")->required();
  f->add_option("--seeds", few.seeds, "Comma-separated seeds");
  f->add_option("--out", few.out, "Write the manifest here instead of stdout");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (*b) return cmd_build(build, io);
    if (*c) return cmd_compose(compose, io);
    if (*m) return cmd_mix(mix, io);
    if (*p) return cmd_parse(parse, io);
    if (*e) return cmd_evaluate(eval, io);
    if (*au) return cmd_audit(audit, io);
    if (*ab) return cmd_ablate(abl, io);
    if (*f) return cmd_fewshot(few, io);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.code() == ErrorCode::kMalformedOutput ? kExitPartial : kExitFatal;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace tabconf::cli
