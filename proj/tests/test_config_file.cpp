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

#include <functional>

#include "doctest.h"
#include "support.hpp"
#include "tabconf/config_file.hpp"
#include "tabconf/error.hpp"

using namespace tabconf;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("TOML subset values") {
  auto doc = parse_config_text(R"(# manifest
name = "run \"one\"\t"   # trailing comment
count = 1_000
neg = -3
ratio = 2.5
exp = 1e3
on = true
off = false
list = [1, "two", 3.0, ]
empty = []

[pipeline]
seed = 7
"quoted key" = "x"

[[dataset]]
id = "wikisql"
[[dataset]]
id = "totto"
)");
  CHECK(doc.at("name") == "run \"one\"\t");
  CHECK(doc.at("count") == 1000);
  CHECK(doc.at("neg") == -3);
  CHECK(doc.at("ratio") == 2.5);
  CHECK(doc.at("exp") == 1000.0);
  CHECK(doc.at("on") == true);
  CHECK(doc.at("off") == false);
  CHECK(doc.at("list") == nlohmann::json::parse(R"([1, "two", 3.0])"));
  CHECK(doc.at("empty").empty());
  CHECK(doc.at("pipeline").at("seed") == 7);
  CHECK(doc.at("pipeline").at("quoted key") == "x");
  REQUIRE(doc.at("dataset").size() == 2);
  CHECK(doc.at("dataset")[1].at("id") == "totto");
}

TEST_CASE("TOML subset errors") {
  for (const char* bad : {"a = ", "a = \"open", "a = 1 2", "a = 1\na = 2", "= 3", "a = bare", "a = \"\\q\"",
                          "[pipeline", "[[dataset]\nid = 1", "x = 1\n[[x]]", "[[d]]\n[d]", "a = [1, 2",
                          "a = 1.2.3", "a = {b = 1}"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_config_text(bad); }) == ErrorCode::kConfigSyntax);
  }
  try {
    parse_config_text("ok = 1\n\nbad = ?");
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { load_config_file("/nonexistent/manifest.toml"); }) == ErrorCode::kIo);
}

TEST_CASE("pipeline settings") {
  PipelineConfig defaults = pipeline_from_json(nlohmann::json::object(), "/base");
  CHECK(defaults.budget == 1024);
  CHECK(defaults.cell_limit == 15);
  CHECK(defaults.temperature == 2.0);
  CHECK_FALSE(defaults.cap);
  CHECK(defaults.threads == 1);
  CHECK(defaults.cell_delimiter == " | ");

  auto doc = parse_config_text(R"(
budget = 512
[pipeline]
cell_limit = 10
temperature = 3.0
cap = 5000
threads = 4
cell_delimiter = " ; "
[[dataset]]
id = "wikitq"
path = "data/wtq.jsonl"
[[dataset]]
id = "wikitq"
path = "/abs/big.jsonl"
name = "wikitq_big"
[[mix]]
dataset = "wikitq"
size = 11321
)");
  PipelineConfig cfg = pipeline_from_json(doc, "/base");
  CHECK(cfg.budget == 512);
  CHECK(cfg.cell_limit == 10);
  CHECK(cfg.temperature == 3.0);
  CHECK(cfg.cap == 5000u);
  CHECK(cfg.threads == 4);
  CHECK(cfg.cell_delimiter == " ; ");
  REQUIRE(cfg.datasets.size() == 2);
  CHECK(cfg.datasets[0].path == std::filesystem::path("/base/data/wtq.jsonl"));
  CHECK(cfg.datasets[0].name == "wikitq");
  CHECK(cfg.datasets[1].path == std::filesystem::path("/abs/big.jsonl"));
  CHECK(cfg.datasets[1].name == "wikitq_big");
  REQUIRE(cfg.mix.size() == 1);
  CHECK(cfg.mix[0].dataset == "wikitq");
  CHECK(cfg.mix[0].size == 11321);
}

TEST_CASE("pipeline type errors") {
  for (const char* bad : {"budget = -1", "budget = \"big\"", "temperature = \"hot\"", "[[dataset]]\nid = \"x\"",
                          "[[mix]]\nsize = 3", "[[mix]]\ndataset = \"a\"\nsize = -3"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { pipeline_from_json(parse_config_text(bad), "."); }) == ErrorCode::kConfigSyntax);
  }
}

TEST_CASE("fixture manifest") {
  PipelineConfig cfg = pipeline_from_json(load_config_file(testsupport::fixture("manifest.toml")),
                                          testsupport::fixture(""));
  CHECK(cfg.budget == 1024);
  CHECK(cfg.cell_limit == 15);
  CHECK(cfg.seed == 7);
  CHECK(cfg.threads == 3);
  CHECK(cfg.datasets.size() == 13);
  for (const auto& d : cfg.datasets) CHECK(std::filesystem::exists(d.path));
  CHECK(cfg.datasets.back().name == "oversized");
}
