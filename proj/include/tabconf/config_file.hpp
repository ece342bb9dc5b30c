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

// Reader for the small TOML subset used by pipeline manifests:
//
//   # comment
//   budget = 1024                 # top-level keys
//   [pipeline]                    # table
//   seed = 7
//   [[dataset]]                   # array of tables
//   id = "wikisql"
//   path = "wikisql.jsonl"
//
// Values are basic strings, integers, floats, booleans and flat arrays of
// those. Anything else is rejected with kConfigSyntax.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabconf/mixing.hpp"

namespace tabconf {

nlohmann::json parse_config_text(std::string_view text);
nlohmann::json load_config_file(const std::filesystem::path& path);

struct DatasetSource {
  std::string id;  // adapter id
  std::filesystem::path path;
  std::string name;  // output name; defaults to id
};

// Settings for a pipeline run. Defaults: 1024-token inputs, 15-token cells,
// temperature 2.
struct PipelineConfig {
  std::vector<DatasetSource> datasets;
  std::size_t budget = 1024;
  std::size_t cell_limit = 15;
  double temperature = kDefaultTemperature;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 0;
  std::string cell_delimiter = " | ";
  unsigned threads = 1;
  std::vector<MixEntry> mix;
};

// Reads [pipeline] keys (also accepted at top level), [[dataset]] and [[mix]]
// entries. Dataset paths are resolved against `base_dir`.
PipelineConfig pipeline_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

}  // namespace tabconf
