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

#include "tabconf/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tabconf/error.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kConfigSyntax, "line " + std::to_string(line_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  std::string key() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '"') return basic_string();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  nlohmann::json value() {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    char c = s_[pos_];
    if (c == '"') return basic_string();
    if (c == '[') return array();
    if (s_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      return false;
    }
    return number();
  }

 private:
  std::string basic_string() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= s_.size()) fail("dangling escape");
      char e = s_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  nlohmann::json array() {
    ++pos_;
    nlohmann::json arr = nlohmann::json::array();
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return arr;
    }
    while (true) {
      arr.push_back(value());
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        continue;
      }
      expect(']');
      return arr;
    }
  }

  nlohmann::json number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::string_view("+-0123456789._eE").find(s_[pos_]) != std::string_view::npos) ++pos_;
    std::string tok;
    for (char c : s_.substr(start, pos_ - start)) {
      if (c != '_') tok += c;
    }
    if (tok.empty()) fail("unrecognized value");
    std::string_view v = tok;
    if (v.starts_with('+')) v.remove_prefix(1);
    if (v.find_first_of(".eE") == std::string_view::npos) {
      std::int64_t i = 0;
      auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), i);
      if (ec != std::errc() || end != v.data() + v.size()) fail("bad integer '" + tok + "'");
      return i;
    }
    double d = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc() || end != v.data() + v.size()) fail("bad number '" + tok + "'");
    return d;
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kConfigSyntax, std::string("key '") + key + "' has the wrong type");
  }
}

std::uint64_t get_unsigned(const nlohmann::json& j, const char* key) {
  auto v = get_as<std::int64_t>(j, key);
  if (v < 0) throw Error(ErrorCode::kConfigSyntax, std::string("key '") + key + "' must be non-negative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

nlohmann::json parse_config_text(std::string_view text) {
  nlohmann::json doc = nlohmann::json::object();
  nlohmann::json* current = &doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    LineParser p(raw, line_no);
    if (p.at_end_or_comment()) continue;
    std::string_view line = trim(raw);
    if (line.starts_with("[[")) {
      std::size_t close = line.find("]]");
      if (close == std::string_view::npos) p.fail("unterminated [[table]] header");
      std::string name(trim(line.substr(2, close - 2)));
      if (!doc.contains(name)) doc[name] = nlohmann::json::array();
      if (!doc[name].is_array()) p.fail("'" + name + "' is not an array of tables");
      doc[name].push_back(nlohmann::json::object());
      current = &doc[name].back();
      continue;
    }
    if (line.starts_with('[')) {
      std::size_t close = line.find(']');
      if (close == std::string_view::npos) p.fail("unterminated [table] header");
      std::string name(trim(line.substr(1, close - 1)));
      if (doc.contains(name) && !doc[name].is_object()) p.fail("'" + name + "' redefined");
      if (!doc.contains(name)) doc[name] = nlohmann::json::object();
      current = &doc[name];
      continue;
    }
    std::string key = p.key();
    p.expect('=');
    nlohmann::json value = p.value();
    if (!p.at_end_or_comment()) p.fail("trailing characters after value");
    if (current->contains(key)) p.fail("duplicate key '" + key + "'");
    (*current)[key] = std::move(value);
  }
  return doc;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

PipelineConfig pipeline_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  auto apply = [&](const nlohmann::json& section) {
    if (section.contains("budget")) cfg.budget = get_unsigned(section, "budget");
    if (section.contains("cell_limit")) cfg.cell_limit = get_unsigned(section, "cell_limit");
    if (section.contains("temperature")) cfg.temperature = get_as<double>(section, "temperature");
    if (section.contains("cap")) cfg.cap = get_unsigned(section, "cap");
    if (section.contains("seed")) cfg.seed = get_unsigned(section, "seed");
    if (section.contains("cell_delimiter")) cfg.cell_delimiter = get_as<std::string>(section, "cell_delimiter");
    if (section.contains("threads")) cfg.threads = static_cast<unsigned>(get_unsigned(section, "threads"));
  };
  apply(doc);
  if (doc.contains("pipeline")) apply(doc.at("pipeline"));

  if (doc.contains("dataset")) {
    for (const auto& d : doc.at("dataset")) {
      if (!d.contains("id") || !d.contains("path")) {
        throw Error(ErrorCode::kConfigSyntax, "[[dataset]] entries need 'id' and 'path'");
      }
      std::filesystem::path p = get_as<std::string>(d, "path");
      std::string id = get_as<std::string>(d, "id");
      std::string name = d.contains("name") ? get_as<std::string>(d, "name") : id;
      cfg.datasets.push_back({id, p.is_absolute() ? p : base_dir / p, name});
    }
  }
  if (doc.contains("mix")) {
    for (const auto& m : doc.at("mix")) {
      if (!m.contains("dataset") || !m.contains("size")) {
        throw Error(ErrorCode::kConfigSyntax, "[[mix]] entries need 'dataset' and 'size'");
      }
      cfg.mix.push_back({get_as<std::string>(m, "dataset"), get_unsigned(m, "size")});
    }
  }
  return cfg;
}

}  // namespace tabconf
