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

#include "tabconf/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "tabconf/error.hpp"

namespace tabconf {

void validate_mix_spec(const MixSpec& spec) {
  if (spec.entries.empty()) throw Error(ErrorCode::kInvalidMixSpec, "no datasets");
  std::set<std::string_view> names;
  for (const auto& e : spec.entries) {
    if (e.dataset.empty()) throw Error(ErrorCode::kInvalidMixSpec, "empty dataset id");
    if (!names.insert(e.dataset).second) {
      throw Error(ErrorCode::kInvalidMixSpec, "dataset '" + e.dataset + "' listed twice");
    }
    if (e.size == 0) throw Error(ErrorCode::kInvalidMixSpec, "dataset '" + e.dataset + "' has size 0");
  }
  if (!(spec.temperature > 0) || !std::isfinite(spec.temperature)) {
    throw Error(ErrorCode::kInvalidMixSpec, "temperature must be positive");
  }
  if (spec.cap && *spec.cap == 0) throw Error(ErrorCode::kInvalidMixSpec, "cap must be positive");
}

std::vector<double> mixing_weights(const MixSpec& spec) {
  validate_mix_spec(spec);
  std::vector<double> w;
  w.reserve(spec.entries.size());
  for (const auto& e : spec.entries) {
    std::uint64_t m = spec.cap ? std::min(e.size, *spec.cap) : e.size;
    w.push_back(std::pow(static_cast<double>(m), 1.0 / spec.temperature));
  }
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

MixStream::MixStream(const MixSpec& spec, std::uint64_t seed)
    : weights_(mixing_weights(spec)), rng_(derive_seed(seed, "mix/datasets")) {
  double acc = 0;
  for (double w : weights_) cumulative_.push_back(acc += w);
  cumulative_.back() = 1.0;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    Cursor c{std::vector<std::uint64_t>(spec.entries[i].size), 0,
             Rng(derive_seed(seed, "mix/examples/" + std::to_string(i)))};
    std::iota(c.order.begin(), c.order.end(), 0);
    c.rng.shuffle(std::span<std::uint64_t>(c.order));
    cursors_.push_back(std::move(c));
  }
}

StreamItem MixStream::next() {
  double u = rng_.uniform();
  std::size_t d = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                           cumulative_.begin());
  d = std::min(d, cursors_.size() - 1);
  Cursor& c = cursors_[d];
  if (c.pos == c.order.size()) {
    c.rng.shuffle(std::span<std::uint64_t>(c.order));
    c.pos = 0;
  }
  return StreamItem{d, c.order[c.pos++]};
}

std::vector<StreamItem> sample_stream(const MixSpec& spec, std::uint64_t seed, std::size_t length) {
  MixStream stream(spec, seed);
  std::vector<StreamItem> items;
  items.reserve(length);
  for (std::size_t i = 0; i < length; ++i) items.push_back(stream.next());
  return items;
}

std::vector<std::uint64_t> sample_few_shot(std::uint64_t dataset_size, std::uint64_t n, std::uint64_t seed) {
  if (n > dataset_size) {
    throw Error(ErrorCode::kNTooLarge,
                "n = " + std::to_string(n) + " exceeds dataset size " + std::to_string(dataset_size));
  }
  // Sparse partial Fisher-Yates: only touched positions are stored.
  Rng rng(derive_seed(seed, "fewshot"));
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> picked;
  picked.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t j = i + rng.below(dataset_size - i);
    std::uint64_t vi = at(i), vj = at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    picked.push_back(vj);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace tabconf
