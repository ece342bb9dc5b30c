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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tabconf/rng.hpp"

namespace tabconf {

inline constexpr double kDefaultTemperature = 2.0;
inline constexpr std::uint64_t kFewShotSeeds[] = {0, 1, 2, 3, 4};

struct MixEntry {
  std::string dataset;
  std::uint64_t size = 0;
};

struct MixSpec {
  std::vector<MixEntry> entries;
  double temperature = kDefaultTemperature;
  std::optional<std::uint64_t> cap;
};

// Throws kInvalidMixSpec on an empty spec, zero sizes, T <= 0 or a zero cap.
void validate_mix_spec(const MixSpec& spec);

// w_i = m_i^(1/T) / sum_j m_j^(1/T), m_i = min(n_i, cap).
std::vector<double> mixing_weights(const MixSpec& spec);

struct StreamItem {
  std::size_t dataset = 0;  // index into spec.entries
  std::uint64_t example = 0;

  friend bool operator==(const StreamItem&, const StreamItem&) = default;
};

// Infinite interleaved stream. Each draw picks a dataset i.i.d. from the
// mixing weights; within a dataset, indices follow a random permutation that
// is reshuffled every time it is exhausted.
class MixStream {
 public:
  MixStream(const MixSpec& spec, std::uint64_t seed);

  StreamItem next();
  const std::vector<double>& weights() const { return weights_; }

 private:
  struct Cursor {
    std::vector<std::uint64_t> order;
    std::size_t pos = 0;
    Rng rng;
  };

  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<Cursor> cursors_;
  Rng rng_;
};

std::vector<StreamItem> sample_stream(const MixSpec& spec, std::uint64_t seed, std::size_t length);

// n distinct indices from [0, dataset_size), ascending. Throws kNTooLarge
// when n > dataset_size.
std::vector<std::uint64_t> sample_few_shot(std::uint64_t dataset_size, std::uint64_t n, std::uint64_t seed);

}  // namespace tabconf
