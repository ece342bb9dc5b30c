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

#include "tabconf/metrics.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tabconf/error.hpp"
#include "tabconf/text.hpp"

namespace tabconf {
namespace {

icu::UnicodeString nfkc_lower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (U_SUCCESS(status)) {
    icu::UnicodeString normalized = nfkc->normalize(s, status);
    if (U_SUCCESS(status)) s = normalized;
  }
  s.toLower(icu::Locale::getRoot());
  return s;
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) tokens.push_back(std::move(tok));
  return tokens;
}

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[gram];
  }
  return counts;
}

std::string fold(std::string_view s) { return to_utf8(nfkc_lower(trim(s))); }

}  // namespace

std::string normalize_answer(std::string_view text) {
  icu::UnicodeString s = nfkc_lower(text);
  std::string out;
  int32_t i = 0;
  const int32_t n = s.length();
  while (i < n) {
    while (i < n && u_isUWhiteSpace(s.char32At(i))) i = s.moveIndex32(i, 1);
    int32_t start = i;
    while (i < n && !u_isUWhiteSpace(s.char32At(i))) i = s.moveIndex32(i, 1);
    int32_t end = i;
    while (start < end && u_ispunct(s.char32At(start))) start = s.moveIndex32(start, 1);
    while (end > start) {
      int32_t prev = s.moveIndex32(end, -1);
      if (!u_ispunct(s.char32At(prev))) break;
      end = prev;
    }
    if (start < end) {
      if (!out.empty()) out += ' ';
      out += to_utf8(s.tempSubStringBetween(start, end));
    }
  }
  return out;
}

std::string canonical_answer(std::string_view text) {
  if (text.find('|') == std::string_view::npos) return normalize_answer(text);
  std::vector<std::string> parts;
  for (const auto& piece : split(text, "|")) {
    std::string norm = normalize_answer(piece);
    if (!norm.empty()) parts.push_back(std::move(norm));
  }
  std::sort(parts.begin(), parts.end());
  return join(parts, " | ");
}

int exact_match(std::string_view prediction, const std::vector<std::string>& golds) {
  if (golds.empty()) throw Error(ErrorCode::kInvalidArgument, "exact_match needs at least one gold answer");
  std::string pred = canonical_answer(prediction);
  for (const auto& g : golds) {
    if (canonical_answer(g) == pred) return 1;
  }
  return 0;
}

BleuStats corpus_bleu_stats(const std::vector<std::string>& predictions,
                            const std::vector<std::vector<std::string>>& references, const BleuOptions& options) {
  if (predictions.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                                std::to_string(references.size()) + " references");
  }
  const int max_order = options.max_order;
  BleuStats st;
  st.matches.assign(max_order, 0);
  st.totals.assign(max_order, 0);

  for (std::size_t k = 0; k < predictions.size(); ++k) {
    if (references[k].empty()) throw Error(ErrorCode::kInvalidArgument, "example " + std::to_string(k) + " has no reference");
    auto hyp = whitespace_tokens(predictions[k]);
    std::vector<std::vector<std::string>> refs;
    for (const auto& r : references[k]) refs.push_back(whitespace_tokens(r));

    st.hyp_length += hyp.size();
    // Closest reference length, shorter one on ties.
    std::size_t best = refs.front().size();
    for (const auto& r : refs) {
      auto diff = [&](std::size_t len) { return len > hyp.size() ? len - hyp.size() : hyp.size() - len; };
      if (diff(r.size()) < diff(best) || (diff(r.size()) == diff(best) && r.size() < best)) best = r.size();
    }
    st.ref_length += best;

    for (int n = 1; n <= max_order; ++n) {
      NgramCounts hyp_counts = count_ngrams(hyp, n);
      NgramCounts max_ref;
      for (const auto& r : refs) {
        for (const auto& [gram, c] : count_ngrams(r, n)) max_ref[gram] = std::max(max_ref[gram], c);
      }
      for (const auto& [gram, c] : hyp_counts) {
        st.totals[n - 1] += c;
        auto it = max_ref.find(gram);
        if (it != max_ref.end()) st.matches[n - 1] += std::min(c, it->second);
      }
    }
  }

  st.precisions.assign(max_order, 0.0);
  bool any_match = std::any_of(st.matches.begin(), st.matches.end(), [](std::size_t m) { return m > 0; });
  if (st.hyp_length == 0 || !any_match) return st;

  double log_sum = 0;
  int orders = 0;
  for (int n = 0; n < max_order; ++n) {
    if (st.totals[n] == 0) {
      if (options.smoothing == BleuSmoothing::kNone) return st;
      continue;
    }
    double matched = static_cast<double>(st.matches[n]);
    if (matched == 0) {
      if (options.smoothing == BleuSmoothing::kNone) return st;
      matched = options.epsilon;
    }
    st.precisions[n] = matched / static_cast<double>(st.totals[n]);
    log_sum += std::log(st.precisions[n]);
    ++orders;
  }
  st.brevity_penalty = st.hyp_length < st.ref_length
                           ? std::exp(1.0 - static_cast<double>(st.ref_length) / static_cast<double>(st.hyp_length))
                           : 1.0;
  st.score = 100.0 * st.brevity_penalty * std::exp(log_sum / orders);
  return st;
}

double corpus_bleu(const std::vector<std::string>& predictions,
                   const std::vector<std::vector<std::string>>& references, const BleuOptions& options) {
  return corpus_bleu_stats(predictions, references, options).score;
}

double accuracy(const std::vector<std::string>& predictions, const std::vector<std::string>& golds,
                const std::optional<BinaryLabels>& labels) {
  if (predictions.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(predictions.size()) + " predictions vs " + std::to_string(golds.size()) + " golds");
  }
  if (predictions.empty()) return 0.0;
  std::vector<std::string> label_set;
  if (labels) {
    for (const auto& l : *labels) label_set.push_back(normalize_answer(l));
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    std::string p = normalize_answer(predictions[i]);
    if (labels && std::find(label_set.begin(), label_set.end(), p) == label_set.end()) continue;
    if (p == normalize_answer(golds[i])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

CellAudit audit_cells(const StructuredOutput& parsed, const Table& table, std::size_t cell_limit,
                      const TokenCounter& counter) {
  if (!parsed.cells || parsed.cells->empty()) throw Error(ErrorCode::kNoCells, "output has no cells to audit");
  auto key = [&](std::string_view s) { return fold(clip_cell(sanitize_cell(s), cell_limit, counter)); };
  std::vector<std::string> known;
  for (const auto& row : table.rows) {
    for (const auto& c : row) known.push_back(key(c));
  }
  std::sort(known.begin(), known.end());

  CellAudit audit;
  for (const auto& cell : *parsed.cells) {
    if (std::binary_search(known.begin(), known.end(), key(cell))) {
      audit.valid_cells.push_back(cell);
    } else {
      audit.invalid_cells.push_back(cell);
    }
  }
  audit.validity_rate = static_cast<double>(audit.valid_cells.size()) / static_cast<double>(parsed.cells->size());
  return audit;
}

nlohmann::json report_to_json(const EvalReport& r) {
  return {{"metric", r.metric},
          {"score", r.score},
          {"n_examples", r.n_examples},
          {"malformed", r.malformed},
          {"per_example", r.per_example}};
}

}  // namespace tabconf
