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
#include "tabconf/error.hpp"
#include "tabconf/metrics.hpp"

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

const BleuOptions kUnsmoothed{BleuSmoothing::kNone};

}  // namespace

TEST_CASE("answer normalization table") {
  const std::pair<const char*, const char*> cases[] = {
      {"  The  Answer. ", "the answer"},
      {"42", "42"},
      {"Entailed", "entailed"},
      {"\xEF\xBC\xA1\xEF\xBC\xA2\xEF\xBC\xA3", "abc"},                    // fullwidth ABC
      {"\xE2\x80\x9CQuoted\xE2\x80\x9D", "quoted"},                       // curly quotes
      {"U.S.A.", "u.s.a"},
      {"don't", "don't"},
      {"(1,234)", "1,234"},
      {"\xC3\x89" "COLE", "\xC3\xA9" "cole"},                             // ÉCOLE
      {"a\t\n b", "a b"},
      {"\xEF\xAC\x81ne", "fine"},                                         // fi ligature
      {"... !", ""},
      {"$5", "$5"},
      {"\xC2\xA0padded\xE3\x80\x80", "padded"},                           // no-break and ideographic spaces
      {"Paris, France", "paris france"},
  };
  for (const auto& [in, want] : cases) {
    CAPTURE(in);
    CHECK(normalize_answer(in) == want);
  }
}

TEST_CASE("exact match") {
  CHECK(exact_match("The Answer", {"the answer."}) == 1);
  CHECK(exact_match("a", {"b", "c"}) == 0);
  CHECK(exact_match("c", {"b", "C!"}) == 1);
  CHECK(code_of([] { exact_match("a", {}); }) == ErrorCode::kInvalidArgument);
  // Multi-value answers compare as multisets.
  CHECK(exact_match("Oslo | Lima", {"lima | oslo"}) == 1);
  CHECK(exact_match("Oslo", {"lima | oslo"}) == 0);

  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    std::string a = testsupport::random_text(rng);
    std::string b = testsupport::random_text(rng);
    int ab = exact_match(a, {b});
    CHECK(ab == exact_match(b, {a}));
    CHECK((ab == 0 || ab == 1));
    CHECK(exact_match(a, {a}) == 1);
  }
}

TEST_CASE("corpus BLEU of a corpus against itself is 100") {
  std::vector<std::string> corpus = {"the cat sat on the mat", "a b", "x"};
  std::vector<std::vector<std::string>> refs;
  for (const auto& s : corpus) refs.push_back({s});
  CHECK(corpus_bleu(corpus, refs) == 100.0);
  CHECK(corpus_bleu(corpus, refs, kUnsmoothed) == 100.0);
}

TEST_CASE("worked 3-gram example against a hand count") {
  const std::string hyp = "the cat sat", ref = "the cat sat down";
  double log_p = 0;
  std::size_t orders = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto [m, t] = testsupport::clipped_ngrams(hyp, ref, n);
    if (t == 0) continue;  // no 3+1-grams in a 3-word hypothesis
    log_p += std::log(static_cast<double>(m) / static_cast<double>(t));
    ++orders;
  }
  CHECK(orders == 3);
  double bp = std::exp(1.0 - 4.0 / 3.0);
  double expected = 100.0 * bp * std::exp(log_p / static_cast<double>(orders));

  BleuStats s = corpus_bleu_stats({hyp}, {{ref}});
  CHECK(s.matches == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(s.totals == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(s.hyp_length == 3);
  CHECK(s.ref_length == 4);
  CHECK(std::abs(s.brevity_penalty - bp) < 1e-9);
  CHECK(std::abs(s.score - expected) < 1e-9);
  CHECK(std::abs(s.score - 71.65313105737893) < 1e-9);

  // Without smoothing the missing 4-gram order zeroes the score.
  CHECK(corpus_bleu({hyp}, {{ref}}, kUnsmoothed) == 0.0);
}

TEST_CASE("BLEU pools counts over the corpus") {
  std::vector<std::string> hyps = {"a b c d e", "x y z w"};
  std::vector<std::vector<std::string>> refs = {{"a b c d f"}, {"x y q w", "x y z"}};
  BleuStats s = corpus_bleu_stats(hyps, refs);
  double log_p = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t m = 0, t = 0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      // Clip against the best reference per n-gram: take the maximum count over references.
      auto h = testsupport::words_of(hyps[i]);
      std::map<std::vector<std::string>, std::size_t> hc, best;
      for (std::size_t k = 0; k + n <= h.size(); ++k) ++hc[{h.begin() + k, h.begin() + k + n}];
      for (const auto& r : refs[i]) {
        auto rw = testsupport::words_of(r);
        std::map<std::vector<std::string>, std::size_t> rc;
        for (std::size_t k = 0; k + n <= rw.size(); ++k) ++rc[{rw.begin() + k, rw.begin() + k + n}];
        for (const auto& [g, c] : rc) best[g] = std::max(best[g], c);
      }
      for (const auto& [g, c] : hc) {
        t += c;
        m += std::min(c, best[g]);
      }
    }
    CHECK(s.matches[n - 1] == m);
    CHECK(s.totals[n - 1] == t);
    log_p += std::log(m == 0 ? 0.1 / static_cast<double>(t) : static_cast<double>(m) / static_cast<double>(t));
  }
  // Closest reference lengths: 5 and 4 (tie 4 vs 3 goes to the exact 4).
  CHECK(s.ref_length == 9);
  CHECK(s.hyp_length == 9);
  CHECK(std::abs(s.score - 100.0 * std::exp(log_p / 4.0)) < 1e-9);
}

TEST_CASE("BLEU edge cases") {
  CHECK(corpus_bleu({"p q r s"}, {{"a b c d"}}, kUnsmoothed) == 0.0);
  CHECK(corpus_bleu({"p q r s"}, {{"a b c d"}}) == 0.0);
  CHECK(corpus_bleu({""}, {{"a"}}) == 0.0);
  CHECK(code_of([] { corpus_bleu({"a"}, {}); }) == ErrorCode::kLengthMismatch);
  CHECK(code_of([] { corpus_bleu({"a"}, {{}}); }) == ErrorCode::kInvalidArgument);
  // Longer hypotheses get no brevity penalty.
  CHECK(corpus_bleu_stats({"a b c d e f"}, {{"a b c d e"}}).brevity_penalty == 1.0);
}

TEST_CASE("BLEU is invariant to example order") {
  Rng rng(17);
  std::vector<std::string> hyps;
  std::vector<std::vector<std::string>> refs;
  for (int i = 0; i < 30; ++i) {
    hyps.push_back(testsupport::random_text(rng) + " " + testsupport::random_text(rng));
    refs.push_back({testsupport::random_text(rng) + " " + testsupport::random_text(rng)});
  }
  double base = corpus_bleu(hyps, refs);
  std::vector<std::size_t> order(hyps.size());
  std::iota(order.begin(), order.end(), 0);
  for (int k = 0; k < 5; ++k) {
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<std::string> h;
    std::vector<std::vector<std::string>> r;
    for (auto i : order) {
      h.push_back(hyps[i]);
      r.push_back(refs[i]);
    }
    CHECK(corpus_bleu(h, r) == doctest::Approx(base).epsilon(1e-12));
  }
  CHECK(base >= 0.0);
  CHECK(base <= 100.0);
}

TEST_CASE("accuracy") {
  CHECK(accuracy({"a", "b"}, {"A", "b."}) == 1.0);
  CHECK(accuracy({"a", "b"}, {"c", "d"}) == 0.0);
  CHECK(accuracy({"a", "b", "c", "d"}, {"a", "x", "c", "y"}) == 0.5);
  CHECK(code_of([] { accuracy({"a"}, {"a", "b"}); }) == ErrorCode::kLengthMismatch);
  BinaryLabels labels = default_binary_labels();
  CHECK(accuracy({"Entailed", "refuted"}, {"entailed", "entailed"}, labels) == 0.5);
  // Outside the label set never counts, even when equal.
  CHECK(accuracy({"maybe"}, {"maybe"}, labels) == 0.0);
  CHECK(accuracy({}, {}) == 0.0);
}

TEST_CASE("cell audit") {
  Table t{{"Award", "Result"}, {{"Best Vocals", "Won"}, {"MTV | Europe", "Nominated"}}};
  StructuredOutput all{std::vector<std::string>{"best vocals", "Won"}, std::nullopt, AnswerKind::kNone};
  CHECK(audit_cells(all, t).validity_rate == 1.0);

  StructuredOutput half{std::vector<std::string>{"Won", "Grammy"}, "x", AnswerKind::kShort};
  CellAudit a = audit_cells(half, t);
  CHECK(a.validity_rate == 0.5);
  CHECK(a.valid_cells == std::vector<std::string>{"Won"});
  CHECK(a.invalid_cells == std::vector<std::string>{"Grammy"});

  // Sanitized text of a reserved character still matches.
  StructuredOutput san{std::vector<std::string>{"MTV \xC2\xA6 Europe"}, std::nullopt, AnswerKind::kNone};
  CHECK(audit_cells(san, t).validity_rate == 1.0);

  std::string long_cell;
  for (int i = 0; i < 30; ++i) long_cell += "w" + std::to_string(i) + " ";
  Table lt{{"Notes"}, {{long_cell}}};
  StructuredOutput clipped{std::vector<std::string>{clip_cell(long_cell, 15, default_counter())}, std::nullopt,
                           AnswerKind::kNone};
  CHECK(audit_cells(clipped, lt).validity_rate == 1.0);

  StructuredOutput none{std::nullopt, "x", AnswerKind::kShort};
  CHECK(code_of([&] { audit_cells(none, t); }) == ErrorCode::kNoCells);
  StructuredOutput empty{std::vector<std::string>{}, std::nullopt, AnswerKind::kNone};
  CHECK(code_of([&] { audit_cells(empty, t); }) == ErrorCode::kNoCells);
}

TEST_CASE("report JSON") {
  EvalReport r{"em", 0.5, 2, 1, {1.0, 0.0}};
  auto j = report_to_json(r);
  CHECK(j.at("metric") == "em");
  CHECK(j.at("score") == 0.5);
  CHECK(j.at("n_examples") == 2);
  CHECK(j.at("malformed") == 1);
  CHECK(j.at("per_example").size() == 2);
}
