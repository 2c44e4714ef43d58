// Copyright 2026 The lexaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "../support/bleu_oracle.hpp"
#include "lexaug/error.hpp"
#include "lexaug/metrics.hpp"
#include "lexaug/random.hpp"

namespace lexaug {
namespace {

std::vector<Sentence> lines(std::initializer_list<const char*> text) {
  std::vector<Sentence> out;
  for (const char* t : text) out.push_back(tokenize(t));
  return out;
}

std::vector<std::vector<std::string>> raw(const std::vector<Sentence>& s) {
  std::vector<std::vector<std::string>> out;
  for (const auto& x : s) out.push_back(x.tokens);
  return out;
}

std::vector<Sentence> random_corpus(Rng& rng, std::size_t count, std::size_t vocab) {
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::string> toks;
    for (std::size_t j = 0, n = rng.below(13); j < n; ++j) toks.push_back("w" + std::to_string(rng.below(vocab)));
    out.emplace_back(std::move(toks));
  }
  return out;
}

TEST(Bleu, IdenticalCorporaScoreOne) {
  const auto c = lines({"the cat sat on the mat", "a b c d", "x y z w v"});
  const BleuReport r = bleu(c, c);
  EXPECT_EQ(r.bleu, 1.0);
  EXPECT_EQ(r.brevity_penalty, 1.0);
  EXPECT_EQ(r.score(), 100.0);
}

TEST(Bleu, WorkedFiveTokenExample) {
  const auto h = lines({"a b c d e"});
  const auto r = lines({"a b c d f"});
  const BleuReport b = bleu(h, r);
  EXPECT_DOUBLE_EQ(b.precisions[0], 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(b.precisions[1], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(b.precisions[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.precisions[3], 1.0 / 2.0);
  EXPECT_EQ(b.brevity_penalty, 1.0);
  EXPECT_NEAR(b.bleu, std::pow(4.0 / 5 * 3.0 / 4 * 2.0 / 3 * 1.0 / 2, 0.25), 1e-12);
  EXPECT_NEAR(b.bleu, 0.6687, 1e-4);
}

TEST(Bleu, ZeroFourGramsWithoutSmoothing) {
  const auto h = lines({"a b c x d"});
  const auto r = lines({"a b c y d"});
  EXPECT_EQ(bleu(h, r).bleu, 0.0);
  EXPECT_GT(bleu(h, r, Smoothing::add_one).bleu, 0.0);
}

TEST(Bleu, SmoothingLeavesUnigramsAlone) {
  const auto h = lines({"a b q"});
  const auto r = lines({"a b c d"});
  const BleuReport b = bleu(h, r, Smoothing::add_one);
  EXPECT_DOUBLE_EQ(b.precisions[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.precisions[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.precisions[2], 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(b.precisions[3], 1.0 / 1.0);
  EXPECT_NEAR(b.brevity_penalty, std::exp(1.0 - 4.0 / 3.0), 1e-15);
}

TEST(Bleu, ClipsRepeatedNgrams) {
  const auto h = lines({"the the the the"});
  const auto r = lines({"the cat"});
  const BleuReport b = bleu(h, r);
  EXPECT_EQ(b.matches[0], 1u);
  EXPECT_EQ(b.totals[0], 4u);
}

TEST(Bleu, CountMismatchThrows) {
  const auto h = lines({"a", "b"});
  const auto r = lines({"a"});
  EXPECT_THROW(bleu(h, r), Error);
}

TEST(Bleu, EmptyHypothesesScoreZero) {
  const std::vector<Sentence> h{Sentence{}};
  const auto r = lines({"a b"});
  const BleuReport b = bleu(h, r, Smoothing::add_one);
  EXPECT_EQ(b.bleu, 0.0);
  EXPECT_EQ(b.brevity_penalty, 0.0);
}

TEST(Bleu, AgreesWithNaiveOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t count = 1 + rng.below(20);
    const std::size_t vocab = 1 + rng.below(10);
    const auto hyps = random_corpus(rng, count, vocab);
    const auto refs = random_corpus(rng, count, vocab);
    for (Smoothing sm : {Smoothing::none, Smoothing::add_one}) {
      const BleuReport got = bleu(hyps, refs, sm);
      const oracle::NaiveBleu want = oracle::naive_bleu(raw(hyps), raw(refs), sm == Smoothing::add_one);
      EXPECT_NEAR(got.bleu, want.bleu, 1e-9) << "trial " << trial;
      EXPECT_NEAR(got.brevity_penalty, want.bp, 1e-12);
      for (int n = 0; n < 4; ++n) EXPECT_NEAR(got.precisions[n], want.p[n], 1e-12);
      EXPECT_EQ(static_cast<long>(got.hypothesis_length), want.hyp_len);
      EXPECT_EQ(static_cast<long>(got.reference_length), want.ref_len);
    }
  }
}

TEST(Bleu, BoundedAndOrderInvariant) {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    auto hyps = random_corpus(rng, 10, 5);
    auto refs = random_corpus(rng, 10, 5);
    const BleuReport a = bleu(hyps, refs, Smoothing::add_one);
    EXPECT_GE(a.bleu, 0.0);
    EXPECT_LE(a.bleu, 1.0);
    EXPECT_LE(a.brevity_penalty, 1.0);
    std::vector<std::size_t> order(hyps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<Sentence> h2, r2;
    for (std::size_t i : order) {
      h2.push_back(hyps[i]);
      r2.push_back(refs[i]);
    }
    EXPECT_EQ(bleu(h2, r2, Smoothing::add_one).bleu, a.bleu);
  }
}

TEST(Coverage, DirectCounts) {
  const Vocab v({"a"});
  const auto c = lines({"a b a"});
  const CoverageReport r = vocab_coverage(v, c, Side::source);
  EXPECT_DOUBLE_EQ(r.token_coverage, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.type_coverage, 1.0 / 2.0);
  EXPECT_EQ(r.side, Side::source);
}

TEST(Coverage, SupersetVocabCoversAll) {
  const Vocab v({"a", "b", "c"});
  const CoverageReport r = vocab_coverage(v, lines({"a b a", "c"}));
  EXPECT_EQ(r.token_coverage, 1.0);
  EXPECT_EQ(r.type_coverage, 1.0);
}

TEST(Coverage, MonotoneInVocabulary) {
  const auto c = lines({"a b c d a a e", "f g a"});
  std::vector<std::string> tokens;
  double last_token = -1.0;
  double last_type = -1.0;
  for (const char* t : {"a", "b", "zz", "c", "d", "e", "f", "g"}) {
    tokens.emplace_back(t);
    const CoverageReport r = vocab_coverage(Vocab(tokens), c);
    EXPECT_GE(r.token_coverage, last_token);
    EXPECT_GE(r.type_coverage, last_type);
    last_token = r.token_coverage;
    last_type = r.type_coverage;
  }
  EXPECT_EQ(last_token, 1.0);
}

TEST(Coverage, EmptyCorpusThrows) {
  const std::vector<Sentence> empty;
  EXPECT_THROW(vocab_coverage(Vocab(), empty), Error);
}

}  // namespace
}  // namespace lexaug
