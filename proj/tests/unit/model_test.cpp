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
#include <cstring>
#include <vector>

#include "lexaug/error.hpp"
#include "lexaug/nmt/model.hpp"
#include "lexaug/nmt/network.hpp"
#include "test_util.hpp"

namespace lexaug::nmt {
namespace {

using testing::markov_model;
using testing::random_ids;
using testing::random_model;
using testing::random_pairs;

ModelConfig tiny(std::uint64_t seed = 3) {
  ModelConfig c;
  c.embed_dim = 8;
  c.hidden_dim = 6;
  c.src_vocab_size = 10;
  c.tgt_vocab_size = 9;
  c.init_seed = seed;
  return c;
}

bool same_bytes(const Model& a, const Model& b) {
  std::vector<const Matrix*> ta, tb;
  a.for_each_tensor([&](std::string_view, const Matrix& t) { ta.push_back(&t); });
  b.for_each_tensor([&](std::string_view, const Matrix& t) { tb.push_back(&t); });
  for (std::size_t k = 0; k < ta.size(); ++k) {
    if (ta[k]->rows() != tb[k]->rows() || ta[k]->cols() != tb[k]->cols()) return false;
    if (std::memcmp(ta[k]->data(), tb[k]->data(), sizeof(double) * static_cast<std::size_t>(ta[k]->size())) != 0) {
      return false;
    }
  }
  return true;
}

TEST(InitModel, Deterministic) {
  EXPECT_TRUE(same_bytes(init_model(tiny()), init_model(tiny())));
  EXPECT_FALSE(same_bytes(init_model(tiny(3)), init_model(tiny(4))));
}

TEST(InitModel, Shapes) {
  ModelConfig c = tiny();
  c.src_vocab_size = 10;
  const Model m = init_model(c);
  EXPECT_EQ(m.src_embed.rows(), 10);
  EXPECT_EQ(m.src_embed.cols(), 8);
  EXPECT_EQ(m.tgt_embed.rows(), 9);
  EXPECT_EQ(m.encoder.input.rows(), 18);
  EXPECT_EQ(m.encoder.input.cols(), 8);
  EXPECT_EQ(m.decoder.input.cols(), 14);
  EXPECT_EQ(m.decoder.gates.rows(), 12);
  EXPECT_EQ(m.att_score.rows(), 6);
  EXPECT_EQ(m.out_weight.rows(), 9);
  EXPECT_EQ(m.out_weight.cols(), 12);
  std::size_t total = 0;
  m.for_each_tensor([&](std::string_view, const Matrix& t) { total += static_cast<std::size_t>(t.size()); });
  EXPECT_EQ(m.parameter_count(), total);
}

TEST(InitModel, BoundedByFanRule) {
  const Model m = init_model(tiny());
  EXPECT_TRUE(m.all_finite());
  m.for_each_tensor([&](std::string_view name, const Matrix& t) {
    const bool bias = name.find("bias") != std::string_view::npos;
    if (bias) {
      EXPECT_TRUE(t.isZero(0.0)) << name;
      return;
    }
    const double a = std::sqrt(6.0 / static_cast<double>(t.rows() + t.cols()));
    EXPECT_LE(t.cwiseAbs().maxCoeff(), a) << name;
    EXPECT_GT(t.cwiseAbs().maxCoeff(), 0.0) << name;
  });
}

TEST(ModelConfig, RejectsZeroDims) {
  ModelConfig c = tiny();
  c.hidden_dim = 0;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_THROW(init_model(c), Error);
}

TEST(Encode, ShapesAndDeterminism) {
  const Model m = init_model(tiny());
  const std::vector<TokenId> src{4, 5, 6, 7, 8};
  const auto states = encode(m, src);
  ASSERT_EQ(states.size(), 5u);
  for (const auto& s : states) EXPECT_EQ(s.size(), 6);
  const auto again = encode(m, src);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(states[i], again[i]);
}

TEST(Encode, ZeroModelIsFinite) {
  const Model m = Model::zeros(tiny());
  for (const auto& s : encode(m, std::vector<TokenId>{1, 4, 9})) EXPECT_TRUE(s.allFinite());
}

TEST(Encode, RejectsOutOfRangeIds) {
  const Model m = init_model(tiny());
  EXPECT_THROW(encode(m, std::vector<TokenId>{4, 10}), Error);
  EXPECT_THROW(encode(m, std::vector<TokenId>{-1}), Error);
}

TEST(Attention, IsADistribution) {
  Rng rng(12);
  const Model m = random_model(tiny(), 5, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto states = encode(m, random_ids(rng, 10, 1 + rng.below(9)));
    Vector query(6);
    for (Eigen::Index i = 0; i < 6; ++i) query(i) = rng.uniform(-1, 1);
    const AttentionResult r = attention_step(m, query, states);
    EXPECT_NEAR(r.weights.sum(), 1.0, 1e-12);
    EXPECT_GE(r.weights.minCoeff(), 0.0);
    EXPECT_LE(r.weights.maxCoeff(), 1.0);
    Vector expected = Vector::Zero(6);
    for (std::size_t j = 0; j < states.size(); ++j) expected += r.weights(static_cast<Eigen::Index>(j)) * states[j];
    EXPECT_LT((expected - r.context).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Attention, SingleStateGetsAllWeight) {
  const Model m = random_model(tiny(), 6);
  const auto states = encode(m, std::vector<TokenId>{4});
  const AttentionResult r = attention_step(m, Vector::Ones(6), states);
  EXPECT_EQ(r.weights(0), 1.0);
  EXPECT_EQ(r.context, states[0]);
}

TEST(Attention, IdenticalStatesSplitEvenly) {
  const Model m = random_model(tiny(), 7);
  Vector h(6);
  h << 0.1, -0.2, 0.3, 0.4, -0.5, 0.6;
  const std::vector<Vector> states{h, h};
  const AttentionResult r = attention_step(m, Vector::Ones(6), states);
  EXPECT_DOUBLE_EQ(r.weights(0), 0.5);
  EXPECT_DOUBLE_EQ(r.weights(1), 0.5);
}

TEST(ForwardLoss, UniformOutputGivesLogV) {
  const Model m = Model::zeros(tiny());
  Rng rng(2);
  const auto pairs = random_pairs(rng, tiny(), 4, 5);
  EXPECT_DOUBLE_EQ(forward_loss(m, make_batch(pairs)), std::log(9.0));
}

TEST(ForwardLoss, DuplicatedBatchHasSameMean) {
  const Model m = random_model(tiny(), 8);
  Rng rng(3);
  const auto one = random_pairs(rng, tiny(), 1, 6);
  const std::vector<EncodedPair> two{one[0], one[0]};
  EXPECT_NEAR(forward_loss(m, make_batch(one)), forward_loss(m, make_batch(two)), 1e-12);
}

TEST(ForwardLoss, PaddingDoesNotLeak) {
  const Model m = random_model(tiny(), 9);
  Rng rng(4);
  const auto pairs = random_pairs(rng, tiny(), 5, 7);
  // Token-weighted mean of the per-pair losses equals the batched loss.
  double sum = 0.0;
  int tokens = 0;
  for (const auto& p : pairs) {
    const std::vector<EncodedPair> single{p};
    const Batch b = make_batch(single);
    sum += forward_loss(m, b) * b.token_count();
    tokens += b.token_count();
  }
  EXPECT_NEAR(forward_loss(m, make_batch(pairs)), sum / tokens, 1e-12);
}

TEST(ForwardLoss, FiniteAndNonNegative) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Model m = random_model(tiny(), 100 + static_cast<std::uint64_t>(trial), 2.0);
    const double loss = forward_loss(m, make_batch(random_pairs(rng, tiny(), 3, 6)));
    EXPECT_TRUE(std::isfinite(loss));
    EXPECT_GE(loss, 0.0);
  }
}

TEST(ForwardLoss, ConfidentCorrectModelApproachesZero) {
  // Deterministic chain bos -> 4 -> 5 -> eos.
  const int v = 6;
  double last = 1e9;
  for (double sharp : {5.0, 10.0, 20.0}) {
    Matrix logits = Matrix::Zero(v, v);
    logits(4, Vocab::kBos) = sharp;
    logits(5, 4) = sharp;
    logits(Vocab::kEos, 5) = sharp;
    const Model m = markov_model(logits, 5);
    const std::vector<EncodedPair> pairs{{{4}, {4, 5}}};
    const double loss = forward_loss(m, make_batch(pairs));
    EXPECT_LT(loss, last);
    last = loss;
  }
  EXPECT_LT(last, 1e-7);
}

TEST(SequenceLogProb, MatchesLossTimesTokens) {
  const Model m = random_model(tiny(), 10);
  const std::vector<TokenId> src{4, 5}, tgt{6, 7, 8};
  const std::vector<EncodedPair> pairs{{src, tgt}};
  EXPECT_NEAR(sequence_log_prob(m, src, tgt), -4.0 * forward_loss(m, make_batch(pairs)), 1e-12);
}

TEST(Batch, Layout) {
  const std::vector<EncodedPair> pairs{{{4, 5, 6}, {7}}, {{8}, {4, 5}}};
  const Batch b = make_batch(pairs);
  EXPECT_EQ(b.size, 2);
  EXPECT_EQ(b.src_steps, 3);
  EXPECT_EQ(b.tgt_steps, 3);
  EXPECT_EQ(b.src[0 * 2 + 1], 8);
  EXPECT_EQ(b.src[2 * 2 + 1], Vocab::kPad);
  EXPECT_EQ(b.dec_input[0], Vocab::kBos);
  EXPECT_EQ(b.dec_gold[1 * 2 + 0], Vocab::kEos);
  EXPECT_EQ(b.dec_gold[2 * 2 + 1], Vocab::kEos);
  EXPECT_EQ(b.token_count(), 5);
}

}  // namespace
}  // namespace lexaug::nmt
