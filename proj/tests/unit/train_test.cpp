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
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "lexaug/error.hpp"
#include "lexaug/nmt/checkpoint.hpp"
#include "lexaug/nmt/train.hpp"
#include "test_util.hpp"

namespace lexaug::nmt {
namespace {

TEST(CosineLr, Endpoints) {
  EXPECT_EQ(cosine_lr(0.001, 0, 100), 0.001);
  EXPECT_NEAR(cosine_lr(0.001, 50, 100), 0.0005, 1e-15);
  EXPECT_NEAR(cosine_lr(0.001, 100, 100), 0.0, 1e-18);
  const double last = cosine_lr(0.001, 99, 100);
  EXPECT_LE(last, 0.001 * (1.0 - std::cos(std::numbers::pi * 99.0 / 100.0)) / 2.0 + 1e-18);
  double prev = 1.0;
  for (int t = 0; t <= 100; ++t) {
    const double lr = cosine_lr(0.001, t, 100);
    EXPECT_LE(lr, prev);
    prev = lr;
  }
}

ModelConfig tiny() {
  ModelConfig c;
  c.embed_dim = 2;
  c.hidden_dim = 2;
  c.src_vocab_size = 5;
  c.tgt_vocab_size = 5;
  return c;
}

TEST(Adam, MatchesScalarRecurrence) {
  Model p = Model::zeros(tiny());
  p.out_bias(0, 0) = 0.3;
  Adam adam(tiny(), 0.9, 0.999, 1e-8);
  double m = 0.0, v = 0.0, x = 0.3;
  const double grads[] = {0.5, -0.2, 1.5, 0.0, -3.0};
  for (int t = 1; t <= 5; ++t) {
    Model g = Model::zeros(tiny());
    g.out_bias(0, 0) = grads[t - 1];
    adam.step(p, g, 0.01);
    m = 0.9 * m + 0.1 * grads[t - 1];
    v = 0.999 * v + 0.001 * grads[t - 1] * grads[t - 1];
    const double mh = m / (1.0 - std::pow(0.9, t));
    const double vh = v / (1.0 - std::pow(0.999, t));
    x -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
    EXPECT_NEAR(p.out_bias(0, 0), x, 1e-15);
  }
  EXPECT_EQ(p.out_bias(1, 0), 0.0);
  EXPECT_EQ(adam.steps_taken(), 5);
}

TEST(ClipGlobalNorm, RescalesOnlyAboveThreshold) {
  Model g = Model::zeros(tiny());
  g.out_bias(0, 0) = 3.0;
  g.src_embed(1, 1) = 4.0;
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 10.0), 5.0);
  EXPECT_EQ(g.out_bias(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 1.0), 5.0);
  EXPECT_NEAR(g.out_bias(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(g.src_embed(1, 1), 0.8, 1e-15);
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.adam_beta1 = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = TrainConfig{};
  c.adam_eps = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), Error);
}

struct Toy {
  TranslationModel model;
  std::vector<ParallelPair> train;
  std::vector<ParallelPair> dev;
};

// Reverse-the-sentence task over a handful of words.
Toy reverse_task(std::uint64_t seed) {
  Rng rng(seed);
  Toy toy;
  auto make = [&] {
    std::vector<std::string> s;
    for (std::size_t j = 0, n = 1 + rng.below(4); j < n; ++j) s.push_back("w" + std::to_string(rng.below(6)));
    std::vector<std::string> t(s.rbegin(), s.rend());
    return ParallelPair{Sentence(s), Sentence(t), Origin::parallel};
  };
  for (int i = 0; i < 60; ++i) toy.train.push_back(make());
  for (int i = 0; i < 8; ++i) toy.dev.push_back(make());
  toy.model.src_vocab = build_vocab(sources(toy.train));
  toy.model.tgt_vocab = build_vocab(targets(toy.train));
  ModelConfig c;
  c.embed_dim = 8;
  c.hidden_dim = 8;
  c.src_vocab_size = static_cast<int>(toy.model.src_vocab.size());
  c.tgt_vocab_size = static_cast<int>(toy.model.tgt_vocab.size());
  c.init_seed = seed;
  toy.model.model = init_model(c);
  return toy;
}

TrainConfig quick() {
  TrainConfig tc;
  tc.batch_size = 8;
  tc.epochs = 6;
  tc.lr_init = 0.01;
  tc.eval_every = 2;
  tc.shuffle_seed = 17;
  return tc;
}

TEST(Train, DeterministicEndToEnd) {
  const Toy a = reverse_task(1);
  const Toy b = reverse_task(1);
  DecodeConfig dc;
  dc.beam_width = 2;
  std::vector<std::string> log_a;
  const TrainResult ra = train(a.model, a.train, a.dev, quick(), dc, [&](std::string_view s) { log_a.emplace_back(s); });
  const TrainResult rb = train(b.model, b.train, b.dev, quick(), dc);
  EXPECT_EQ(ra.report, rb.report);
  EXPECT_EQ(serialize_checkpoint(ra.model), serialize_checkpoint(rb.model));
  EXPECT_EQ(log_a.size(), 6u);
  TrainConfig other = quick();
  other.shuffle_seed = 18;
  EXPECT_NE(train(a.model, a.train, a.dev, other, dc).report.epoch_loss, ra.report.epoch_loss);
}

TEST(Train, ReportShapeAndSelection) {
  const Toy t = reverse_task(2);
  TrainConfig tc = quick();
  tc.epochs = 7;
  tc.eval_every = 3;
  const TrainResult r = train(t.model, t.train, t.dev, tc, DecodeConfig{});
  ASSERT_EQ(r.report.epoch_loss.size(), 7u);
  ASSERT_EQ(r.report.evaluations.size(), 3u);
  EXPECT_EQ(r.report.evaluations[0].epoch, 3);
  EXPECT_EQ(r.report.evaluations[1].epoch, 6);
  EXPECT_EQ(r.report.evaluations[2].epoch, 7);
  const auto& ev = r.report.evaluations;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    EXPECT_LE(ev[i].dev_bleu, ev[r.report.selected].dev_bleu);
    if (i < r.report.selected) EXPECT_LT(ev[i].dev_bleu, ev[r.report.selected].dev_bleu);
  }
  EXPECT_LT(r.report.epoch_loss.back(), r.report.epoch_loss.front());
  // The returned model scores the selected dev BLEU.
  Corpus src;
  std::vector<Sentence> refs;
  for (const auto& p : t.dev) {
    src.sentences.push_back(p.source);
    refs.push_back(p.target);
  }
  const double again = bleu(translate_corpus(r.model, src, DecodeConfig{}).sentences, refs, Smoothing::add_one).score();
  EXPECT_EQ(again, ev[r.report.selected].dev_bleu);
}

TEST(Train, NonFiniteLossNamesEpochAndStep) {
  Toy t = reverse_task(3);
  t.model.model.out_bias(4, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    train(t.model, t.train, t.dev, quick(), DecodeConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1, step 0"), std::string::npos) << e.what();
  }
}

TEST(Train, RejectsEmptySets) {
  const Toy t = reverse_task(4);
  EXPECT_THROW(train(t.model, {}, t.dev, quick(), DecodeConfig{}), Error);
  EXPECT_THROW(train(t.model, t.train, {}, quick(), DecodeConfig{}), Error);
}

}  // namespace
}  // namespace lexaug::nmt
