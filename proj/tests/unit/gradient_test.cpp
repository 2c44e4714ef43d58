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

#include <algorithm>
#include <cmath>
#include <string>

#include "../support/finite_difference.hpp"
#include "lexaug/nmt/network.hpp"
#include "test_util.hpp"

namespace lexaug::nmt {
namespace {

using testing::random_model;
using testing::random_pairs;
using oracle::compare;
using oracle::finite_difference;
using oracle::Mismatch;

TEST(Gradient, MatchesCentralDifferencesOnRandomTinyModels) {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(1000 + trial);
    ModelConfig c;
    c.embed_dim = 1 + static_cast<int>(rng.below(8));
    c.hidden_dim = 1 + static_cast<int>(rng.below(8));
    c.src_vocab_size = 5 + static_cast<int>(rng.below(6));
    c.tgt_vocab_size = 5 + static_cast<int>(rng.below(6));
    const Model model = random_model(c, 7 * trial + 1);
    const auto pairs = random_pairs(rng, c, 1 + rng.below(3), 4);
    const Batch batch = make_batch(pairs);
    const Gradients g = backward(model, batch);
    EXPECT_NEAR(g.loss, forward_loss(model, batch), 1e-12);
    const Mismatch m = compare(g.grad, finite_difference(model, batch, 1e-4));
    EXPECT_LT(m.worst, 1e-3) << "trial " << trial << ": " << m.where;
  }
}

TEST(Gradient, ShapesMirrorParameters) {
  ModelConfig c{3, 4, 6, 7, 0};
  const Model model = random_model(c, 3);
  Rng rng(5);
  const auto pairs = random_pairs(rng, c, 2, 3);
  const Gradients g = backward(model, make_batch(pairs));
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ps;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> gs;
  model.for_each_tensor([&](std::string_view, const Matrix& t) { ps.emplace_back(t.rows(), t.cols()); });
  g.grad.for_each_tensor([&](std::string_view, const Matrix& t) { gs.emplace_back(t.rows(), t.cols()); });
  EXPECT_EQ(ps, gs);
  for (const auto& [r, col] : gs) EXPECT_GT(r * col, 0);
}

// Summing the loss over a duplicated batch instead of averaging doubles every
// gradient.
TEST(Gradient, LinearInLossScale) {
  ModelConfig c{4, 5, 8, 9, 0};
  const Model model = random_model(c, 11);
  Rng rng(12);
  const auto pairs = random_pairs(rng, c, 3, 5);
  std::vector<EncodedPair> doubled = pairs;
  doubled.insert(doubled.end(), pairs.begin(), pairs.end());
  const Batch single = make_batch(pairs);
  const Batch twice = make_batch(doubled);
  const Gradients g1 = backward(model, single);
  const Gradients g2 = backward(model, twice);
  // g2 averages over twice the tokens, so sum-scaled g2 is 2 * token_count(single) * g2.
  std::vector<const Matrix*> a;
  std::vector<const Matrix*> b;
  g1.grad.for_each_tensor([&](std::string_view, const Matrix& t) { a.push_back(&t); });
  g2.grad.for_each_tensor([&](std::string_view, const Matrix& t) { b.push_back(&t); });
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Matrix summed_single = *a[k] * single.token_count();
    const Matrix summed_double = *b[k] * twice.token_count();
    EXPECT_LT((summed_double - 2.0 * summed_single).cwiseAbs().maxCoeff(), 1e-10);
  }
}

}  // namespace
}  // namespace lexaug::nmt
