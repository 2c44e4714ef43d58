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

#include <string>

#include "lexaug/error.hpp"
#include "lexaug/nmt/checkpoint.hpp"
#include "test_util.hpp"

namespace lexaug::nmt {
namespace {

TranslationModel sample(std::uint64_t seed) {
  TranslationModel tm;
  tm.src_vocab = Vocab({"a", "b", "ñ"});
  tm.tgt_vocab = Vocab({"x", "y", "z", "."});
  ModelConfig c;
  c.embed_dim = 3;
  c.hidden_dim = 4;
  c.src_vocab_size = 7;
  c.tgt_vocab_size = 8;
  c.init_seed = seed;
  tm.model = testing::random_model(c, seed, 1.0);
  tm.model.config = c;
  return tm;
}

TEST(Checkpoint, RoundTripIsExact) {
  const TranslationModel tm = sample(5);
  const std::string text = serialize_checkpoint(tm);
  const TranslationModel back = parse_checkpoint(text);
  EXPECT_EQ(back.src_vocab, tm.src_vocab);
  EXPECT_EQ(back.tgt_vocab, tm.tgt_vocab);
  EXPECT_EQ(back.model.config, tm.model.config);
  std::vector<const Matrix*> a, b;
  tm.model.for_each_tensor([&](std::string_view, const Matrix& t) { a.push_back(&t); });
  back.model.for_each_tensor([&](std::string_view, const Matrix& t) { b.push_back(&t); });
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(*a[k], *b[k]);
  EXPECT_EQ(serialize_checkpoint(back), text);
}

TEST(Checkpoint, Layout) {
  const std::string text = serialize_checkpoint(sample(6));
  EXPECT_EQ(text.rfind("lexaug-checkpoint 1\n", 0), 0u);
  EXPECT_NE(text.find("\ntensor src_embed 7 3\n"), std::string::npos);
  EXPECT_NE(text.find("\ntensor out_bias 8 1\n"), std::string::npos);
  EXPECT_LT(text.find("tensor src_embed"), text.find("tensor out_weight"));
  EXPECT_EQ(text.substr(text.size() - 4), "end\n");
}

TEST(Checkpoint, FileRoundTrip) {
  const auto dir = testing::temp_dir("ckpt");
  const TranslationModel tm = sample(7);
  save_checkpoint(dir / "model.ckpt", tm);
  EXPECT_EQ(serialize_checkpoint(load_checkpoint(dir / "model.ckpt")), serialize_checkpoint(tm));
}

TEST(Checkpoint, RejectsDamage) {
  const std::string text = serialize_checkpoint(sample(8));
  EXPECT_THROW(parse_checkpoint("lexaug-checkpoint 2\n"), Error);
  EXPECT_THROW(parse_checkpoint(text.substr(0, text.size() / 2)), Error);
  std::string wrong_shape = text;
  wrong_shape.replace(wrong_shape.find("tensor src_embed 7 3"), 20, "tensor src_embed 7 2");
  EXPECT_THROW(parse_checkpoint(wrong_shape), Error);
  EXPECT_THROW(load_checkpoint("/nonexistent/lexaug.ckpt"), Error);
}

}  // namespace
}  // namespace lexaug::nmt
