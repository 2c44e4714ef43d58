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

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/nmt/model.hpp"
#include "lexaug/nmt/network.hpp"
#include "lexaug/random.hpp"

namespace lexaug::testing {

// Model with every entry (biases included) drawn from U(-scale, scale).
inline nmt::Model random_model(const nmt::ModelConfig& config, std::uint64_t seed, double scale = 0.5) {
  nmt::Model m = nmt::Model::zeros(config);
  Rng rng(seed);
  m.for_each_tensor([&](std::string_view, nmt::Matrix& t) {
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = rng.uniform(-scale, scale);
  });
  return m;
}

// Ids avoid the reserved range except unk, mirroring encoded text.
inline std::vector<TokenId> random_ids(Rng& rng, int vocab, std::size_t len) {
  std::vector<TokenId> ids(len);
  for (auto& id : ids) {
    const auto pick = static_cast<TokenId>(rng.below(static_cast<std::size_t>(vocab - 3)));
    id = pick == 0 ? Vocab::kUnk : pick + 3;
  }
  return ids;
}

inline std::vector<nmt::EncodedPair> random_pairs(Rng& rng, const nmt::ModelConfig& c, std::size_t count,
                                                  std::size_t max_len) {
  std::vector<nmt::EncodedPair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    pairs.push_back({random_ids(rng, c.src_vocab_size, 1 + rng.below(max_len)),
                     random_ids(rng, c.tgt_vocab_size, 1 + rng.below(max_len))});
  }
  return pairs;
}

// Decoder that ignores the source and the attention context: the next-token
// logits are exactly column `prev` of `logits` (Vt x Vt). Built from a one-hot
// target embedding, a saturated-open update path and a scaled output layer.
inline nmt::Model markov_model(const nmt::Matrix& logits, int src_vocab) {
  const int v = static_cast<int>(logits.rows());
  nmt::ModelConfig c;
  c.embed_dim = v;
  c.hidden_dim = v;
  c.src_vocab_size = src_vocab;
  c.tgt_vocab_size = v;
  nmt::Model m = nmt::Model::zeros(c);
  const double gain = 3.0;
  m.tgt_embed = nmt::Matrix::Identity(v, v);
  m.decoder.bias.topRows(v).setConstant(-60.0);  // update gate closed: h' = n
  m.decoder.input.block(2 * v, 0, v, v) = gain * nmt::Matrix::Identity(v, v);
  m.out_weight.leftCols(v) = logits / std::tanh(gain);
  return m;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lexaug_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace lexaug::testing
