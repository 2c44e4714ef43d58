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

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "lexaug/corpus.hpp"

namespace lexaug::nmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ModelConfig {
  int embed_dim = 64;
  int hidden_dim = 64;
  int src_vocab_size = 0;
  int tgt_vocab_size = 0;
  std::uint64_t init_seed = 0;

  void validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Gated recurrent unit, gates ordered (update, reset, candidate):
//   z = sigmoid(Wz x + Uz h + bz),  r = sigmoid(Wr x + Ur h + br)
//   n = tanh(Wn x + Un (r * h) + bn),  h' = (1 - z) * n + z * h
struct GruParams {
  Matrix input;      // 3H x in
  Matrix gates;      // 2H x H, update and reset rows
  Matrix candidate;  // H x H
  Matrix bias;       // 3H x 1
};

/// Single-layer GRU encoder-decoder with additive attention. The decoder
/// reads [target embedding; context] and predicts from [state; context].
struct Model {
  ModelConfig config;
  Matrix src_embed;   // Vs x E
  Matrix tgt_embed;   // Vt x E
  GruParams encoder;  // in = E
  GruParams decoder;  // in = E + H
  Matrix att_query;   // H x H, applied to the decoder state
  Matrix att_key;     // H x H, applied to encoder states
  Matrix att_score;   // H x 1
  Matrix out_weight;  // Vt x 2H
  Matrix out_bias;    // Vt x 1

  // Same shapes as `config` with every entry zero. Doubles as gradient storage.
  static Model zeros(const ModelConfig& config);

  // Visits every tensor in checkpoint order.
  template <typename F>
  void for_each_tensor(F&& f) {
    visit(*this, f);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    visit(*this, f);
  }

  std::size_t parameter_count() const;
  bool all_finite() const;

 private:
  template <typename Self, typename F>
  static void visit(Self& m, F& f) {
    f(std::string_view("src_embed"), m.src_embed);
    f(std::string_view("tgt_embed"), m.tgt_embed);
    f(std::string_view("encoder.input"), m.encoder.input);
    f(std::string_view("encoder.gates"), m.encoder.gates);
    f(std::string_view("encoder.candidate"), m.encoder.candidate);
    f(std::string_view("encoder.bias"), m.encoder.bias);
    f(std::string_view("decoder.input"), m.decoder.input);
    f(std::string_view("decoder.gates"), m.decoder.gates);
    f(std::string_view("decoder.candidate"), m.decoder.candidate);
    f(std::string_view("decoder.bias"), m.decoder.bias);
    f(std::string_view("att_query"), m.att_query);
    f(std::string_view("att_key"), m.att_key);
    f(std::string_view("att_score"), m.att_score);
    f(std::string_view("out_weight"), m.out_weight);
    f(std::string_view("out_bias"), m.out_bias);
  }
};

/// Weight matrices are drawn from U(-a, a), a = sqrt(6 / (rows + cols)),
/// each from its own stream of init_seed. Biases start at zero.
Model init_model(const ModelConfig& config);

// A model together with the vocabularies it was built over.
struct TranslationModel {
  Vocab src_vocab;
  Vocab tgt_vocab;
  Model model;
};

}  // namespace lexaug::nmt
