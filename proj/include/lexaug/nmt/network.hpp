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

#include <span>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/nmt/model.hpp"

namespace lexaug::nmt {

struct EncodedPair {
  std::vector<TokenId> source;
  std::vector<TokenId> target;  // without bos/eos
};

// Column-major padded batch. Step t of example b lives at index t * size + b.
struct Batch {
  int size = 0;
  int src_steps = 0;
  int tgt_steps = 0;               // target length + 1 (eos)
  std::vector<int> src_len;
  std::vector<int> tgt_len;
  std::vector<TokenId> src;        // src_steps x size
  std::vector<TokenId> dec_input;  // bos, y1 .. yn
  std::vector<TokenId> dec_gold;   // y1 .. yn, eos

  int token_count() const;
};

Batch make_batch(std::span<const EncodedPair> pairs);
Batch make_batch(std::span<const EncodedPair* const> pairs);

/// Mean per-token cross-entropy under teacher forcing, padding masked.
double forward_loss(const Model& model, const Batch& batch);

struct Gradients {
  double loss = 0.0;
  Model grad;  // same layout as the model
};

/// Exact reverse-mode gradients of forward_loss.
Gradients backward(const Model& model, const Batch& batch);

/// Encoder states, one hidden_dim vector per source token. Throws Error on
/// ids outside the source vocabulary.
std::vector<Vector> encode(const Model& model, std::span<const TokenId> source);

struct AttentionResult {
  Vector context;
  Vector weights;
};

/// Additive attention: score_j = v^T tanh(Wq s + Wk h_j), weights = softmax.
AttentionResult attention_step(const Model& model, const Vector& decoder_state,
                               std::span<const Vector> encoder_states);

/// Decoder over a fixed encoded source; runs a batch of hypotheses in columns.
class DecoderSession {
 public:
  DecoderSession(const Model& model, std::span<const TokenId> source);

  const Model& model() const { return *model_; }
  Eigen::Index source_length() const { return memory_.cols(); }

  // The encoder's final state replicated `n` times (H x n).
  Matrix initial_states(Eigen::Index n) const;

  // Advances each column of `states` by one token. `log_probs` receives the
  // full log-softmax over the target vocabulary (Vt x n); `attention`, when
  // non-null, receives the attention weights (L x n).
  void step(const Matrix& states, std::span<const TokenId> previous, Matrix& next_states,
            Matrix& log_probs, Matrix* attention = nullptr) const;

 private:
  const Model* model_;
  Matrix memory_;  // H x L encoder states
  Matrix keys_;    // H x L, att_key * memory
};

// Sum of log-probabilities of target followed by eos, via teacher forcing.
double sequence_log_prob(const Model& model, std::span<const TokenId> source,
                         std::span<const TokenId> target);

}  // namespace lexaug::nmt
