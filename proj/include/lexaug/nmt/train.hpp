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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/metrics.hpp"
#include "lexaug/nmt/decode.hpp"
#include "lexaug/nmt/model.hpp"
#include "lexaug/nmt/network.hpp"

namespace lexaug::nmt {

struct TrainConfig {
  int batch_size = 32;
  int epochs = 50;
  double lr_init = 0.001;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double grad_clip_norm = 5.0;
  int eval_every = 1;
  std::uint64_t shuffle_seed = 0;
  // Smoothing for the dev BLEU that drives checkpoint selection.
  Smoothing select_smoothing = Smoothing::add_one;

  void validate() const;
};

// lr_init * 0.5 * (1 + cos(pi * step / total_steps)).
double cosine_lr(double lr_init, std::int64_t step, std::int64_t total_steps);

/// Adam with bias correction. Moment buffers mirror the model layout.
class Adam {
 public:
  Adam(const ModelConfig& config, double beta1, double beta2, double eps);
  void step(Model& model, const Model& grad, double lr);
  std::int64_t steps_taken() const { return t_; }

 private:
  Model m_;
  Model v_;
  double beta1_;
  double beta2_;
  double eps_;
  std::int64_t t_ = 0;
};

// Rescales `grad` so its global L2 norm is at most max_norm. Returns the norm
// before clipping.
double clip_global_norm(Model& grad, double max_norm);

struct Evaluation {
  int epoch = 0;  // 1-based
  double dev_bleu = 0.0;  // x100
};

struct TrainReport {
  std::vector<double> epoch_loss;  // token-weighted mean per epoch
  std::vector<Evaluation> evaluations;
  std::size_t selected = 0;  // index into evaluations

  friend bool operator==(const TrainReport& a, const TrainReport& b) {
    if (a.epoch_loss != b.epoch_loss || a.selected != b.selected) return false;
    if (a.evaluations.size() != b.evaluations.size()) return false;
    for (std::size_t i = 0; i < a.evaluations.size(); ++i) {
      if (a.evaluations[i].epoch != b.evaluations[i].epoch ||
          a.evaluations[i].dev_bleu != b.evaluations[i].dev_bleu) {
        return false;
      }
    }
    return true;
  }
};

struct TrainResult {
  TranslationModel model;  // the selected checkpoint
  TrainReport report;
};

using TrainLog = std::function<void(std::string_view)>;

std::vector<EncodedPair> encode_pairs(const TranslationModel& model, std::span<const ParallelPair> pairs);

/// Seeded-shuffle minibatch training with Adam, cosine-annealed learning rate
/// and global-norm clipping. Dev BLEU is measured with beam search every
/// eval_every epochs and after the last epoch; the best evaluation wins,
/// earliest on ties. Throws Error naming epoch and step on a non-finite loss.
TrainResult train(TranslationModel initial, std::span<const ParallelPair> train_pairs,
                  std::span<const ParallelPair> dev_pairs, const TrainConfig& train_config,
                  const DecodeConfig& decode_config, const TrainLog& log = {});

}  // namespace lexaug::nmt
