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

#include "lexaug/nmt/train.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "lexaug/error.hpp"
#include "lexaug/random.hpp"

namespace lexaug::nmt {

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error("batch_size must be >= 1");
  if (epochs < 1) throw Error("epochs must be >= 1");
  if (!(lr_init > 0.0)) throw Error("lr_init must be positive");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0)) throw Error("adam_beta1 must lie in (0, 1)");
  if (!(adam_beta2 > 0.0 && adam_beta2 < 1.0)) throw Error("adam_beta2 must lie in (0, 1)");
  if (!(adam_eps > 0.0)) throw Error("adam_eps must be positive");
  if (!(grad_clip_norm > 0.0)) throw Error("grad_clip_norm must be positive");
  if (eval_every < 1) throw Error("eval_every must be >= 1");
}

double cosine_lr(double lr_init, std::int64_t step, std::int64_t total_steps) {
  if (total_steps <= 0) return lr_init;
  const double progress = static_cast<double>(step) / static_cast<double>(total_steps);
  return lr_init * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

Adam::Adam(const ModelConfig& config, double beta1, double beta2, double eps)
    : m_(Model::zeros(config)), v_(Model::zeros(config)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::step(Model& model, const Model& grad, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  std::vector<Matrix*> params;
  std::vector<const Matrix*> grads;
  std::vector<Matrix*> ms;
  std::vector<Matrix*> vs;
  model.for_each_tensor([&](std::string_view, Matrix& t) { params.push_back(&t); });
  grad.for_each_tensor([&](std::string_view, const Matrix& t) { grads.push_back(&t); });
  m_.for_each_tensor([&](std::string_view, Matrix& t) { ms.push_back(&t); });
  v_.for_each_tensor([&](std::string_view, Matrix& t) { vs.push_back(&t); });
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto g = grads[i]->array();
    ms[i]->array() = beta1_ * ms[i]->array() + (1.0 - beta1_) * g;
    vs[i]->array() = beta2_ * vs[i]->array() + (1.0 - beta2_) * g.square();
    params[i]->array() -= lr * (ms[i]->array() / c1) / ((vs[i]->array() / c2).sqrt() + eps_);
  }
}

double clip_global_norm(Model& grad, double max_norm) {
  double sq = 0.0;
  grad.for_each_tensor([&](std::string_view, const Matrix& t) { sq += t.squaredNorm(); });
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double factor = max_norm / norm;
    grad.for_each_tensor([&](std::string_view, Matrix& t) { t *= factor; });
  }
  return norm;
}

std::vector<EncodedPair> encode_pairs(const TranslationModel& model, std::span<const ParallelPair> pairs) {
  std::vector<EncodedPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.source.empty() || p.target.empty()) throw Error("training pairs must have two non-empty sides");
    out.push_back({model.src_vocab.encode(p.source), model.tgt_vocab.encode(p.target)});
  }
  return out;
}

TrainResult train(TranslationModel initial, std::span<const ParallelPair> train_pairs,
                  std::span<const ParallelPair> dev_pairs, const TrainConfig& tc,
                  const DecodeConfig& dc, const TrainLog& log) {
  tc.validate();
  dc.validate();
  if (train_pairs.empty()) throw Error("training set is empty");
  if (dev_pairs.empty()) throw Error("dev set is empty");

  const std::vector<EncodedPair> data = encode_pairs(initial, train_pairs);
  Corpus dev_sources;
  std::vector<Sentence> dev_refs;
  for (const auto& p : dev_pairs) {
    dev_sources.sentences.push_back(p.source);
    dev_refs.push_back(p.target);
  }

  TranslationModel current = std::move(initial);
  Adam adam(current.model.config, tc.adam_beta1, tc.adam_beta2, tc.adam_eps);
  Rng rng(tc.shuffle_seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const auto batches_per_epoch = static_cast<std::int64_t>((data.size() + tc.batch_size - 1) / tc.batch_size);
  const std::int64_t total_steps = batches_per_epoch * tc.epochs;
  std::int64_t step = 0;

  TrainResult result;
  std::optional<Model> best;
  std::vector<const EncodedPair*> members;
  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    double token_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(tc.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(tc.batch_size));
      members.clear();
      for (std::size_t i = start; i < end; ++i) members.push_back(&data[order[i]]);
      const Batch batch = make_batch(std::span<const EncodedPair* const>(members));
      Gradients g = backward(current.model, batch);
      if (!std::isfinite(g.loss)) {
        std::ostringstream msg;
        msg << "non-finite training loss at epoch " << epoch << ", step " << step;
        throw Error(msg.str());
      }
      clip_global_norm(g.grad, tc.grad_clip_norm);
      adam.step(current.model, g.grad, cosine_lr(tc.lr_init, step, total_steps));
      ++step;
      loss_sum += g.loss * batch.token_count();
      token_sum += batch.token_count();
    }
    const double epoch_loss = loss_sum / token_sum;
    result.report.epoch_loss.push_back(epoch_loss);

    std::ostringstream line;
    line << "epoch " << epoch << " loss " << epoch_loss;
    if (epoch % tc.eval_every == 0 || epoch == tc.epochs) {
      const Corpus hyps = translate_corpus(current, dev_sources, dc);
      const double score = bleu(hyps.sentences, dev_refs, tc.select_smoothing).score();
      result.report.evaluations.push_back({epoch, score});
      const auto& evals = result.report.evaluations;
      if (evals.size() == 1 || score > evals[result.report.selected].dev_bleu) {
        result.report.selected = evals.size() - 1;
        best = current.model;
      }
      line << " dev_bleu " << score;
    }
    if (log) log(line.str());
  }
  current.model = std::move(*best);
  result.model = std::move(current);
  return result;
}

}  // namespace lexaug::nmt
