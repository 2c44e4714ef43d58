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

#include "lexaug/nmt/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lexaug/error.hpp"

namespace lexaug::nmt {
namespace {

using Eigen::Index;

struct GruCache {
  Matrix x;
  Matrix h_prev;
  Matrix z;
  Matrix r;
  Matrix n;
  Matrix rh;
  Matrix h;
  std::vector<char> active;
};

Matrix sigmoid(const Matrix& a) { return (1.0 + (-a.array()).exp()).inverse().matrix(); }

void gru_forward(const GruParams& p, Matrix x, const Matrix& h_prev, std::vector<char> active,
                 GruCache& c) {
  const Index hd = h_prev.rows();
  Matrix ax = p.input * x;
  ax.colwise() += p.bias.col(0);
  Matrix azr = ax.topRows(2 * hd);
  azr.noalias() += p.gates * h_prev;
  c.z = sigmoid(azr.topRows(hd));
  c.r = sigmoid(azr.bottomRows(hd));
  c.rh = c.r.cwiseProduct(h_prev);
  Matrix an = ax.bottomRows(hd);
  an.noalias() += p.candidate * c.rh;
  c.n = an.array().tanh().matrix();
  c.h = (1.0 - c.z.array()) * c.n.array() + c.z.array() * h_prev.array();
  for (Index b = 0; b < h_prev.cols(); ++b) {
    if (!active[static_cast<std::size_t>(b)]) c.h.col(b) = h_prev.col(b);
  }
  c.x = std::move(x);
  c.h_prev = h_prev;
  c.active = std::move(active);
}

// Accumulates parameter gradients into `g`; writes input and previous-state
// gradients.
void gru_backward(const GruParams& p, const GruCache& c, const Matrix& dh_out, GruParams& g,
                  Matrix& dx, Matrix& dh_prev) {
  const Index hd = c.h_prev.rows();
  Matrix dh = dh_out;
  dh_prev = Matrix::Zero(hd, dh_out.cols());
  for (Index b = 0; b < dh.cols(); ++b) {
    if (!c.active[static_cast<std::size_t>(b)]) {
      dh_prev.col(b) = dh_out.col(b);
      dh.col(b).setZero();
    }
  }
  const auto z = c.z.array();
  const auto r = c.r.array();
  const auto n = c.n.array();
  const Matrix dz = (dh.array() * (c.h_prev.array() - n)).matrix();
  const Matrix dan = (dh.array() * (1.0 - z) * (1.0 - n.square())).matrix();
  dh_prev.array() += dh.array() * z;

  g.candidate.noalias() += dan * c.rh.transpose();
  const Matrix drh = p.candidate.transpose() * dan;
  dh_prev.array() += drh.array() * r;

  Matrix dax(3 * hd, dh.cols());
  dax.topRows(hd) = (dz.array() * z * (1.0 - z)).matrix();
  dax.middleRows(hd, hd) = (drh.array() * c.h_prev.array() * r * (1.0 - r)).matrix();
  dax.bottomRows(hd) = dan;

  g.gates.noalias() += dax.topRows(2 * hd) * c.h_prev.transpose();
  dh_prev.noalias() += p.gates.transpose() * dax.topRows(2 * hd);
  g.input.noalias() += dax * c.x.transpose();
  g.bias += dax.rowwise().sum();
  dx.noalias() = p.input.transpose() * dax;
}

void check_ids(std::span<const TokenId> ids, int vocab_size, const char* what) {
  for (TokenId id : ids) {
    if (id < 0 || id >= vocab_size) {
      throw Error(std::string(what) + " token id " + std::to_string(id) +
                  " outside vocabulary of size " + std::to_string(vocab_size));
    }
  }
}

Matrix gather_rows(const Matrix& table, const TokenId* ids, Index count) {
  Matrix out(table.cols(), count);
  for (Index b = 0; b < count; ++b) out.col(b) = table.row(ids[b]).transpose();
  return out;
}

void scatter_rows(Matrix& table, const TokenId* ids, const Matrix& grads) {
  for (Index b = 0; b < grads.cols(); ++b) table.row(ids[b]) += grads.col(b).transpose();
}

struct EncoderPass {
  std::vector<GruCache> steps;
  std::vector<Matrix> keys;  // att_key * h_t, per step
};

void run_encoder(const Model& m, const Batch& batch, EncoderPass& pass) {
  const Index hd = m.config.hidden_dim;
  const Index bsz = batch.size;
  pass.steps.resize(static_cast<std::size_t>(batch.src_steps));
  pass.keys.resize(static_cast<std::size_t>(batch.src_steps));
  Matrix h = Matrix::Zero(hd, bsz);
  for (int t = 0; t < batch.src_steps; ++t) {
    const TokenId* ids = batch.src.data() + static_cast<std::size_t>(t) * batch.size;
    std::vector<char> active(static_cast<std::size_t>(bsz));
    for (Index b = 0; b < bsz; ++b) active[static_cast<std::size_t>(b)] = t < batch.src_len[static_cast<std::size_t>(b)];
    auto& step = pass.steps[static_cast<std::size_t>(t)];
    gru_forward(m.encoder, gather_rows(m.src_embed, ids, bsz), h, std::move(active), step);
    h = step.h;
    pass.keys[static_cast<std::size_t>(t)].noalias() = m.att_key * step.h;
  }
}

struct AttentionCache {
  std::vector<Matrix> pre;  // tanh activations per source position, H x B
  Matrix alpha;             // L x B
  Matrix context;           // H x B
};

void attention_forward(const Model& m, const EncoderPass& enc, const Batch& batch,
                       const Matrix& query_state, AttentionCache& c) {
  const Index steps = batch.src_steps;
  const Index bsz = batch.size;
  const Matrix q = m.att_query * query_state;
  c.pre.resize(static_cast<std::size_t>(steps));
  Matrix scores(steps, bsz);
  for (Index j = 0; j < steps; ++j) {
    auto& pre = c.pre[static_cast<std::size_t>(j)];
    pre = (q + enc.keys[static_cast<std::size_t>(j)]).array().tanh().matrix();
    scores.row(j).noalias() = m.att_score.transpose() * pre;
  }
  c.alpha.setZero(steps, bsz);
  for (Index b = 0; b < bsz; ++b) {
    const Index len = batch.src_len[static_cast<std::size_t>(b)];
    const double mx = scores.col(b).head(len).maxCoeff();
    auto col = c.alpha.col(b).head(len);
    col = (scores.col(b).head(len).array() - mx).exp().matrix();
    col /= col.sum();
  }
  c.context.setZero(m.config.hidden_dim, bsz);
  for (Index j = 0; j < steps; ++j) {
    c.context.array() += enc.steps[static_cast<std::size_t>(j)].h.array().rowwise() * c.alpha.row(j).array();
  }
}

void attention_backward(const Model& m, const EncoderPass& enc, const AttentionCache& c,
                        const Matrix& query_state, const Matrix& d_context, Model& g,
                        Matrix& d_query_state, std::vector<Matrix>& d_memory) {
  const Index steps = c.alpha.rows();
  Matrix d_alpha(steps, c.alpha.cols());
  for (Index j = 0; j < steps; ++j) {
    const Matrix& h = enc.steps[static_cast<std::size_t>(j)].h;
    d_alpha.row(j) = (d_context.array() * h.array()).colwise().sum();
    d_memory[static_cast<std::size_t>(j)].array() += d_context.array().rowwise() * c.alpha.row(j).array();
  }
  const Eigen::RowVectorXd weighted = (c.alpha.array() * d_alpha.array()).colwise().sum();
  const Matrix d_scores = (c.alpha.array() * (d_alpha.array().rowwise() - weighted.array())).matrix();

  Matrix d_q = Matrix::Zero(query_state.rows(), query_state.cols());
  for (Index j = 0; j < steps; ++j) {
    const Matrix& pre = c.pre[static_cast<std::size_t>(j)];
    g.att_score.noalias() += pre * d_scores.row(j).transpose();
    const Matrix d_pre = ((m.att_score * d_scores.row(j)).array() * (1.0 - pre.array().square())).matrix();
    d_q += d_pre;
    const Matrix& h = enc.steps[static_cast<std::size_t>(j)].h;
    g.att_key.noalias() += d_pre * h.transpose();
    d_memory[static_cast<std::size_t>(j)].noalias() += m.att_key.transpose() * d_pre;
  }
  g.att_query.noalias() += d_q * query_state.transpose();
  d_query_state.noalias() += m.att_query.transpose() * d_q;
}

struct DecoderStep {
  AttentionCache attention;
  GruCache gru;
  Matrix features;  // [state; context], 2H x B
  Matrix probs;     // Vt x B
};

// Runs the teacher-forced decoder; returns the summed (not averaged) loss.
double run_decoder(const Model& m, const Batch& batch, const EncoderPass& enc,
                   std::vector<DecoderStep>* cache) {
  const Index hd = m.config.hidden_dim;
  const Index ed = m.config.embed_dim;
  const Index bsz = batch.size;
  Matrix state = enc.steps.back().h;
  double total = 0.0;
  DecoderStep local;
  if (cache) cache->resize(static_cast<std::size_t>(batch.tgt_steps));
  for (int t = 0; t < batch.tgt_steps; ++t) {
    DecoderStep& s = cache ? (*cache)[static_cast<std::size_t>(t)] : local;
    attention_forward(m, enc, batch, state, s.attention);
    const std::size_t offset = static_cast<std::size_t>(t) * batch.size;
    Matrix x(ed + hd, bsz);
    x.topRows(ed) = gather_rows(m.tgt_embed, batch.dec_input.data() + offset, bsz);
    x.bottomRows(hd) = s.attention.context;
    std::vector<char> active(static_cast<std::size_t>(bsz));
    for (Index b = 0; b < bsz; ++b) active[static_cast<std::size_t>(b)] = t < batch.tgt_len[static_cast<std::size_t>(b)];
    gru_forward(m.decoder, std::move(x), state, active, s.gru);
    state = s.gru.h;

    s.features.resize(2 * hd, bsz);
    s.features.topRows(hd) = state;
    s.features.bottomRows(hd) = s.attention.context;
    Matrix logits = m.out_weight * s.features;
    logits.colwise() += m.out_bias.col(0);
    s.probs.resize(logits.rows(), bsz);
    for (Index b = 0; b < bsz; ++b) {
      const double mx = logits.col(b).maxCoeff();
      s.probs.col(b) = (logits.col(b).array() - mx).exp().matrix();
      const double z = s.probs.col(b).sum();
      s.probs.col(b) /= z;
      if (s.gru.active[static_cast<std::size_t>(b)]) {
        const TokenId gold = batch.dec_gold[offset + static_cast<std::size_t>(b)];
        total += std::log(z) + mx - logits(gold, b);
      }
    }
  }
  return total;
}

void validate_batch(const Model& m, const Batch& batch) {
  if (batch.size <= 0) throw Error("empty batch");
  check_ids(batch.src, m.config.src_vocab_size, "source");
  check_ids(batch.dec_input, m.config.tgt_vocab_size, "target");
  check_ids(batch.dec_gold, m.config.tgt_vocab_size, "target");
  for (int len : batch.src_len) {
    if (len <= 0) throw Error("source sentences must be non-empty");
  }
}

template <typename Get>
Batch build_batch(std::size_t count, Get get) {
  Batch batch;
  batch.size = static_cast<int>(count);
  for (std::size_t b = 0; b < count; ++b) {
    const EncodedPair& p = get(b);
    batch.src_len.push_back(static_cast<int>(p.source.size()));
    batch.tgt_len.push_back(static_cast<int>(p.target.size()) + 1);
    batch.src_steps = std::max(batch.src_steps, batch.src_len.back());
    batch.tgt_steps = std::max(batch.tgt_steps, batch.tgt_len.back());
  }
  const std::size_t n = count;
  batch.src.assign(static_cast<std::size_t>(batch.src_steps) * n, Vocab::kPad);
  batch.dec_input.assign(static_cast<std::size_t>(batch.tgt_steps) * n, Vocab::kPad);
  batch.dec_gold.assign(static_cast<std::size_t>(batch.tgt_steps) * n, Vocab::kPad);
  for (std::size_t b = 0; b < n; ++b) {
    const EncodedPair& p = get(b);
    for (std::size_t t = 0; t < p.source.size(); ++t) batch.src[t * n + b] = p.source[t];
    batch.dec_input[b] = Vocab::kBos;
    for (std::size_t t = 0; t < p.target.size(); ++t) {
      batch.dec_input[(t + 1) * n + b] = p.target[t];
      batch.dec_gold[t * n + b] = p.target[t];
    }
    batch.dec_gold[p.target.size() * n + b] = Vocab::kEos;
  }
  return batch;
}

}  // namespace

int Batch::token_count() const {
  int n = 0;
  for (int len : tgt_len) n += len;
  return n;
}

Batch make_batch(std::span<const EncodedPair> pairs) {
  return build_batch(pairs.size(), [&](std::size_t i) -> const EncodedPair& { return pairs[i]; });
}

Batch make_batch(std::span<const EncodedPair* const> pairs) {
  return build_batch(pairs.size(), [&](std::size_t i) -> const EncodedPair& { return *pairs[i]; });
}

double forward_loss(const Model& model, const Batch& batch) {
  validate_batch(model, batch);
  EncoderPass enc;
  run_encoder(model, batch, enc);
  return run_decoder(model, batch, enc, nullptr) / batch.token_count();
}

Gradients backward(const Model& model, const Batch& batch) {
  validate_batch(model, batch);
  const Index hd = model.config.hidden_dim;
  const Index ed = model.config.embed_dim;
  const Index bsz = batch.size;
  const double scale = 1.0 / batch.token_count();

  EncoderPass enc;
  run_encoder(model, batch, enc);
  std::vector<DecoderStep> dec;
  Gradients out{run_decoder(model, batch, enc, &dec) * scale, Model::zeros(model.config)};
  Model& g = out.grad;

  std::vector<Matrix> d_memory(static_cast<std::size_t>(batch.src_steps), Matrix::Zero(hd, bsz));
  Matrix d_state = Matrix::Zero(hd, bsz);
  Matrix dx;
  Matrix d_prev;
  for (int t = batch.tgt_steps - 1; t >= 0; --t) {
    const DecoderStep& s = dec[static_cast<std::size_t>(t)];
    const std::size_t offset = static_cast<std::size_t>(t) * batch.size;
    Matrix d_logits = s.probs;
    for (Index b = 0; b < bsz; ++b) {
      if (!s.gru.active[static_cast<std::size_t>(b)]) {
        d_logits.col(b).setZero();
        continue;
      }
      d_logits(batch.dec_gold[offset + static_cast<std::size_t>(b)], b) -= 1.0;
      d_logits.col(b) *= scale;
    }
    g.out_weight.noalias() += d_logits * s.features.transpose();
    g.out_bias += d_logits.rowwise().sum();
    const Matrix d_features = model.out_weight.transpose() * d_logits;
    d_state += d_features.topRows(hd);
    Matrix d_context = d_features.bottomRows(hd);

    gru_backward(model.decoder, s.gru, d_state, g.decoder, dx, d_prev);
    scatter_rows(g.tgt_embed, batch.dec_input.data() + offset, dx.topRows(ed));
    d_context += dx.bottomRows(hd);
    attention_backward(model, enc, s.attention, s.gru.h_prev, d_context, g, d_prev, d_memory);
    d_state = std::move(d_prev);
  }

  // The decoder starts from the encoder's last (carried) state.
  d_memory.back() += d_state;
  Matrix d_h = Matrix::Zero(hd, bsz);
  for (int t = batch.src_steps - 1; t >= 0; --t) {
    const GruCache& c = enc.steps[static_cast<std::size_t>(t)];
    const Matrix d_out = d_memory[static_cast<std::size_t>(t)] + d_h;
    gru_backward(model.encoder, c, d_out, g.encoder, dx, d_prev);
    scatter_rows(g.src_embed, batch.src.data() + static_cast<std::size_t>(t) * batch.size, dx);
    d_h = std::move(d_prev);
  }
  return out;
}

std::vector<Vector> encode(const Model& model, std::span<const TokenId> source) {
  check_ids(source, model.config.src_vocab_size, "source");
  std::vector<Vector> states;
  if (source.empty()) return states;
  EncodedPair pair{std::vector<TokenId>(source.begin(), source.end()), {}};
  const Batch batch = make_batch(std::span<const EncodedPair>(&pair, 1));
  EncoderPass enc;
  run_encoder(model, batch, enc);
  states.reserve(enc.steps.size());
  for (const auto& s : enc.steps) states.push_back(s.h.col(0));
  return states;
}

namespace {

// Attention for one query over a single source memory.
void attend(const Model& m, const Matrix& memory, const Matrix& keys, const Vector& projected_query,
            Eigen::Ref<Vector> context, Eigen::Ref<Vector> weights) {
  const Matrix pre = (keys.colwise() + projected_query).array().tanh().matrix();
  const Eigen::RowVectorXd scores = m.att_score.transpose() * pre;
  const double mx = scores.maxCoeff();
  weights = (scores.array() - mx).exp().matrix().transpose();
  weights /= weights.sum();
  context.noalias() = memory * weights;
}

}  // namespace

AttentionResult attention_step(const Model& model, const Vector& decoder_state,
                               std::span<const Vector> encoder_states) {
  const Index hd = model.config.hidden_dim;
  if (encoder_states.empty()) throw Error("attention over an empty source");
  if (decoder_state.size() != hd) throw Error("decoder state has wrong dimension");
  Matrix memory(hd, static_cast<Index>(encoder_states.size()));
  for (std::size_t j = 0; j < encoder_states.size(); ++j) {
    if (encoder_states[j].size() != hd) throw Error("encoder state has wrong dimension");
    memory.col(static_cast<Index>(j)) = encoder_states[j];
  }
  const Matrix keys = model.att_key * memory;
  AttentionResult result{Vector(hd), Vector(memory.cols())};
  attend(model, memory, keys, model.att_query * decoder_state, result.context, result.weights);
  return result;
}

DecoderSession::DecoderSession(const Model& model, std::span<const TokenId> source) : model_(&model) {
  if (source.empty()) throw Error("cannot decode an empty source sentence");
  const auto states = encode(model, source);
  memory_.resize(model.config.hidden_dim, static_cast<Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) memory_.col(static_cast<Index>(j)) = states[j];
  keys_ = model.att_key * memory_;
}

Matrix DecoderSession::initial_states(Index n) const {
  return memory_.col(memory_.cols() - 1).replicate(1, n);
}

void DecoderSession::step(const Matrix& states, std::span<const TokenId> previous, Matrix& next_states,
                          Matrix& log_probs, Matrix* attention) const {
  const Model& m = *model_;
  const Index hd = m.config.hidden_dim;
  const Index ed = m.config.embed_dim;
  const Index n = states.cols();
  check_ids(previous, m.config.tgt_vocab_size, "target");
  const Matrix queries = m.att_query * states;
  Matrix x(ed + hd, n);
  if (attention) attention->resize(memory_.cols(), n);
  Vector weights(memory_.cols());
  for (Index i = 0; i < n; ++i) {
    x.col(i).head(ed) = m.tgt_embed.row(previous[static_cast<std::size_t>(i)]).transpose();
    attend(m, memory_, keys_, queries.col(i), x.col(i).tail(hd), weights);
    if (attention) attention->col(i) = weights;
  }
  GruCache c;
  gru_forward(m.decoder, x, states, std::vector<char>(static_cast<std::size_t>(n), 1), c);
  next_states = c.h;
  Matrix features(2 * hd, n);
  features.topRows(hd) = c.h;
  features.bottomRows(hd) = c.x.bottomRows(hd);
  log_probs = m.out_weight * features;
  log_probs.colwise() += m.out_bias.col(0);
  for (Index i = 0; i < n; ++i) {
    const double mx = log_probs.col(i).maxCoeff();
    const double lse = mx + std::log((log_probs.col(i).array() - mx).exp().sum());
    log_probs.col(i).array() -= lse;
  }
}

double sequence_log_prob(const Model& model, std::span<const TokenId> source,
                         std::span<const TokenId> target) {
  EncodedPair pair{std::vector<TokenId>(source.begin(), source.end()),
                   std::vector<TokenId>(target.begin(), target.end())};
  const Batch batch = make_batch(std::span<const EncodedPair>(&pair, 1));
  return -forward_loss(model, batch) * batch.token_count();
}

}  // namespace lexaug::nmt
