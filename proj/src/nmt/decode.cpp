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

#include "lexaug/nmt/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexaug/error.hpp"
#include "lexaug/nmt/network.hpp"

namespace lexaug::nmt {
namespace {

bool generable(TokenId id) { return id != Vocab::kPad && id != Vocab::kBos; }

struct Candidate {
  double log_prob;
  Eigen::Index parent;
  TokenId token;
};

// Better first: higher score, then earlier parent, then lower token id.
bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  if (a.parent != b.parent) return a.parent < b.parent;
  return a.token < b.token;
}

}  // namespace

void DecodeConfig::validate() const {
  if (beam_width < 1) throw Error("beam_width must be >= 1");
  if (max_len && *max_len < 1) throw Error("max_len must be >= 1");
}

int DecodeConfig::max_len_for(std::size_t source_length) const {
  return max_len ? *max_len : static_cast<int>(2 * source_length + 5);
}

double hypothesis_score(const Hypothesis& h, bool length_normalize) {
  if (!length_normalize || h.steps() == 0) return h.log_prob;
  return h.log_prob / static_cast<double>(h.steps());
}

Hypothesis beam_search_ids(const Model& model, std::span<const TokenId> source, const DecodeConfig& config) {
  config.validate();
  const int max_len = config.max_len_for(source.size());
  const DecoderSession session(model, source);
  const auto vocab = static_cast<TokenId>(model.config.tgt_vocab_size);

  std::vector<Hypothesis> active(1);
  Matrix states = session.initial_states(1);
  std::vector<Hypothesis> finished;
  Matrix next_states;
  Matrix log_probs;

  for (int step = 0; step < max_len && !active.empty(); ++step) {
    std::vector<TokenId> previous;
    previous.reserve(active.size());
    for (const auto& h : active) previous.push_back(h.tokens.empty() ? Vocab::kBos : h.tokens.back());
    session.step(states, previous, next_states, log_probs);

    std::vector<Candidate> candidates;
    candidates.reserve(active.size() * static_cast<std::size_t>(vocab));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(active.size()); ++i) {
      for (TokenId w = 0; w < vocab; ++w) {
        if (!generable(w)) continue;
        candidates.push_back({active[static_cast<std::size_t>(i)].log_prob + log_probs(w, i), i, w});
      }
    }
    const std::size_t slots = static_cast<std::size_t>(config.beam_width) - finished.size();
    const std::size_t keep = std::min(slots, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), candidate_before);

    std::vector<Hypothesis> next_active;
    std::vector<Eigen::Index> parents;
    for (std::size_t k = 0; k < keep; ++k) {
      const Candidate& c = candidates[k];
      Hypothesis h = active[static_cast<std::size_t>(c.parent)];
      h.log_prob = c.log_prob;
      if (c.token == Vocab::kEos) {
        h.finished = true;
        finished.push_back(std::move(h));
      } else {
        h.tokens.push_back(c.token);
        next_active.push_back(std::move(h));
        parents.push_back(c.parent);
      }
    }
    Matrix kept(states.rows(), static_cast<Eigen::Index>(parents.size()));
    for (std::size_t k = 0; k < parents.size(); ++k) kept.col(static_cast<Eigen::Index>(k)) = next_states.col(parents[k]);
    states = std::move(kept);
    active = std::move(next_active);
  }

  const auto pick = [&](const std::vector<Hypothesis>& pool) {
    // Stable scan keeps the earliest of equal scores; finished hypotheses are
    // stored in completion order.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (hypothesis_score(pool[i], config.length_normalize) >
          hypothesis_score(pool[best], config.length_normalize)) {
        best = i;
      }
    }
    return pool[best];
  };
  if (!finished.empty()) return pick(finished);
  return pick(active);
}

Hypothesis greedy_ids(const Model& model, std::span<const TokenId> source, int max_len) {
  const DecoderSession session(model, source);
  Hypothesis h;
  Matrix states = session.initial_states(1);
  Matrix next_states;
  Matrix log_probs;
  for (int step = 0; step < max_len; ++step) {
    const TokenId prev = h.tokens.empty() ? Vocab::kBos : h.tokens.back();
    session.step(states, std::span<const TokenId>(&prev, 1), next_states, log_probs);
    TokenId best = -1;
    for (TokenId w = 0; w < log_probs.rows(); ++w) {
      if (!generable(w)) continue;
      if (best < 0 || log_probs(w, 0) > log_probs(best, 0)) best = w;
    }
    h.log_prob += log_probs(best, 0);
    if (best == Vocab::kEos) {
      h.finished = true;
      break;
    }
    h.tokens.push_back(best);
    states = next_states;
  }
  return h;
}

Sentence beam_search(const TranslationModel& model, const Sentence& source, const DecodeConfig& config) {
  if (source.empty()) return {};
  const auto ids = model.src_vocab.encode(source);
  const Hypothesis h = beam_search_ids(model.model, ids, config);
  return model.tgt_vocab.decode(h.tokens);
}

Corpus translate_corpus(const TranslationModel& model, const Corpus& corpus, const DecodeConfig& config) {
  Corpus out;
  out.sentences.reserve(corpus.size());
  for (const Sentence& s : corpus.sentences) out.sentences.push_back(beam_search(model, s, config));
  return out;
}

}  // namespace lexaug::nmt
