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

#include <optional>
#include <span>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/nmt/model.hpp"

namespace lexaug::nmt {

struct DecodeConfig {
  int beam_width = 5;
  std::optional<int> max_len;  // unset: 2 * source length + 5
  bool length_normalize = true;

  void validate() const;
  int max_len_for(std::size_t source_length) const;
};

struct Hypothesis {
  std::vector<TokenId> tokens;  // generated tokens, eos excluded
  double log_prob = 0.0;        // eos included when finished
  bool finished = false;

  // Number of scored steps: tokens plus the eos if finished.
  std::size_t steps() const { return tokens.size() + (finished ? 1 : 0); }
};

// log_prob, divided by steps() when normalizing.
double hypothesis_score(const Hypothesis& h, bool length_normalize);

/// Beam search from bos. Each step keeps the best (beam_width - finished)
/// extensions by cumulative log-probability; extensions ending in eos retire
/// into the finished pool. Returns the best finished hypothesis (ties go to
/// the one that finished first), else the best partial one. pad and bos are
/// never generated.
Hypothesis beam_search_ids(const Model& model, std::span<const TokenId> source, const DecodeConfig& config);

// Argmax decoding; ties go to the lower id.
Hypothesis greedy_ids(const Model& model, std::span<const TokenId> source, int max_len);

/// Maps tokens through the model's vocabularies; unknown output renders as
/// the unk token. An empty source yields an empty sentence.
Sentence beam_search(const TranslationModel& model, const Sentence& source, const DecodeConfig& config);

Corpus translate_corpus(const TranslationModel& model, const Corpus& corpus, const DecodeConfig& config);

}  // namespace lexaug::nmt
