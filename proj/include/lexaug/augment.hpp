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
#include <optional>
#include <span>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/lexicon.hpp"
#include "lexaug/nmt/decode.hpp"
#include "lexaug/nmt/model.hpp"

namespace lexaug {

enum class OovMode { copy_through, drop };
enum class TieMode { first, seeded_random };

struct WowPolicy {
  OovMode oov_mode = OovMode::copy_through;
  TieMode tie_mode = TieMode::first;
  std::optional<std::uint64_t> rng_seed;  // present iff tie_mode == seeded_random

  // Throws Error when the seed/tie-mode pairing is violated.
  void validate() const;
};

/// Word-on-word translation of a target-language sentence into the source
/// language. `lexicon` maps target words to source words. With seeded_random
/// ties the choice for each token depends only on (rng_seed, sentence_index,
/// token position), never on call order.
Sentence wow_translate(const Lexicon& lexicon, const Sentence& target, const WowPolicy& policy,
                       std::size_t sentence_index = 0);

struct AugmentResult {
  std::vector<ParallelPair> pairs;
  std::size_t discarded = 0;
};

AugmentResult augment_wow(const Lexicon& lexicon, const Corpus& mono, const WowPolicy& policy);

// Source and target are both the monolingual sentence.
std::vector<ParallelPair> augment_copy(const Corpus& mono);

/// Back-translation through a target->source model. Empty hypotheses are
/// discarded and counted.
AugmentResult augment_bt(const nmt::TranslationModel& reverse_model, const Corpus& mono,
                         const nmt::DecodeConfig& decode_config);

struct MixPlan {
  std::vector<ParallelPair> parallel;
  std::vector<std::vector<ParallelPair>> synthetic_batches;
  std::uint64_t shuffle_seed = 0;
};

// Concatenation of every input followed by a seeded uniform shuffle.
std::vector<ParallelPair> mix(const MixPlan& plan);

// Swaps source and target of every pair, keeping the origin.
std::vector<ParallelPair> reversed(std::span<const ParallelPair> pairs);

}  // namespace lexaug
