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

#include "lexaug/augment.hpp"

#include "lexaug/error.hpp"
#include "lexaug/random.hpp"

namespace lexaug {

void WowPolicy::validate() const {
  if (tie_mode == TieMode::seeded_random && !rng_seed) {
    throw Error("seeded_random tie mode requires a seed");
  }
  if (tie_mode == TieMode::first && rng_seed) {
    throw Error("a seed is only meaningful with seeded_random tie mode");
  }
}

Sentence wow_translate(const Lexicon& lexicon, const Sentence& target, const WowPolicy& policy,
                       std::size_t sentence_index) {
  policy.validate();
  std::optional<Rng> rng;
  if (policy.tie_mode == TieMode::seeded_random) rng.emplace(derive_seed(*policy.rng_seed, sentence_index));
  std::vector<std::string> out;
  out.reserve(target.size());
  for (const auto& token : target) {
    const auto options = lexicon.lookup(token);
    if (options.empty()) {
      if (policy.oov_mode == OovMode::copy_through) out.push_back(token);
      continue;
    }
    // The draw happens for every in-lexicon token so a token's choice is
    // fixed by its position alone.
    const std::size_t pick = rng ? rng->below(options.size()) : 0;
    out.push_back(options[pick]);
  }
  return Sentence(std::move(out));
}

AugmentResult augment_wow(const Lexicon& lexicon, const Corpus& mono, const WowPolicy& policy) {
  policy.validate();
  AugmentResult result;
  result.pairs.reserve(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const Sentence& target = mono.sentences[i];
    Sentence source = wow_translate(lexicon, target, policy, i);
    if (source.empty() || target.empty()) {
      ++result.discarded;
      continue;
    }
    result.pairs.push_back({std::move(source), target, Origin::wow});
  }
  return result;
}

std::vector<ParallelPair> augment_copy(const Corpus& mono) {
  std::vector<ParallelPair> pairs;
  pairs.reserve(mono.size());
  for (const Sentence& s : mono.sentences) {
    if (s.empty()) continue;
    pairs.push_back({s, s, Origin::copy});
  }
  return pairs;
}

AugmentResult augment_bt(const nmt::TranslationModel& reverse_model, const Corpus& mono,
                         const nmt::DecodeConfig& decode_config) {
  AugmentResult result;
  result.pairs.reserve(mono.size());
  for (const Sentence& target : mono.sentences) {
    Sentence source = nmt::beam_search(reverse_model, target, decode_config);
    if (source.empty() || target.empty()) {
      ++result.discarded;
      continue;
    }
    result.pairs.push_back({std::move(source), target, Origin::bt});
  }
  return result;
}

std::vector<ParallelPair> mix(const MixPlan& plan) {
  std::vector<ParallelPair> out = plan.parallel;
  for (const auto& batch : plan.synthetic_batches) out.insert(out.end(), batch.begin(), batch.end());
  Rng rng(plan.shuffle_seed);
  rng.shuffle(out);
  return out;
}

std::vector<ParallelPair> reversed(std::span<const ParallelPair> pairs) {
  std::vector<ParallelPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p.target, p.source, p.origin});
  return out;
}

}  // namespace lexaug
