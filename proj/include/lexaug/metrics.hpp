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

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "lexaug/corpus.hpp"

namespace lexaug {

enum class Smoothing { none, add_one };

struct BleuReport {
  double bleu = 0.0;  // in [0, 1]
  std::array<double, 4> precisions{};
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;

  double score() const { return 100.0 * bleu; }
};

/// Corpus-level BLEU-4 against a single reference per hypothesis. Clipped
/// n-gram counts are summed over the corpus before the precisions are formed.
/// add_one adds one to numerator and denominator for n >= 2.
BleuReport bleu(std::span<const Sentence> hypotheses, std::span<const Sentence> references,
                Smoothing smoothing = Smoothing::none);

inline BleuReport bleu(const Corpus& hypotheses, const Corpus& references,
                       Smoothing smoothing = Smoothing::none) {
  return bleu(std::span<const Sentence>(hypotheses.sentences),
              std::span<const Sentence>(references.sentences), smoothing);
}

enum class Side { source, target };

std::string_view to_string(Side side);

struct CoverageReport {
  double token_coverage = 0.0;
  double type_coverage = 0.0;
  Side side = Side::target;
};

// Fractions of corpus token occurrences and distinct types found in `vocab`.
// Throws Error on an empty corpus.
CoverageReport vocab_coverage(const Vocab& vocab, std::span<const Sentence> corpus,
                              Side side = Side::target);

}  // namespace lexaug
