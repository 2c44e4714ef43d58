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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "lexaug/corpus.hpp"
#include "lexaug/lexicon.hpp"

namespace lexaug {

/// Synthetic language pair. Target sentences draw words t0..t{V-1} with
/// Zipf(zipf_exponent) frequencies by index. The source side maps each word
/// through a seeded bijection onto s0..s{V-1}, then reverses every block of
/// reorder_window positions. Windows 0 and 1 keep the word order; 2 swaps
/// neighbours.
struct ToyTaskSpec {
  std::size_t vocab_size = 200;
  std::size_t train_count = 1000;
  std::size_t dev_count = 200;
  std::size_t test_count = 200;
  std::size_t mono_count = 4000;
  std::size_t min_len = 3;
  std::size_t max_len = 8;
  std::size_t reorder_window = 1;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
  // Out-of-domain material: same mapping, but the Zipf ranks are rotated by
  // ood_rank_shift so frequent out-of-domain words are rare in-domain.
  std::size_t ood_mono_count = 0;
  std::size_t ood_test_count = 0;
  std::size_t ood_rank_shift = 100;

  void validate() const;
};

ToyTaskSpec parse_toy_spec(std::string_view ini_text);
ToyTaskSpec load_toy_spec(const std::filesystem::path& path);

struct ToyTask {
  std::vector<ParallelPair> train;
  std::vector<ParallelPair> dev;
  std::vector<ParallelPair> test;
  Corpus mono;
  Lexicon lexicon{"tgt", "src"};  // exact target -> source mapping
  Corpus ood_mono;
  std::vector<ParallelPair> ood_test;
};

/// Every target sentence across all splits is distinct.
ToyTask generate_toy_task(const ToyTaskSpec& spec);

// Applies the toy reordering rule to a word sequence.
Sentence reorder_blocks(const Sentence& sentence, std::size_t reorder_window);

/// Writes train/dev/test .src/.tgt, mono.tgt, lexicon.txt (MUSE format,
/// target word first) and, when requested, ood_mono.tgt and ood_test.*.
void write_toy_task(const ToyTask& task, const std::filesystem::path& dir);

}  // namespace lexaug
