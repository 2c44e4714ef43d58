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

#include "lexaug/toy_task.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lexaug/error.hpp"
#include "lexaug/ini.hpp"
#include "lexaug/random.hpp"

namespace lexaug {
namespace {

std::string target_word(std::size_t i) { return "t" + std::to_string(i); }
std::string source_word(std::size_t i) { return "s" + std::to_string(i); }

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent, std::size_t rotate) : rotate_(rotate), n_(n) {
    cdf_.reserve(n);
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      total += 1.0 / std::pow(static_cast<double>(k), exponent);
      cdf_.push_back(total);
    }
    for (double& c : cdf_) c /= total;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto rank = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(n_ - 1)));
    return (rank + rotate_) % n_;
  }

 private:
  std::vector<double> cdf_;
  std::size_t rotate_;
  std::size_t n_;
};

}  // namespace

void ToyTaskSpec::validate() const {
  if (vocab_size < 1) throw Error("toy vocab_size must be positive");
  if (min_len < 1 || max_len < min_len) throw Error("toy length range must satisfy 1 <= min_len <= max_len");
  if (!(zipf_exponent > 0.0)) throw Error("toy zipf_exponent must be positive");
  if (train_count == 0 || dev_count == 0 || test_count == 0) {
    throw Error("toy train, dev and test splits must be non-empty");
  }
}

ToyTaskSpec parse_toy_spec(std::string_view ini_text) {
  const Ini ini = Ini::parse(ini_text);
  ini.require_known({"toy"}, {{"toy", {"vocab_size", "train_count", "dev_count", "test_count", "mono_count",
                                        "min_len", "max_len", "reorder_window", "zipf_exponent", "seed",
                                        "ood_mono_count", "ood_test_count", "ood_rank_shift"}}});
  ToyTaskSpec spec;
  spec.vocab_size = ini.get_or("toy", "vocab_size", spec.vocab_size);
  spec.train_count = ini.get_or("toy", "train_count", spec.train_count);
  spec.dev_count = ini.get_or("toy", "dev_count", spec.dev_count);
  spec.test_count = ini.get_or("toy", "test_count", spec.test_count);
  spec.mono_count = ini.get_or("toy", "mono_count", spec.mono_count);
  spec.min_len = ini.get_or("toy", "min_len", spec.min_len);
  spec.max_len = ini.get_or("toy", "max_len", spec.max_len);
  spec.reorder_window = ini.get_or("toy", "reorder_window", spec.reorder_window);
  spec.zipf_exponent = ini.get_or("toy", "zipf_exponent", spec.zipf_exponent);
  spec.seed = ini.get_or("toy", "seed", spec.seed);
  spec.ood_mono_count = ini.get_or("toy", "ood_mono_count", spec.ood_mono_count);
  spec.ood_test_count = ini.get_or("toy", "ood_test_count", spec.ood_test_count);
  spec.ood_rank_shift = ini.get_or("toy", "ood_rank_shift", spec.ood_rank_shift);
  spec.validate();
  return spec;
}

ToyTaskSpec load_toy_spec(const std::filesystem::path& path) { return parse_toy_spec(read_file(path)); }

Sentence reorder_blocks(const Sentence& sentence, std::size_t reorder_window) {
  std::vector<std::string> tokens = sentence.tokens;
  const std::size_t block = reorder_window;
  if (block < 2) return Sentence(std::move(tokens));
  for (std::size_t start = 0; start < tokens.size(); start += block) {
    const std::size_t end = std::min(tokens.size(), start + block);
    std::reverse(tokens.begin() + static_cast<std::ptrdiff_t>(start), tokens.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return Sentence(std::move(tokens));
}

ToyTask generate_toy_task(const ToyTaskSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<std::size_t> mapping(spec.vocab_size);
  for (std::size_t i = 0; i < mapping.size(); ++i) mapping[i] = i;
  rng.shuffle(mapping);

  ToyTask task;
  for (std::size_t i = 0; i < spec.vocab_size; ++i) task.lexicon.add(target_word(i), source_word(mapping[i]));

  const ZipfSampler in_domain(spec.vocab_size, spec.zipf_exponent, 0);
  const ZipfSampler out_of_domain(spec.vocab_size, spec.zipf_exponent, spec.ood_rank_shift % spec.vocab_size);
  std::set<std::vector<std::size_t>> seen;

  // Bounded retries: tiny vocabularies cannot supply unlimited distinct sentences.
  const auto draw = [&](const ZipfSampler& sampler) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const std::size_t len = spec.min_len + rng.below(spec.max_len - spec.min_len + 1);
      std::vector<std::size_t> words(len);
      for (auto& w : words) w = sampler(rng);
      if (seen.insert(words).second) return words;
    }
    throw Error("toy task: cannot draw enough distinct sentences; enlarge vocab_size or the length range");
  };
  const auto make_target = [&](const std::vector<std::size_t>& words) {
    std::vector<std::string> tokens;
    for (auto w : words) tokens.push_back(target_word(w));
    return Sentence(std::move(tokens));
  };
  const auto make_pair = [&](const std::vector<std::size_t>& words) {
    std::vector<std::string> mapped;
    for (auto w : words) mapped.push_back(source_word(mapping[w]));
    return ParallelPair{reorder_blocks(Sentence(std::move(mapped)), spec.reorder_window), make_target(words),
                        Origin::parallel};
  };

  for (std::size_t i = 0; i < spec.train_count; ++i) task.train.push_back(make_pair(draw(in_domain)));
  for (std::size_t i = 0; i < spec.dev_count; ++i) task.dev.push_back(make_pair(draw(in_domain)));
  for (std::size_t i = 0; i < spec.test_count; ++i) task.test.push_back(make_pair(draw(in_domain)));
  for (std::size_t i = 0; i < spec.mono_count; ++i) task.mono.sentences.push_back(make_target(draw(in_domain)));
  for (std::size_t i = 0; i < spec.ood_mono_count; ++i) {
    task.ood_mono.sentences.push_back(make_target(draw(out_of_domain)));
  }
  for (std::size_t i = 0; i < spec.ood_test_count; ++i) task.ood_test.push_back(make_pair(draw(out_of_domain)));
  return task;
}

void write_toy_task(const ToyTask& task, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write_pairs = [&](const std::vector<ParallelPair>& pairs, const std::string& stem) {
    write_sentences(dir / (stem + ".src"), sources(pairs));
    write_sentences(dir / (stem + ".tgt"), targets(pairs));
  };
  write_pairs(task.train, "train");
  write_pairs(task.dev, "dev");
  write_pairs(task.test, "test");
  write_sentences(dir / "mono.tgt", task.mono.sentences);
  std::string lex;
  for (const auto& head : task.lexicon.headwords()) {
    for (const auto& t : task.lexicon.translations(head)) lex += head + ' ' + t + '\n';
  }
  write_file(dir / "lexicon.txt", lex);
  if (!task.ood_mono.empty()) write_sentences(dir / "ood_mono.tgt", task.ood_mono.sentences);
  if (!task.ood_test.empty()) write_pairs(task.ood_test, "ood_test");
}

}  // namespace lexaug
