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

#include "lexaug/metrics.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexaug/error.hpp"

namespace lexaug {
namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(const Sentence& s, std::size_t n) {
  NgramCounts counts;
  if (s.size() < n) return counts;
  for (std::size_t i = 0; i + n <= s.size(); ++i) {
    std::vector<std::string_view> gram;
    gram.reserve(n);
    for (std::size_t k = 0; k < n; ++k) gram.emplace_back(s[i + k]);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

BleuReport bleu(std::span<const Sentence> hypotheses, std::span<const Sentence> references,
                Smoothing smoothing) {
  if (hypotheses.size() != references.size()) {
    throw Error("BLEU needs one reference per hypothesis: " + std::to_string(hypotheses.size()) +
                " hypotheses vs " + std::to_string(references.size()) + " references");
  }
  BleuReport report;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const Sentence& hyp = hypotheses[i];
    const Sentence& ref = references[i];
    report.hypothesis_length += hyp.size();
    report.reference_length += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      const NgramCounts hyp_counts = count_ngrams(hyp, n);
      const NgramCounts ref_counts = count_ngrams(ref, n);
      for (const auto& [gram, count] : hyp_counts) {
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) report.matches[n - 1] += std::min(count, it->second);
      }
      if (hyp.size() >= n) report.totals[n - 1] += hyp.size() - n + 1;
    }
  }

  double log_sum = 0.0;
  bool any_zero = false;
  for (std::size_t k = 0; k < 4; ++k) {
    double num = static_cast<double>(report.matches[k]);
    double den = static_cast<double>(report.totals[k]);
    if (smoothing == Smoothing::add_one && k >= 1) {
      num += 1.0;
      den += 1.0;
    }
    const double p = den > 0.0 ? num / den : 0.0;
    report.precisions[k] = p;
    if (p <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }

  const double h = static_cast<double>(report.hypothesis_length);
  const double r = static_cast<double>(report.reference_length);
  if (h == 0.0) {
    report.brevity_penalty = 0.0;
  } else if (h < r) {
    report.brevity_penalty = std::exp(1.0 - r / h);
  } else {
    report.brevity_penalty = 1.0;
  }
  report.bleu = any_zero ? 0.0 : report.brevity_penalty * std::exp(log_sum / 4.0);
  return report;
}

std::string_view to_string(Side side) { return side == Side::source ? "source" : "target"; }

CoverageReport vocab_coverage(const Vocab& vocab, std::span<const Sentence> corpus, Side side) {
  std::size_t occurrences = 0;
  std::size_t covered = 0;
  std::set<std::string_view> types;
  for (const Sentence& s : corpus) {
    for (const auto& t : s) {
      ++occurrences;
      if (vocab.contains(t)) ++covered;
      types.insert(t);
    }
  }
  if (occurrences == 0) throw Error("coverage of an empty corpus is undefined");
  std::size_t covered_types = 0;
  for (auto t : types) covered_types += vocab.contains(t) ? 1 : 0;
  CoverageReport report;
  report.side = side;
  report.token_coverage = static_cast<double>(covered) / static_cast<double>(occurrences);
  report.type_coverage = static_cast<double>(covered_types) / static_cast<double>(types.size());
  return report;
}

}  // namespace lexaug
