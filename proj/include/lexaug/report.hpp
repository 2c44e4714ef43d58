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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexaug {

struct ReportRow {
  std::string arm;
  std::string method;
  std::size_t synthetic_size = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::size_t parallel_pairs = 0;
  std::size_t synthetic_pairs = 0;
  std::size_t discarded = 0;
  double dev_bleu = 0.0;   // x100
  double test_bleu = 0.0;  // x100
  std::optional<double> ood_test_bleu;
  double src_coverage = 0.0;  // dev-set token coverage
  double tgt_coverage = 0.0;
  std::string diagnostic;

  std::size_t train_pairs() const { return parallel_pairs + synthetic_pairs; }
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Mean over the successful seeds of one arm.
struct ArmSummary {
  std::string arm;
  std::string method;
  std::size_t synthetic_size = 0;
  std::size_t seeds_ok = 0;
  double train_pairs = 0.0;
  double dev_bleu = 0.0;
  double test_bleu = 0.0;
  std::optional<double> ood_test_bleu;
  double src_coverage = 0.0;
  double tgt_coverage = 0.0;

  friend bool operator==(const ArmSummary&, const ArmSummary&) = default;
};

struct ReportTable {
  std::vector<ReportRow> rows;     // arm-major, seeds in config order
  std::vector<ArmSummary> means;   // one per arm, config order

  const ArmSummary* summary(std::string_view arm) const;
  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

// Recomputes `means` from `rows`, keeping first-appearance order of arms.
void summarize(ReportTable& table);

enum class TableFormat { tsv, markdown };

/// TSV: header plus one line per row, then one "mean" line per arm. Numbers
/// use the shortest round-trip representation, so parse_table_tsv inverts it.
/// Markdown: one line per arm mean, laid out like a results table.
std::string render_table(const ReportTable& table, TableFormat format);

ReportTable parse_table_tsv(std::string_view text);

}  // namespace lexaug
