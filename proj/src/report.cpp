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

#include "lexaug/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "lexaug/corpus.hpp"
#include "lexaug/error.hpp"

namespace lexaug {
namespace {

constexpr std::string_view kHeader =
    "arm\tmethod\tsynthetic_size\tseed\tstatus\tparallel_pairs\tsynthetic_pairs\tdiscarded\t"
    "train_pairs\tdev_bleu\ttest_bleu\tood_test_bleu\tsrc_coverage\ttgt_coverage\tdiagnostic";
constexpr std::size_t kColumns = 15;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "-"; }

std::string clean(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find('\t', start);
    if (end == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

template <typename T>
T parse_num(std::string_view text, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error("report line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

std::optional<double> parse_opt(std::string_view text, std::size_t line_no) {
  if (text == "-") return std::nullopt;
  return parse_num<double>(text, line_no);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string experiment_label(const ArmSummary& s) {
  if (s.method == "none") return "parallel";
  std::string label = "+ " + std::to_string(s.synthetic_size) + " ";
  std::string method = s.method;
  for (char& c : method) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (method.starts_with("WOW")) method.replace(0, 3, "WoW");
  return label + method;
}

}  // namespace

const ArmSummary* ReportTable::summary(std::string_view arm) const {
  for (const auto& m : means) {
    if (m.arm == arm) return &m;
  }
  return nullptr;
}

void summarize(ReportTable& table) {
  table.means.clear();
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    auto [it, inserted] = index.try_emplace(row.arm, table.means.size());
    if (inserted) {
      ArmSummary s;
      s.arm = row.arm;
      s.method = row.method;
      s.synthetic_size = row.synthetic_size;
      table.means.push_back(s);
    }
    if (!row.ok) continue;
    ArmSummary& s = table.means[it->second];
    ++s.seeds_ok;
    s.train_pairs += static_cast<double>(row.train_pairs());
    s.dev_bleu += row.dev_bleu;
    s.test_bleu += row.test_bleu;
    if (row.ood_test_bleu) s.ood_test_bleu = s.ood_test_bleu.value_or(0.0) + *row.ood_test_bleu;
    s.src_coverage += row.src_coverage;
    s.tgt_coverage += row.tgt_coverage;
  }
  for (auto& s : table.means) {
    if (s.seeds_ok == 0) continue;
    const double n = static_cast<double>(s.seeds_ok);
    s.train_pairs /= n;
    s.dev_bleu /= n;
    s.test_bleu /= n;
    if (s.ood_test_bleu) *s.ood_test_bleu /= n;
    s.src_coverage /= n;
    s.tgt_coverage /= n;
  }
}

std::string render_table(const ReportTable& table, TableFormat format) {
  std::string out;
  if (format == TableFormat::tsv) {
    out += kHeader;
    out += '\n';
    for (const auto& r : table.rows) {
      out += r.arm + '\t' + r.method + '\t' + std::to_string(r.synthetic_size) + '\t' + std::to_string(r.seed) +
             '\t' + (r.ok ? "ok" : "failed") + '\t' + std::to_string(r.parallel_pairs) + '\t' +
             std::to_string(r.synthetic_pairs) + '\t' + std::to_string(r.discarded) + '\t' +
             std::to_string(r.train_pairs()) + '\t' + num(r.dev_bleu) + '\t' + num(r.test_bleu) + '\t' +
             opt_num(r.ood_test_bleu) + '\t' + num(r.src_coverage) + '\t' + num(r.tgt_coverage) + '\t' +
             clean(r.diagnostic) + '\n';
    }
    for (const auto& s : table.means) {
      out += s.arm + '\t' + s.method + '\t' + std::to_string(s.synthetic_size) + "\tmean\t" +
             (s.seeds_ok ? "ok" : "failed") + '\t' + std::to_string(s.seeds_ok) + "\t-\t-\t" + num(s.train_pairs) +
             '\t' + num(s.dev_bleu) + '\t' + num(s.test_bleu) + '\t' + opt_num(s.ood_test_bleu) + '\t' +
             num(s.src_coverage) + '\t' + num(s.tgt_coverage) + "\t\n";
    }
    return out;
  }

  bool with_ood = false;
  for (const auto& s : table.means) with_ood = with_ood || s.ood_test_bleu.has_value();
  out += "| experiment | dev BLEU | test BLEU |";
  if (with_ood) out += " out-of-domain BLEU |";
  out += " src coverage | tgt coverage | seeds |\n";
  out += "|---|---|---|";
  if (with_ood) out += "---|";
  out += "---|---|---|\n";
  for (const auto& s : table.means) {
    out += "| " + experiment_label(s) + " | ";
    if (s.seeds_ok == 0) {
      out += "failed | failed |";
      if (with_ood) out += " failed |";
      out += " - | - | 0 |\n";
      continue;
    }
    out += fixed(s.dev_bleu, 2) + " | " + fixed(s.test_bleu, 2) + " |";
    if (with_ood) out += " " + (s.ood_test_bleu ? fixed(*s.ood_test_bleu, 2) : std::string("-")) + " |";
    out += " " + fixed(100.0 * s.src_coverage, 1) + "% | " + fixed(100.0 * s.tgt_coverage, 1) + "% | " +
           std::to_string(s.seeds_ok) + " |\n";
  }
  return out;
}

ReportTable parse_table_tsv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kHeader) throw Error("report: missing or unexpected header");
  ReportTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto c = split_tabs(lines[i]);
    if (c.size() != kColumns) {
      throw Error("report line " + std::to_string(line_no) + ": expected " + std::to_string(kColumns) + " columns");
    }
    if (c[3] == "mean") {
      ArmSummary s;
      s.arm = c[0];
      s.method = c[1];
      s.synthetic_size = parse_num<std::size_t>(c[2], line_no);
      s.seeds_ok = parse_num<std::size_t>(c[5], line_no);
      s.train_pairs = parse_num<double>(c[8], line_no);
      s.dev_bleu = parse_num<double>(c[9], line_no);
      s.test_bleu = parse_num<double>(c[10], line_no);
      s.ood_test_bleu = parse_opt(c[11], line_no);
      s.src_coverage = parse_num<double>(c[12], line_no);
      s.tgt_coverage = parse_num<double>(c[13], line_no);
      table.means.push_back(std::move(s));
      continue;
    }
    ReportRow r;
    r.arm = c[0];
    r.method = c[1];
    r.synthetic_size = parse_num<std::size_t>(c[2], line_no);
    r.seed = parse_num<std::uint64_t>(c[3], line_no);
    if (c[4] != "ok" && c[4] != "failed") throw Error("report line " + std::to_string(line_no) + ": bad status");
    r.ok = c[4] == "ok";
    r.parallel_pairs = parse_num<std::size_t>(c[5], line_no);
    r.synthetic_pairs = parse_num<std::size_t>(c[6], line_no);
    r.discarded = parse_num<std::size_t>(c[7], line_no);
    r.dev_bleu = parse_num<double>(c[9], line_no);
    r.test_bleu = parse_num<double>(c[10], line_no);
    r.ood_test_bleu = parse_opt(c[11], line_no);
    r.src_coverage = parse_num<double>(c[12], line_no);
    r.tgt_coverage = parse_num<double>(c[13], line_no);
    r.diagnostic = c[14];
    table.rows.push_back(std::move(r));
  }
  return table;
}

}  // namespace lexaug
