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

#include "lexaug/lexicon.hpp"

#include <algorithm>

#include "lexaug/corpus.hpp"
#include "lexaug/error.hpp"

namespace lexaug {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

bool Lexicon::add(std::string_view headword, std::string_view translation) {
  if (headword.empty() || translation.empty()) throw Error("lexicon entries must be non-empty");
  auto [it, inserted] = entries_.try_emplace(std::string(headword));
  if (inserted) headwords_.emplace_back(headword);
  auto& list = it->second;
  if (std::find(list.begin(), list.end(), translation) != list.end()) return false;
  list.emplace_back(translation);
  return true;
}

std::span<const std::string> Lexicon::translations(std::string_view headword) const {
  const auto it = entries_.find(std::string(headword));
  if (it == entries_.end()) return {};
  return it->second;
}

std::span<const std::string> Lexicon::lookup(std::string_view token) const {
  auto found = translations(token);
  if (!found.empty()) return found;
  const std::string lowered = to_lower(token);
  if (lowered == token) return {};
  return translations(lowered);
}

Lexicon load_lexicon(const std::filesystem::path& path, std::string from_lang, std::string to_lang) {
  const std::string text = read_file(path);
  Lexicon lexicon(std::move(from_lang), std::move(to_lang));
  std::size_t malformed = 0;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (auto bad = find_invalid_utf8(line)) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": invalid UTF-8 at byte " +
                  std::to_string(*bad));
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      ++malformed;
      continue;
    }
    lexicon.add(fields[0], fields[1]);
  }
  if (lexicon.empty()) throw Error("lexicon " + path.string() + " has no valid entries");
  lexicon.set_malformed_lines(malformed);
  return lexicon;
}

LexiconStats lexicon_stats(const Lexicon& lexicon) {
  LexiconStats stats;
  stats.headwords = lexicon.size();
  std::size_t total = 0;
  for (const auto& h : lexicon.headwords()) {
    const std::size_t n = lexicon.translations(h).size();
    total += n;
    stats.max_translations = std::max(stats.max_translations, n);
  }
  if (stats.headwords > 0) {
    stats.mean_translations = static_cast<double>(total) / static_cast<double>(stats.headwords);
  }
  return stats;
}

}  // namespace lexaug
