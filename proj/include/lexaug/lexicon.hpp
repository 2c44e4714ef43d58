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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexaug {

/// Bilingual word dictionary: headword in `from_lang` -> distinct
/// translations in `to_lang`, kept in first-seen order.
class Lexicon {
 public:
  Lexicon(std::string from_lang, std::string to_lang)
      : from_lang_(std::move(from_lang)), to_lang_(std::move(to_lang)) {}

  const std::string& from_lang() const { return from_lang_; }
  const std::string& to_lang() const { return to_lang_; }

  // Returns false if the pair was already present.
  bool add(std::string_view headword, std::string_view translation);

  // Exact match first, then the lowercased token if it differs. Empty span
  // when neither is present.
  std::span<const std::string> lookup(std::string_view token) const;

  std::size_t size() const { return headwords_.size(); }
  bool empty() const { return headwords_.empty(); }
  // Headwords in first-seen order.
  const std::vector<std::string>& headwords() const { return headwords_; }
  std::span<const std::string> translations(std::string_view headword) const;

  std::size_t malformed_lines() const { return malformed_lines_; }
  void set_malformed_lines(std::size_t n) { malformed_lines_ = n; }

 private:
  std::string from_lang_;
  std::string to_lang_;
  std::vector<std::string> headwords_;
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::size_t malformed_lines_ = 0;
};

/// Reads the MUSE text format: one "headword translation" pair per line,
/// separated by spaces or tabs. Lines with a field count other than two are
/// counted as malformed and skipped; blank lines are ignored. Throws Error if
/// the file yields no entries.
Lexicon load_lexicon(const std::filesystem::path& path, std::string from_lang, std::string to_lang);

struct LexiconStats {
  std::size_t headwords = 0;
  double mean_translations = 0.0;
  std::size_t max_translations = 0;
};

LexiconStats lexicon_stats(const Lexicon& lexicon);

}  // namespace lexaug
