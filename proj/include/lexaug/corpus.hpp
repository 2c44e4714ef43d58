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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexaug {

// A tokenized sentence. Tokens are non-empty and contain no whitespace.
struct Sentence {
  std::vector<std::string> tokens;

  Sentence() = default;
  explicit Sentence(std::vector<std::string> toks) : tokens(std::move(toks)) {}
  Sentence(std::initializer_list<std::string> toks) : tokens(toks) {}

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  auto begin() const { return tokens.begin(); }
  auto end() const { return tokens.end(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }

  friend auto operator<=>(const Sentence&, const Sentence&) = default;
};

enum class Origin { parallel, wow, copy, bt };

std::string_view to_string(Origin origin);

struct ParallelPair {
  Sentence source;
  Sentence target;
  Origin origin = Origin::parallel;

  friend auto operator<=>(const ParallelPair&, const ParallelPair&) = default;
};

// Sentences in file order.
struct Corpus {
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct LoadOptions {
  bool lowercase = false;
};

/// Splits on Unicode whitespace, then peels leading and trailing punctuation
/// characters off each chunk as single-character tokens. Case is preserved.
Sentence tokenize(std::string_view line);

// Space-joined rendering; tokenize(join(s)) == s.
std::string join(const Sentence& sentence);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters;
// everything else passes through unchanged.
std::string to_lower(std::string_view text);

// Position of the first invalid UTF-8 byte, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

/// One Sentence per non-empty line. Throws Error on I/O failure or invalid
/// UTF-8 (the message carries the 1-based line number). CRLF is accepted.
Corpus load_monolingual(const std::filesystem::path& path, const LoadOptions& options = {});

struct ParallelLoad {
  std::vector<ParallelPair> pairs;
  std::size_t dropped = 0;  // lines where either side tokenized to nothing
};

ParallelLoad load_parallel(const std::filesystem::path& src_path,
                           const std::filesystem::path& tgt_path,
                           const LoadOptions& options = {});

// Writes one space-joined sentence per line, LF endings.
void write_sentences(const std::filesystem::path& path, std::span<const Sentence> sentences);

std::vector<Sentence> sources(std::span<const ParallelPair> pairs);
std::vector<Sentence> targets(std::span<const ParallelPair> pairs);

using TokenId = std::int32_t;

/// Token <-> id bijection. Ids 0..3 are reserved for pad, unk, bos and eos;
/// corpus tokens follow densely from 4.
class Vocab {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kBos = 2;
  static constexpr TokenId kEos = 3;
  static constexpr std::size_t kReservedCount = 4;
  static constexpr std::array<std::string_view, kReservedCount> kReserved = {
      "<pad>", "<unk>", "<s>", "</s>"};

  Vocab();
  // `tokens` are the non-reserved entries in id order. Throws on duplicates,
  // reserved names, or tokens that break the Sentence invariant.
  explicit Vocab(std::vector<std::string> tokens);

  std::size_t size() const { return id_to_token_.size(); }
  bool contains(std::string_view token) const;
  // kUnk for unknown tokens.
  TokenId id(std::string_view token) const;
  const std::string& token(TokenId id) const;

  std::vector<TokenId> encode(const Sentence& sentence) const;
  Sentence decode(std::span<const TokenId> ids) const;

  // One token per line in id order, reserved tokens first.
  std::string serialize() const;
  static Vocab parse(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.id_to_token_ == b.id_to_token_; }

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
};

/// Keeps tokens with frequency >= min_freq, ordered by (frequency desc,
/// token asc), truncated to max_size non-reserved entries.
Vocab build_vocab(std::span<const Sentence> sentences,
                  std::optional<std::size_t> max_size = std::nullopt,
                  std::size_t min_freq = 1);

// File helpers shared by the loaders.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
// Splits on LF, stripping a trailing CR from each line. A final newline does
// not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace lexaug
