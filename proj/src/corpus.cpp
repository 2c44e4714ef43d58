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

#include "lexaug/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lexaug/error.hpp"

namespace lexaug {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed; invalid sequences consume one byte
  bool valid;
};

CodePoint decode_utf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1, true};
  std::size_t length = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, value = lead & 0x1F, min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, value = lead & 0x0F, min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, value = lead & 0x07, min_value = 0x10000;
  } else {
    return {0xFFFD, 1, false};
  }
  if (pos + length > text.size()) return {0xFFFD, 1, false};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) return {0xFFFD, 1, false};
    value = (value << 6) | (cont & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    return {0xFFFD, 1, false};
  }
  return {value, length, true};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_detachable(char32_t cp) {
  switch (cp) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'«': case U'»': case U'"': case U'(': case U')': case U'\'':
      return true;
    default:
      return false;
  }
}

char32_t lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return U'i';
    if (cp == 0x178) return 0xFF;
    const bool even_upper = (cp <= 0x12F) || (cp >= 0x132 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177);
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    if (even_upper && cp % 2 == 0) return cp + 1;
    if (odd_upper && cp % 2 == 1) return cp + 1;
    return cp;
  }
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E || cp == 0x38F) return cp + 63;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  return cp;
}

void emit_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::vector<std::size_t> starts;
  for (std::size_t pos = 0; pos < chunk.size();) {
    starts.push_back(pos);
    pos += decode_utf8(chunk, pos).length;
  }
  const auto cp_at = [&](std::size_t i) { return decode_utf8(chunk, starts[i]).value; };
  const auto end_of = [&](std::size_t i) { return i + 1 < starts.size() ? starts[i + 1] : chunk.size(); };

  std::size_t first = 0;
  std::size_t last = starts.size();  // exclusive
  while (first < last && is_detachable(cp_at(first))) {
    out.emplace_back(chunk.substr(starts[first], end_of(first) - starts[first]));
    ++first;
  }
  std::size_t trailing_begin = last;
  while (trailing_begin > first && is_detachable(cp_at(trailing_begin - 1))) --trailing_begin;
  if (first < trailing_begin) {
    out.emplace_back(chunk.substr(starts[first], starts[trailing_begin - 1] - starts[first] +
                                                     (end_of(trailing_begin - 1) - starts[trailing_begin - 1])));
  }
  for (std::size_t i = trailing_begin; i < last; ++i) {
    out.emplace_back(chunk.substr(starts[i], end_of(i) - starts[i]));
  }
}

bool contains_space(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode_utf8(text, pos);
    if (cp.valid && is_space(cp.value)) return true;
    pos += cp.length;
  }
  return false;
}

Sentence prepare(std::string_view line, const LoadOptions& options) {
  if (options.lowercase) return tokenize(to_lower(line));
  return tokenize(line);
}

void check_utf8(std::string_view line, std::size_t line_no, const std::filesystem::path& path) {
  if (auto bad = find_invalid_utf8(line)) {
    throw Error(path.string() + ":" + std::to_string(line_no) + ": invalid UTF-8 at byte " +
                std::to_string(*bad));
  }
}

}  // namespace

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::parallel: return "parallel";
    case Origin::wow: return "wow";
    case Origin::copy: return "copy";
    case Origin::bt: return "bt";
  }
  return "unknown";
}

Sentence tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t chunk_start = 0;
  bool in_chunk = false;
  for (std::size_t pos = 0; pos < line.size();) {
    const CodePoint cp = decode_utf8(line, pos);
    const bool space = cp.valid && is_space(cp.value);
    if (space && in_chunk) {
      emit_chunk(line.substr(chunk_start, pos - chunk_start), tokens);
      in_chunk = false;
    } else if (!space && !in_chunk) {
      chunk_start = pos;
      in_chunk = true;
    }
    pos += cp.length;
  }
  if (in_chunk) emit_chunk(line.substr(chunk_start), tokens);
  return Sentence(std::move(tokens));
}

std::string join(const Sentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i) out.push_back(' ');
    out += sentence[i];
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode_utf8(text, pos);
    if (cp.valid) {
      append_utf8(out, lower(cp.value));
    } else {
      out.push_back(text[pos]);
    }
    pos += cp.length;
  }
  return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode_utf8(text, pos);
    if (!cp.valid) return pos;
    pos += cp.length;
  }
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("read failed: " + path.string());
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

Corpus load_monolingual(const std::filesystem::path& path, const LoadOptions& options) {
  const std::string text = read_file(path);
  Corpus corpus;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    check_utf8(line, line_no, path);
    Sentence sentence = prepare(line, options);
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

ParallelLoad load_parallel(const std::filesystem::path& src_path,
                           const std::filesystem::path& tgt_path,
                           const LoadOptions& options) {
  const std::string src_text = read_file(src_path);
  const std::string tgt_text = read_file(tgt_path);
  const auto src_lines = split_lines(src_text);
  const auto tgt_lines = split_lines(tgt_text);
  if (src_lines.size() != tgt_lines.size()) {
    throw Error("line count mismatch " + std::to_string(src_lines.size()) + " vs " +
                std::to_string(tgt_lines.size()) + " (" + src_path.string() + ", " +
                tgt_path.string() + ")");
  }
  ParallelLoad result;
  result.pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    check_utf8(src_lines[i], i + 1, src_path);
    check_utf8(tgt_lines[i], i + 1, tgt_path);
    ParallelPair pair{prepare(src_lines[i], options), prepare(tgt_lines[i], options), Origin::parallel};
    if (pair.source.empty() || pair.target.empty()) {
      ++result.dropped;
      continue;
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

void write_sentences(const std::filesystem::path& path, std::span<const Sentence> sentences) {
  std::string text;
  for (const Sentence& s : sentences) {
    text += join(s);
    text.push_back('\n');
  }
  write_file(path, text);
}

std::vector<Sentence> sources(std::span<const ParallelPair> pairs) {
  std::vector<Sentence> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.source);
  return out;
}

std::vector<Sentence> targets(std::span<const ParallelPair> pairs) {
  std::vector<Sentence> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.target);
  return out;
}

// --- Vocab ---------------------------------------------------------------

Vocab::Vocab() : Vocab(std::vector<std::string>{}) {}

Vocab::Vocab(std::vector<std::string> tokens) {
  id_to_token_.reserve(kReservedCount + tokens.size());
  for (std::string_view r : kReserved) id_to_token_.emplace_back(r);
  for (auto& t : tokens) id_to_token_.push_back(std::move(t));
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    const std::string& t = id_to_token_[i];
    if (i >= kReservedCount && (t.empty() || contains_space(t))) {
      throw Error("vocab token '" + t + "' is empty or contains whitespace");
    }
    if (!token_to_id_.emplace(t, static_cast<TokenId>(i)).second) {
      throw Error("duplicate vocab token '" + t + "'");
    }
  }
}

bool Vocab::contains(std::string_view token) const {
  return token_to_id_.count(std::string(token)) > 0;
}

TokenId Vocab::id(std::string_view token) const {
  const auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnk : it->second;
}

const std::string& Vocab::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw Error("token id " + std::to_string(id) + " out of range for vocab of size " +
                std::to_string(id_to_token_.size()));
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

std::vector<TokenId> Vocab::encode(const Sentence& sentence) const {
  std::vector<TokenId> ids;
  ids.reserve(sentence.size());
  for (const auto& t : sentence) ids.push_back(id(t));
  return ids;
}

Sentence Vocab::decode(std::span<const TokenId> ids) const {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (TokenId i : ids) tokens.push_back(token(i));
  return Sentence(std::move(tokens));
}

std::string Vocab::serialize() const {
  std::string out;
  for (const auto& t : id_to_token_) {
    out += t;
    out.push_back('\n');
  }
  return out;
}

Vocab Vocab::parse(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < kReservedCount) throw Error("vocab has fewer than the 4 reserved entries");
  for (std::size_t i = 0; i < kReservedCount; ++i) {
    if (lines[i] != kReserved[i]) {
      throw Error("vocab line " + std::to_string(i + 1) + " must be " + std::string(kReserved[i]));
    }
  }
  std::vector<std::string> tokens(lines.begin() + kReservedCount, lines.end());
  return Vocab(std::move(tokens));
}

void Vocab::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

Vocab Vocab::load(const std::filesystem::path& path) { return parse(read_file(path)); }

Vocab build_vocab(std::span<const Sentence> sentences, std::optional<std::size_t> max_size,
                  std::size_t min_freq) {
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& s : sentences) {
    for (const auto& t : s) ++counts[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [token, count] : counts) {
    if (count < min_freq) continue;
    if (std::find(Vocab::kReserved.begin(), Vocab::kReserved.end(), token) != Vocab::kReserved.end()) {
      continue;
    }
    ranked.emplace_back(token, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (max_size && ranked.size() > *max_size) ranked.resize(*max_size);
  std::vector<std::string> tokens;
  tokens.reserve(ranked.size());
  for (auto& [token, count] : ranked) tokens.push_back(std::move(token));
  return Vocab(std::move(tokens));
}

}  // namespace lexaug
