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

#include "lexaug/nmt/checkpoint.hpp"

#include <charconv>
#include <vector>

#include "lexaug/error.hpp"

namespace lexaug::nmt {
namespace {

constexpr std::string_view kMagic = "lexaug-checkpoint 1";

void append_double(std::string& out, double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::hex);
  out.append(buf, res.ptr);
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : lines_(split_lines(text)) {}

  std::string_view next() {
    if (pos_ >= lines_.size()) throw Error("checkpoint truncated after line " + std::to_string(pos_));
    return lines_[pos_++];
  }

  std::size_t line_no() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("checkpoint line " + std::to_string(pos_) + ": " + what);
  }

  // Reads "<key> <value>" and returns value.
  std::string_view field(std::string_view key) {
    const std::string_view line = next();
    if (!line.starts_with(key) || line.size() <= key.size() || line[key.size()] != ' ') {
      fail("expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  }

  template <typename T>
  T number(std::string_view text) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) fail("bad number '" + std::string(text) + "'");
    return value;
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

void write_vocab(std::string& out, std::string_view key, const Vocab& vocab) {
  out += key;
  out += ' ';
  out += std::to_string(vocab.size());
  out += '\n';
  out += vocab.serialize();
}

Vocab read_vocab(LineReader& in, std::string_view key) {
  const auto count = in.number<std::size_t>(in.field(key));
  std::string body;
  for (std::size_t i = 0; i < count; ++i) {
    body += in.next();
    body += '\n';
  }
  return Vocab::parse(body);
}

}  // namespace

std::string serialize_checkpoint(const TranslationModel& tm) {
  const ModelConfig& c = tm.model.config;
  std::string out;
  out += kMagic;
  out += '\n';
  out += "embed_dim " + std::to_string(c.embed_dim) + '\n';
  out += "hidden_dim " + std::to_string(c.hidden_dim) + '\n';
  out += "src_vocab_size " + std::to_string(c.src_vocab_size) + '\n';
  out += "tgt_vocab_size " + std::to_string(c.tgt_vocab_size) + '\n';
  out += "init_seed " + std::to_string(c.init_seed) + '\n';
  write_vocab(out, "src_vocab", tm.src_vocab);
  write_vocab(out, "tgt_vocab", tm.tgt_vocab);
  tm.model.for_each_tensor([&](std::string_view name, const Matrix& t) {
    out += "tensor ";
    out += name;
    out += ' ' + std::to_string(t.rows()) + ' ' + std::to_string(t.cols()) + '\n';
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      for (Eigen::Index col = 0; col < t.cols(); ++col) {
        if (col) out += ' ';
        append_double(out, t(r, col));
      }
      out += '\n';
    }
  });
  out += "end\n";
  return out;
}

TranslationModel parse_checkpoint(std::string_view text) {
  LineReader in(text);
  if (in.next() != kMagic) in.fail("not a lexaug checkpoint (version 1)");
  ModelConfig c;
  c.embed_dim = in.number<int>(in.field("embed_dim"));
  c.hidden_dim = in.number<int>(in.field("hidden_dim"));
  c.src_vocab_size = in.number<int>(in.field("src_vocab_size"));
  c.tgt_vocab_size = in.number<int>(in.field("tgt_vocab_size"));
  c.init_seed = in.number<std::uint64_t>(in.field("init_seed"));
  TranslationModel tm{read_vocab(in, "src_vocab"), read_vocab(in, "tgt_vocab"), Model::zeros(c)};
  if (tm.src_vocab.size() != static_cast<std::size_t>(c.src_vocab_size) ||
      tm.tgt_vocab.size() != static_cast<std::size_t>(c.tgt_vocab_size)) {
    in.fail("vocabulary sizes disagree with the model config");
  }
  tm.model.for_each_tensor([&](std::string_view name, Matrix& t) {
    const std::string header = "tensor " + std::string(name) + ' ' + std::to_string(t.rows()) + ' ' +
                               std::to_string(t.cols());
    if (in.next() != header) in.fail("expected '" + header + "'");
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      const std::string_view line = in.next();
      const char* p = line.data();
      const char* end = line.data() + line.size();
      for (Eigen::Index col = 0; col < t.cols(); ++col) {
        while (p < end && *p == ' ') ++p;
        double value = 0.0;
        const auto res = std::from_chars(p, end, value, std::chars_format::hex);
        if (res.ec != std::errc()) in.fail("bad tensor value in " + std::string(name));
        t(r, col) = value;
        p = res.ptr;
      }
      if (p != end) in.fail("trailing data in " + std::string(name));
    }
  });
  if (in.next() != "end") in.fail("expected 'end'");
  return tm;
}

void save_checkpoint(const std::filesystem::path& path, const TranslationModel& model) {
  write_file(path, serialize_checkpoint(model));
}

TranslationModel load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(read_file(path));
}

}  // namespace lexaug::nmt
