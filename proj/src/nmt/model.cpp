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

#include "lexaug/nmt/model.hpp"

#include <cmath>
#include <string>

#include "lexaug/error.hpp"
#include "lexaug/random.hpp"

namespace lexaug::nmt {
namespace {

bool is_bias(std::string_view name) {
  return name.ends_with(".bias") || name == "out_bias";
}

}  // namespace

void ModelConfig::validate() const {
  if (embed_dim < 1 || hidden_dim < 1) throw Error("model dimensions must be >= 1");
  if (src_vocab_size < 1 || tgt_vocab_size < 1) throw Error("vocabulary sizes must be >= 1");
}

Model Model::zeros(const ModelConfig& config) {
  config.validate();
  const Eigen::Index e = config.embed_dim;
  const Eigen::Index h = config.hidden_dim;
  const Eigen::Index vs = config.src_vocab_size;
  const Eigen::Index vt = config.tgt_vocab_size;
  Model m;
  m.config = config;
  m.src_embed = Matrix::Zero(vs, e);
  m.tgt_embed = Matrix::Zero(vt, e);
  m.encoder = {Matrix::Zero(3 * h, e), Matrix::Zero(2 * h, h), Matrix::Zero(h, h), Matrix::Zero(3 * h, 1)};
  m.decoder = {Matrix::Zero(3 * h, e + h), Matrix::Zero(2 * h, h), Matrix::Zero(h, h), Matrix::Zero(3 * h, 1)};
  m.att_query = Matrix::Zero(h, h);
  m.att_key = Matrix::Zero(h, h);
  m.att_score = Matrix::Zero(h, 1);
  m.out_weight = Matrix::Zero(vt, 2 * h);
  m.out_bias = Matrix::Zero(vt, 1);
  return m;
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for_each_tensor([&](std::string_view, const Matrix& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

bool Model::all_finite() const {
  bool ok = true;
  for_each_tensor([&](std::string_view, const Matrix& t) { ok = ok && t.allFinite(); });
  return ok;
}

Model init_model(const ModelConfig& config) {
  Model m = Model::zeros(config);
  std::uint64_t stream = 0;
  m.for_each_tensor([&](std::string_view name, Matrix& t) {
    ++stream;
    if (is_bias(name)) return;
    const double a = std::sqrt(6.0 / static_cast<double>(t.rows() + t.cols()));
    Rng rng(derive_seed(config.init_seed, stream));
    // Row-major fill so the draw order does not depend on storage order.
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.cols(); ++c) t(r, c) = rng.uniform(-a, a);
    }
  });
  return m;
}

}  // namespace lexaug::nmt
