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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexaug/augment.hpp"
#include "lexaug/metrics.hpp"
#include "lexaug/nmt/decode.hpp"
#include "lexaug/nmt/model.hpp"
#include "lexaug/nmt/train.hpp"
#include "lexaug/report.hpp"

namespace lexaug {

enum class Method { none, wow, copy, bt, wow_copy, wow_bt };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct Arm {
  Method method = Method::none;
  std::size_t size = 0;  // monolingual sentences consumed

  // "none", or "<method>-<size>", e.g. "wow+copy-2000". Used as a directory name.
  std::string name() const;
};

// "none" or "<method>:<size>".
Arm parse_arm(std::string_view text);

struct DataPaths {
  std::filesystem::path train_src, train_tgt;
  std::filesystem::path dev_src, dev_tgt;
  std::filesystem::path test_src, test_tgt;
  std::filesystem::path mono;
  std::filesystem::path lexicon;  // target word -> source word
  std::optional<std::filesystem::path> ood_test_src, ood_test_tgt;
  std::string src_lang = "src";
  std::string tgt_lang = "tgt";
  bool lowercase = false;
};

/// One experiment: every arm is trained once per replicate seed.
///
/// INI layout (paths are relative to the config file):
///   [data]   train_src train_tgt dev_src dev_tgt test_src test_tgt mono
///            lexicon [ood_test_src ood_test_tgt] [src_lang tgt_lang lowercase]
///   [arms]   arms = none, wow:1000, copy:1000, bt:1000, wow+copy:2000, wow+bt:2000
///   [model]  embed_dim hidden_dim
///   [train]  batch_size epochs lr_init adam_beta1 adam_beta2 adam_eps
///            grad_clip_norm eval_every
///   [decode] beam_width max_len (integer or "auto") length_normalize
///   [wow]    oov (copy|drop) tie (first|random) seed
///   [vocab]  max_size (integer or "unlimited") min_freq
///   [eval]   smoothing (none|add_one)
///   [run]    seeds = 1, 2, 3
struct ExperimentConfig {
  DataPaths data;
  std::vector<Arm> arms;
  int embed_dim = 64;
  int hidden_dim = 64;
  nmt::TrainConfig train;
  nmt::DecodeConfig decode;
  WowPolicy wow;
  std::optional<std::size_t> vocab_max_size;
  std::size_t vocab_min_freq = 1;
  Smoothing smoothing = Smoothing::add_one;
  std::vector<std::uint64_t> seeds;

  // Checks the structural invariants and that every referenced path exists.
  void validate() const;
};

ExperimentConfig parse_experiment_config(std::string_view ini_text, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

using ExperimentLog = std::function<void(std::string_view)>;

/// Runs every (arm, seed) job in config order and writes
///   <out>/<arm>/<seed>/{checkpoint, dev.hyp, test.hyp, report.tsv, train.log}
/// plus <out>/report.tsv and <out>/report.md. A job whose report.tsv already
/// exists is loaded instead of rerun. A failing job becomes a "failed" row
/// carrying the error message; the remaining jobs still run.
ReportTable run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                           const ExperimentLog& log = {});

}  // namespace lexaug
