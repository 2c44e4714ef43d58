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

#include <filesystem>
#include <string>
#include <string_view>

#include "lexaug/nmt/model.hpp"

namespace lexaug::nmt {

// Text container, version 1:
//
//   lexaug-checkpoint 1
//   embed_dim <int>
//   hidden_dim <int>
//   src_vocab_size <int>
//   tgt_vocab_size <int>
//   init_seed <uint64>
//   src_vocab <count>
//   <one token per line, id order>
//   tgt_vocab <count>
//   <one token per line, id order>
//   tensor <name> <rows> <cols>      (repeated, Model::for_each_tensor order)
//   <one row per line, space-separated hexadecimal floats>
//   end
//
// Hexadecimal floats round-trip exactly, so identical models serialize to
// identical bytes on every platform.
std::string serialize_checkpoint(const TranslationModel& model);
TranslationModel parse_checkpoint(std::string_view text);

void save_checkpoint(const std::filesystem::path& path, const TranslationModel& model);
TranslationModel load_checkpoint(const std::filesystem::path& path);

}  // namespace lexaug::nmt
