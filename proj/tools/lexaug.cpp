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


// lexaug command-line interface.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lexaug/augment.hpp"
#include "lexaug/corpus.hpp"
#include "lexaug/error.hpp"
#include "lexaug/experiment.hpp"
#include "lexaug/lexicon.hpp"
#include "lexaug/metrics.hpp"
#include "lexaug/nmt/checkpoint.hpp"
#include "lexaug/nmt/decode.hpp"
#include "lexaug/nmt/train.hpp"
#include "lexaug/toy_task.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lexaug;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct DecodeFlags {
  int beam_width = 5;
  int max_len = 0;  // 0: automatic
  bool no_length_normalize = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--beam-width", beam_width, "Beam width")->check(CLI::PositiveNumber);
    cmd->add_option("--max-len", max_len, "Maximum output length (0: 2 x source length + 5)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-length-normalize", no_length_normalize, "Rank hypotheses by raw log-probability");
  }
  nmt::DecodeConfig config() const {
    nmt::DecodeConfig c;
    c.beam_width = beam_width;
    if (max_len > 0) c.max_len = max_len;
    c.length_normalize = !no_length_normalize;
    return c;
  }
};

struct LexiconStatsCmd {
  std::string path;
  std::string from = "tgt";
  std::string to = "src";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("lexicon-stats", "Print headwords, mean and max translations (TSV)");
    cmd->add_option("path", path, "Lexicon file")->required();
    cmd->add_option("--from", from, "Headword language label");
    cmd->add_option("--to", to, "Translation language label");
    cmd->callback([this] { run(); });
  }
  void run() const {
    const Lexicon lex = load_lexicon(path, from, to);
    const LexiconStats s = lexicon_stats(lex);
    std::cout << s.headwords << '\t' << num(s.mean_translations) << '\t' << s.max_translations << '\n';
    if (lex.malformed_lines() > 0) std::cerr << "skipped " << lex.malformed_lines() << " malformed lines\n";
  }
};

struct AugmentCmd {
  std::string method;
  std::string mono;
  std::string lexicon;
  std::string model;
  std::string oov = "copy";
  std::string tie = "first";
  std::optional<std::uint64_t> seed;
  std::string out_src;
  std::string out_tgt;
  bool lowercase = false;
  DecodeFlags decode;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("augment", "Build synthetic parallel data from target-side text");
    cmd->add_option("--method", method, "wow, copy or bt")->required()->check(CLI::IsMember({"wow", "copy", "bt"}));
    cmd->add_option("--mono", mono, "Target-language monolingual text")->required()->check(CLI::ExistingFile);
    cmd->add_option("--lexicon", lexicon, "Target->source lexicon (wow)")->check(CLI::ExistingFile);
    cmd->add_option("--model", model, "Target->source checkpoint (bt)")->check(CLI::ExistingFile);
    cmd->add_option("--oov", oov, "Out-of-lexicon words: copy or drop")->check(CLI::IsMember({"copy", "drop"}));
    cmd->add_option("--tie", tie, "Translation choice: first or random")->check(CLI::IsMember({"first", "random"}));
    cmd->add_option("--seed", seed, "Seed for --tie random");
    cmd->add_option("--out-src", out_src, "Synthetic source output")->required();
    cmd->add_option("--out-tgt", out_tgt, "Target output, aligned by line")->required();
    cmd->add_flag("--lowercase", lowercase, "Lowercase the monolingual text");
    decode.add(cmd);
    cmd->callback([this] { run(); });
  }
  void run() const {
    const Corpus corpus = load_monolingual(mono, {.lowercase = lowercase});
    AugmentResult result;
    if (method == "wow") {
      if (lexicon.empty()) throw Error("--method wow needs --lexicon");
      WowPolicy policy;
      policy.oov_mode = oov == "drop" ? OovMode::drop : OovMode::copy_through;
      if (tie == "random") {
        policy.tie_mode = TieMode::seeded_random;
        policy.rng_seed = seed.value_or(0);
      } else if (seed) {
        throw Error("--seed only applies with --tie random");
      }
      result = augment_wow(load_lexicon(lexicon, "tgt", "src"), corpus, policy);
    } else if (method == "copy") {
      result.pairs = augment_copy(corpus);
    } else {
      if (model.empty()) throw Error("--method bt needs --model");
      result = augment_bt(nmt::load_checkpoint(model), corpus, decode.config());
    }
    write_sentences(out_src, sources(result.pairs));
    write_sentences(out_tgt, targets(result.pairs));
    std::cerr << result.pairs.size() << " pairs written, " << result.discarded << " discarded\n";
  }
};

struct VocabCmd {
  std::string corpus;
  std::string out;
  std::size_t max_size = 0;
  std::size_t min_freq = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("vocab", "Build a vocabulary file from a corpus");
    cmd->add_option("--corpus", corpus, "Text file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Vocabulary output")->required();
    cmd->add_option("--max-size", max_size, "Keep at most this many tokens (0: unlimited)");
    cmd->add_option("--min-freq", min_freq, "Minimum token frequency")->check(CLI::PositiveNumber);
    cmd->callback([this] { run(); });
  }
  void run() const {
    const Corpus c = load_monolingual(corpus);
    const std::optional<std::size_t> cap = max_size > 0 ? std::optional(max_size) : std::nullopt;
    build_vocab(c.sentences, cap, min_freq).save(out);
  }
};

struct TrainCmd {
  std::string train_src, train_tgt, dev_src, dev_tgt, out, log_path;
  nmt::ModelConfig model;
  nmt::TrainConfig train;
  DecodeFlags decode;
  std::size_t max_vocab = 0;
  std::size_t min_freq = 1;
  bool lowercase = false;
  bool quiet = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Train a translation model and save the selected checkpoint");
    cmd->add_option("--train-src", train_src)->required()->check(CLI::ExistingFile);
    cmd->add_option("--train-tgt", train_tgt)->required()->check(CLI::ExistingFile);
    cmd->add_option("--dev-src", dev_src)->required()->check(CLI::ExistingFile);
    cmd->add_option("--dev-tgt", dev_tgt)->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Checkpoint path")->required();
    cmd->add_option("--embed-dim", model.embed_dim)->check(CLI::PositiveNumber);
    cmd->add_option("--hidden-dim", model.hidden_dim)->check(CLI::PositiveNumber);
    cmd->add_option("--init-seed", model.init_seed);
    cmd->add_option("--batch-size", train.batch_size)->check(CLI::PositiveNumber);
    cmd->add_option("--epochs", train.epochs)->check(CLI::PositiveNumber);
    cmd->add_option("--lr-init", train.lr_init);
    cmd->add_option("--adam-beta1", train.adam_beta1);
    cmd->add_option("--adam-beta2", train.adam_beta2);
    cmd->add_option("--adam-eps", train.adam_eps);
    cmd->add_option("--grad-clip-norm", train.grad_clip_norm);
    cmd->add_option("--eval-every", train.eval_every)->check(CLI::PositiveNumber);
    cmd->add_option("--shuffle-seed", train.shuffle_seed);
    cmd->add_option("--max-vocab", max_vocab, "Vocabulary cap per side (0: unlimited)");
    cmd->add_option("--min-freq", min_freq)->check(CLI::PositiveNumber);
    cmd->add_option("--log", log_path, "Also write the training log here");
    cmd->add_flag("--lowercase", lowercase);
    cmd->add_flag("--quiet", quiet, "No per-epoch progress on stderr");
    decode.add(cmd);
    cmd->callback([this] { run(); });
  }
  void run() {
    const LoadOptions opts{.lowercase = lowercase};
    const auto train_set = load_parallel(train_src, train_tgt, opts);
    const auto dev_set = load_parallel(dev_src, dev_tgt, opts);
    const std::optional<std::size_t> cap = max_vocab > 0 ? std::optional(max_vocab) : std::nullopt;
    nmt::TranslationModel tm;
    tm.src_vocab = build_vocab(sources(train_set.pairs), cap, min_freq);
    tm.tgt_vocab = build_vocab(targets(train_set.pairs), cap, min_freq);
    model.src_vocab_size = static_cast<int>(tm.src_vocab.size());
    model.tgt_vocab_size = static_cast<int>(tm.tgt_vocab.size());
    tm.model = nmt::init_model(model);
    std::string log_text;
    const auto result = nmt::train(std::move(tm), train_set.pairs, dev_set.pairs, train, decode.config(),
                                   [&](std::string_view line) {
                                     if (!quiet) std::cerr << line << '\n';
                                     log_text += line;
                                     log_text += '\n';
                                   });
    nmt::save_checkpoint(out, result.model);
    const auto& sel = result.report.evaluations[result.report.selected];
    std::cerr << "selected epoch " << sel.epoch << " dev BLEU " << num(sel.dev_bleu) << '\n';
    if (!log_path.empty()) write_file(log_path, log_text);
  }
};

struct TranslateCmd {
  std::string model, input, output;
  bool lowercase = false;
  DecodeFlags decode;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("translate", "Beam-search decode a file with a checkpoint");
    cmd->add_option("--model", model, "Checkpoint")->required()->check(CLI::ExistingFile);
    cmd->add_option("--input", input, "Source text")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", output, "Hypotheses (default: stdout)");
    cmd->add_flag("--lowercase", lowercase);
    decode.add(cmd);
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto tm = nmt::load_checkpoint(model);
    // Blank lines are kept so the output stays aligned with the input.
    Corpus src;
    for (auto line : split_lines(read_file(input))) {
      src.sentences.push_back(tokenize(lowercase ? to_lower(line) : std::string(line)));
    }
    const Corpus hyps = nmt::translate_corpus(tm, src, decode.config());
    if (output.empty()) {
      for (const auto& s : hyps.sentences) std::cout << join(s) << '\n';
    } else {
      write_sentences(output, hyps.sentences);
    }
  }
};

struct BleuCmd {
  std::string hyp, ref;
  bool smooth = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("bleu", "Corpus BLEU-4: bleu p1 p2 p3 p4 bp hyp_len ref_len (TSV)");
    cmd->add_option("--hyp", hyp)->required()->check(CLI::ExistingFile);
    cmd->add_option("--ref", ref)->required()->check(CLI::ExistingFile);
    cmd->add_flag("--smooth", smooth, "Add-one smoothing for n >= 2");
    cmd->callback([this] { run(); });
  }
  void run() const {
    // Line-aligned: empty hypotheses count as empty sentences.
    auto load = [](const std::string& path) {
      std::vector<Sentence> out;
      for (auto line : split_lines(read_file(path))) out.push_back(tokenize(line));
      return out;
    };
    const BleuReport r = bleu(load(hyp), load(ref), smooth ? Smoothing::add_one : Smoothing::none);
    std::cout << num(r.bleu);
    for (double p : r.precisions) std::cout << '\t' << num(p);
    std::cout << '\t' << num(r.brevity_penalty) << '\t' << r.hypothesis_length << '\t' << r.reference_length << '\n';
  }
};

struct CoverageCmd {
  std::string vocab, corpus;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("coverage", "Token and type coverage of a corpus by a vocabulary (TSV)");
    cmd->add_option("--vocab", vocab)->required()->check(CLI::ExistingFile);
    cmd->add_option("--corpus", corpus)->required()->check(CLI::ExistingFile);
    cmd->callback([this] { run(); });
  }
  void run() const {
    const CoverageReport r = vocab_coverage(Vocab::load(vocab), load_monolingual(corpus).sentences);
    std::cout << num(r.token_coverage) << '\t' << num(r.type_coverage) << '\n';
  }
};

struct ExperimentCmd {
  std::string config, out;
  bool quiet = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("experiment", "Run every arm and seed of an experiment config");
    cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Run directory")->required();
    cmd->add_flag("--quiet", quiet);
    cmd->callback([this] { run(); });
  }
  void run() const {
    const ReportTable t = run_experiment(load_experiment_config(config), out, [&](std::string_view line) {
      if (!quiet) std::cerr << line << '\n';
    });
    std::cout << render_table(t, TableFormat::markdown);
  }
};

struct ToygenCmd {
  std::string spec, out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("toygen", "Write a synthetic language pair with its exact lexicon");
    cmd->add_option("--spec", spec, "INI file with a [toy] section")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output directory")->required();
    cmd->callback([this] { run(); });
  }
  void run() const { write_toy_task(generate_toy_task(load_toy_spec(spec)), out); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dictionary-based data augmentation for neural machine translation"};
  app.require_subcommand(1);
  LexiconStatsCmd lexicon_stats_cmd;
  AugmentCmd augment_cmd;
  VocabCmd vocab_cmd;
  TrainCmd train_cmd;
  TranslateCmd translate_cmd;
  BleuCmd bleu_cmd;
  CoverageCmd coverage_cmd;
  ExperimentCmd experiment_cmd;
  ToygenCmd toygen_cmd;
  lexicon_stats_cmd.add(app);
  augment_cmd.add(app);
  vocab_cmd.add(app);
  train_cmd.add(app);
  translate_cmd.add(app);
  bleu_cmd.add(app);
  coverage_cmd.add(app);
  experiment_cmd.add(app);
  toygen_cmd.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "lexaug: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
