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

#include "lexaug/experiment.hpp"

#include <sstream>

#include "lexaug/corpus.hpp"
#include "lexaug/error.hpp"
#include "lexaug/ini.hpp"
#include "lexaug/lexicon.hpp"
#include "lexaug/nmt/checkpoint.hpp"
#include "lexaug/random.hpp"

namespace lexaug {
namespace {

namespace fs = std::filesystem;

// Seed streams derived from one replicate seed.
enum Stream : std::uint64_t {
  kInit = 1,
  kShuffle = 2,
  kMix = 3,
  kReverseInit = 4,
  kReverseShuffle = 5,
};

struct LoadedData {
  std::vector<ParallelPair> train;
  std::vector<ParallelPair> dev;
  std::vector<ParallelPair> test;
  std::optional<std::vector<ParallelPair>> ood_test;
  Corpus mono;
  Lexicon lexicon{"", ""};
};

LoadedData load_data(const ExperimentConfig& config) {
  const LoadOptions opts{config.data.lowercase};
  LoadedData d;
  d.train = load_parallel(config.data.train_src, config.data.train_tgt, opts).pairs;
  d.dev = load_parallel(config.data.dev_src, config.data.dev_tgt, opts).pairs;
  d.test = load_parallel(config.data.test_src, config.data.test_tgt, opts).pairs;
  if (config.data.ood_test_src) {
    d.ood_test = load_parallel(*config.data.ood_test_src, *config.data.ood_test_tgt, opts).pairs;
  }
  d.mono = load_monolingual(config.data.mono, opts);
  d.lexicon = load_lexicon(config.data.lexicon, config.data.tgt_lang, config.data.src_lang);
  if (d.train.empty() || d.dev.empty() || d.test.empty()) throw Error("train, dev and test sets must be non-empty");
  return d;
}

Corpus slice(const Corpus& c, std::size_t begin, std::size_t end) {
  Corpus out;
  out.sentences.assign(c.sentences.begin() + static_cast<std::ptrdiff_t>(begin),
                       c.sentences.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

Corpus source_corpus(std::span<const ParallelPair> pairs) { return Corpus{sources(pairs)}; }

nmt::TrainResult fit(std::span<const ParallelPair> train_pairs, std::span<const ParallelPair> dev_pairs,
                     const ExperimentConfig& config, std::uint64_t init_seed, std::uint64_t shuffle_seed,
                     const nmt::TrainLog& log) {
  const auto src = sources(train_pairs);
  const auto tgt = targets(train_pairs);
  nmt::TranslationModel tm{build_vocab(src, config.vocab_max_size, config.vocab_min_freq),
                           build_vocab(tgt, config.vocab_max_size, config.vocab_min_freq), {}};
  nmt::ModelConfig mc;
  mc.embed_dim = config.embed_dim;
  mc.hidden_dim = config.hidden_dim;
  mc.src_vocab_size = static_cast<int>(tm.src_vocab.size());
  mc.tgt_vocab_size = static_cast<int>(tm.tgt_vocab.size());
  mc.init_seed = init_seed;
  tm.model = nmt::init_model(mc);
  nmt::TrainConfig tc = config.train;
  tc.shuffle_seed = shuffle_seed;
  return nmt::train(std::move(tm), train_pairs, dev_pairs, tc, config.decode, log);
}

AugmentResult synthesize(Method method, const Corpus& mono, const LoadedData& data,
                         const ExperimentConfig& config, std::uint64_t seed, const nmt::TrainLog& log) {
  switch (method) {
    case Method::none:
      return {};
    case Method::wow:
      return augment_wow(data.lexicon, mono, config.wow);
    case Method::copy:
      return {augment_copy(mono), 0};
    case Method::bt: {
      const auto rev_train = reversed(data.train);
      const auto rev_dev = reversed(data.dev);
      const nmt::TrainResult reverse =
          fit(rev_train, rev_dev, config, derive_seed(seed, kReverseInit), derive_seed(seed, kReverseShuffle),
              [&](std::string_view line) {
                if (log) log("reverse " + std::string(line));
              });
      return augment_bt(reverse.model, mono, config.decode);
    }
    default:
      throw Error("combination methods are split before synthesis");
  }
}

ReportRow run_job(const ExperimentConfig& config, const LoadedData& data, const Arm& arm, std::uint64_t seed,
                  const fs::path& job_dir, const ExperimentLog& log) {
  ReportRow row;
  row.arm = arm.name();
  row.method = std::string(to_string(arm.method));
  row.synthetic_size = arm.size;
  row.seed = seed;

  if (data.mono.size() < arm.size) {
    throw Error("arm " + arm.name() + " needs " + std::to_string(arm.size) + " monolingual sentences but only " +
                std::to_string(data.mono.size()) + " are available");
  }

  std::string train_log;
  const nmt::TrainLog tlog = [&](std::string_view line) {
    train_log += line;
    train_log += '\n';
    if (log) log(arm.name() + " seed " + std::to_string(seed) + ": " + std::string(line));
  };

  std::vector<std::pair<Method, Corpus>> parts;
  switch (arm.method) {
    case Method::none:
      break;
    case Method::wow_copy:
    case Method::wow_bt: {
      const std::size_t half = (arm.size + 1) / 2;
      parts.emplace_back(Method::wow, slice(data.mono, 0, half));
      parts.emplace_back(arm.method == Method::wow_copy ? Method::copy : Method::bt,
                         slice(data.mono, half, arm.size));
      break;
    }
    default:
      parts.emplace_back(arm.method, slice(data.mono, 0, arm.size));
  }

  MixPlan plan;
  plan.parallel = data.train;
  plan.shuffle_seed = derive_seed(seed, kMix);
  for (const auto& [method, mono] : parts) {
    AugmentResult res = synthesize(method, mono, data, config, seed, tlog);
    row.discarded += res.discarded;
    row.synthetic_pairs += res.pairs.size();
    plan.synthetic_batches.push_back(std::move(res.pairs));
  }
  row.parallel_pairs = plan.parallel.size();
  const std::vector<ParallelPair> training = mix(plan);

  const nmt::TrainResult trained =
      fit(training, data.dev, config, derive_seed(seed, kInit), derive_seed(seed, kShuffle), tlog);
  const nmt::TranslationModel& tm = trained.model;

  fs::create_directories(job_dir);
  const auto evaluate = [&](const std::vector<ParallelPair>& pairs, const std::string& file) {
    const Corpus hyps = nmt::translate_corpus(tm, source_corpus(pairs), config.decode);
    write_sentences(job_dir / file, hyps.sentences);
    return bleu(hyps.sentences, targets(pairs), config.smoothing).score();
  };
  row.dev_bleu = evaluate(data.dev, "dev.hyp");
  row.test_bleu = evaluate(data.test, "test.hyp");
  if (data.ood_test) row.ood_test_bleu = evaluate(*data.ood_test, "ood_test.hyp");
  row.src_coverage = vocab_coverage(tm.src_vocab, sources(data.dev), Side::source).token_coverage;
  row.tgt_coverage = vocab_coverage(tm.tgt_vocab, targets(data.dev), Side::target).token_coverage;

  nmt::save_checkpoint(job_dir / "checkpoint", tm);
  std::ostringstream selected;
  selected << "selected epoch " << trained.report.evaluations[trained.report.selected].epoch << '\n';
  write_file(job_dir / "train.log", train_log + selected.str());
  ReportTable single;
  single.rows.push_back(row);
  write_file(job_dir / "report.tsv", render_table(single, TableFormat::tsv));
  return row;
}

std::optional<ReportRow> load_completed(const fs::path& job_dir) {
  const fs::path report = job_dir / "report.tsv";
  if (!fs::exists(report)) return std::nullopt;
  try {
    const ReportTable t = parse_table_tsv(read_file(report));
    if (t.rows.size() == 1 && t.rows[0].ok) return t.rows[0];
  } catch (const Error&) {
  }
  return std::nullopt;
}

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::none: return "none";
    case Method::wow: return "wow";
    case Method::copy: return "copy";
    case Method::bt: return "bt";
    case Method::wow_copy: return "wow+copy";
    case Method::wow_bt: return "wow+bt";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::none, Method::wow, Method::copy, Method::bt, Method::wow_copy, Method::wow_bt}) {
    if (to_string(m) == text) return m;
  }
  throw Error("unknown augmentation method '" + std::string(text) + "'");
}

std::string Arm::name() const {
  if (method == Method::none) return "none";
  return std::string(to_string(method)) + "-" + std::to_string(size);
}

Arm parse_arm(std::string_view text) {
  const auto colon = text.find(':');
  Arm arm;
  arm.method = parse_method(text.substr(0, colon));
  if (colon == std::string_view::npos) {
    if (arm.method != Method::none) throw Error("arm '" + std::string(text) + "' needs a size, e.g. wow:1000");
    return arm;
  }
  arm.size = Ini::convert<std::size_t>(std::string(text.substr(colon + 1)), "arm size");
  if (arm.method == Method::none && arm.size != 0) throw Error("the none arm takes no monolingual data");
  if (arm.method != Method::none && arm.size == 0) throw Error("arm '" + std::string(text) + "' needs a positive size");
  return arm;
}

void ExperimentConfig::validate() const {
  if (arms.empty()) throw Error("experiment needs at least one arm");
  if (seeds.empty()) throw Error("experiment needs at least one seed");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    for (std::size_t j = i + 1; j < arms.size(); ++j) {
      if (arms[i].name() == arms[j].name()) throw Error("duplicate arm " + arms[i].name());
    }
  }
  if (embed_dim < 1 || hidden_dim < 1) throw Error("model dimensions must be >= 1");
  if (vocab_min_freq < 1) throw Error("vocab min_freq must be >= 1");
  train.validate();
  decode.validate();
  wow.validate();
  if (data.ood_test_src.has_value() != data.ood_test_tgt.has_value()) {
    throw Error("ood_test_src and ood_test_tgt must be given together");
  }
  std::vector<fs::path> paths = {data.train_src, data.train_tgt, data.dev_src, data.dev_tgt,
                                 data.test_src,  data.test_tgt,  data.mono,    data.lexicon};
  if (data.ood_test_src) {
    paths.push_back(*data.ood_test_src);
    paths.push_back(*data.ood_test_tgt);
  }
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw Error("config references missing file " + p.string());
  }
}

ExperimentConfig parse_experiment_config(std::string_view ini_text, const fs::path& base_dir) {
  const Ini ini = Ini::parse(ini_text);
  ini.require_known(
      {"data", "arms", "model", "train", "decode", "wow", "vocab", "eval", "run"},
      {{"data", {"train_src", "train_tgt", "dev_src", "dev_tgt", "test_src", "test_tgt", "mono", "lexicon",
                 "ood_test_src", "ood_test_tgt", "src_lang", "tgt_lang", "lowercase"}},
       {"arms", {"arms"}},
       {"model", {"embed_dim", "hidden_dim"}},
       {"train", {"batch_size", "epochs", "lr_init", "adam_beta1", "adam_beta2", "adam_eps", "grad_clip_norm",
                  "eval_every"}},
       {"decode", {"beam_width", "max_len", "length_normalize"}},
       {"wow", {"oov", "tie", "seed"}},
       {"vocab", {"max_size", "min_freq"}},
       {"eval", {"smoothing"}},
       {"run", {"seeds"}}});

  ExperimentConfig c;
  const auto path = [&](const std::string& key) { return resolve(base_dir, ini.get_string("data", key)); };
  c.data.train_src = path("train_src");
  c.data.train_tgt = path("train_tgt");
  c.data.dev_src = path("dev_src");
  c.data.dev_tgt = path("dev_tgt");
  c.data.test_src = path("test_src");
  c.data.test_tgt = path("test_tgt");
  c.data.mono = path("mono");
  c.data.lexicon = path("lexicon");
  if (ini.has("data", "ood_test_src")) c.data.ood_test_src = path("ood_test_src");
  if (ini.has("data", "ood_test_tgt")) c.data.ood_test_tgt = path("ood_test_tgt");
  c.data.src_lang = ini.get_or<std::string>("data", "src_lang", c.data.src_lang);
  c.data.tgt_lang = ini.get_or<std::string>("data", "tgt_lang", c.data.tgt_lang);
  c.data.lowercase = ini.get_or("data", "lowercase", false);

  for (const auto& item : Ini::split_list(ini.get_string("arms", "arms"))) c.arms.push_back(parse_arm(item));

  c.embed_dim = ini.get_or("model", "embed_dim", c.embed_dim);
  c.hidden_dim = ini.get_or("model", "hidden_dim", c.hidden_dim);

  c.train.batch_size = ini.get_or("train", "batch_size", c.train.batch_size);
  c.train.epochs = ini.get_or("train", "epochs", c.train.epochs);
  c.train.lr_init = ini.get_or("train", "lr_init", c.train.lr_init);
  c.train.adam_beta1 = ini.get_or("train", "adam_beta1", c.train.adam_beta1);
  c.train.adam_beta2 = ini.get_or("train", "adam_beta2", c.train.adam_beta2);
  c.train.adam_eps = ini.get_or("train", "adam_eps", c.train.adam_eps);
  c.train.grad_clip_norm = ini.get_or("train", "grad_clip_norm", c.train.grad_clip_norm);
  c.train.eval_every = ini.get_or("train", "eval_every", c.train.eval_every);

  c.decode.beam_width = ini.get_or("decode", "beam_width", c.decode.beam_width);
  const std::string max_len = ini.get_or<std::string>("decode", "max_len", "auto");
  if (max_len != "auto") c.decode.max_len = Ini::convert<int>(max_len, "decode.max_len");
  c.decode.length_normalize = ini.get_or("decode", "length_normalize", c.decode.length_normalize);

  const std::string oov = ini.get_or<std::string>("wow", "oov", "copy");
  if (oov == "copy") {
    c.wow.oov_mode = OovMode::copy_through;
  } else if (oov == "drop") {
    c.wow.oov_mode = OovMode::drop;
  } else {
    throw Error("wow.oov must be copy or drop");
  }
  const std::string tie = ini.get_or<std::string>("wow", "tie", "first");
  if (tie == "first") {
    c.wow.tie_mode = TieMode::first;
  } else if (tie == "random") {
    c.wow.tie_mode = TieMode::seeded_random;
    c.wow.rng_seed = ini.get_or<std::uint64_t>("wow", "seed", 0);
  } else {
    throw Error("wow.tie must be first or random");
  }

  const std::string max_size = ini.get_or<std::string>("vocab", "max_size", "unlimited");
  if (max_size != "unlimited") c.vocab_max_size = Ini::convert<std::size_t>(max_size, "vocab.max_size");
  c.vocab_min_freq = ini.get_or("vocab", "min_freq", c.vocab_min_freq);

  const std::string smoothing = ini.get_or<std::string>("eval", "smoothing", "add_one");
  if (smoothing == "add_one") {
    c.smoothing = Smoothing::add_one;
  } else if (smoothing == "none") {
    c.smoothing = Smoothing::none;
  } else {
    throw Error("eval.smoothing must be none or add_one");
  }
  c.train.select_smoothing = c.smoothing;

  for (const auto& item : Ini::split_list(ini.get_string("run", "seeds"))) {
    c.seeds.push_back(Ini::convert<std::uint64_t>(item, "run.seeds"));
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  return parse_experiment_config(read_file(path), path.parent_path());
}

ReportTable run_experiment(const ExperimentConfig& config, const fs::path& out_dir, const ExperimentLog& log) {
  config.validate();
  const LoadedData data = load_data(config);
  fs::create_directories(out_dir);
  ReportTable table;
  for (const Arm& arm : config.arms) {
    for (std::uint64_t seed : config.seeds) {
      const fs::path job_dir = out_dir / arm.name() / std::to_string(seed);
      if (auto done = load_completed(job_dir)) {
        if (log) log(arm.name() + " seed " + std::to_string(seed) + ": loaded from " + job_dir.string());
        table.rows.push_back(std::move(*done));
        continue;
      }
      try {
        table.rows.push_back(run_job(config, data, arm, seed, job_dir, log));
      } catch (const std::exception& e) {
        ReportRow failed;
        failed.arm = arm.name();
        failed.method = std::string(to_string(arm.method));
        failed.synthetic_size = arm.size;
        failed.seed = seed;
        failed.ok = false;
        failed.diagnostic = e.what();
        if (log) log(arm.name() + " seed " + std::to_string(seed) + ": FAILED: " + e.what());
        table.rows.push_back(std::move(failed));
      }
    }
  }
  summarize(table);
  write_file(out_dir / "report.tsv", render_table(table, TableFormat::tsv));
  write_file(out_dir / "report.md", render_table(table, TableFormat::markdown));
  return table;
}

}  // namespace lexaug
