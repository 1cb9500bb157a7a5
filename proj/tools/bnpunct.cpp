// Copyright 2026 The bnpunct Authors
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

// bnpunct: punctuation restoration pipeline.
//
//   bnpunct synth     --out corpus.tsv --tokens 20000 --seed 1
//   bnpunct prepare   raw.txt --out corpus.tsv
//   bnpunct train-bpe --config run.cfg --out bpe.txt
//   bnpunct augment   --config run.cfg --input train.tsv --out train.aug.tsv
//   bnpunct train     --config run.cfg --out run/
//   bnpunct evaluate  --config run.cfg --out eval/
//   bnpunct restore   --config run.cfg input.txt
//   bnpunct ablate    --config run.cfg --out ablation/
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
// failure, 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bnpunct/ablate.hpp"
#include "bnpunct/augment.hpp"
#include "bnpunct/checkpoint.hpp"
#include "bnpunct/config.hpp"
#include "bnpunct/corpus.hpp"
#include "bnpunct/kernels.hpp"
#include "bnpunct/restore.hpp"
#include "bnpunct/subword.hpp"
#include "bnpunct/train.hpp"

namespace fs = std::filesystem;
using namespace bnpunct;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigFailure = 2,
  kDataFailure = 3,
  kNumericFailure = 4,
};

struct CommonFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "flat key=value config file (overrides flags)");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--out", flags.out, "output path or directory");
}

// Defaults, then flags, then the config file.
RunConfig resolve(const CLI::App* cmd, const CommonFlags& flags,
                  std::map<std::string, std::string> kv = {}) {
  if (cmd->count("--seed")) kv["seed"] = std::to_string(flags.seed);
  if (cmd->count("--out")) kv["out"] = flags.out;
  if (!flags.config.empty()) {
    for (auto& [k, v] : load_key_values(flags.config)) kv[k] = v;
  }
  return apply_config(RunConfig{}, kv);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

void require(const fs::path& p, const char* key) {
  if (p.empty()) throw ConfigError(std::string("missing required setting '") + key + "'");
}

BpeModel bpe_for(const RunConfig& cfg, const std::vector<Document>& train_docs) {
  if (!cfg.bpe_path.empty() && fs::exists(cfg.bpe_path)) return load_bpe(cfg.bpe_path);
  return train_bpe(train_docs, cfg.num_merges);
}

Checkpoint checked_checkpoint(const RunConfig& cfg, const BpeModel& bpe) {
  require(cfg.checkpoint_path, "checkpoint");
  Checkpoint ck = load_checkpoint(cfg.checkpoint_path);
  if (ck.meta.vocab_hash != bpe.vocab_hash() || ck.params.dims.vocab != bpe.vocab_size()) {
    throw DataError("checkpoint " + cfg.checkpoint_path.string() +
                    " was not trained with BPE model " + cfg.bpe_path.string());
  }
  return ck;
}

int cmd_synth(const CommonFlags& flags, std::size_t tokens, const std::vector<double>& priors) {
  if (flags.out.empty()) throw ConfigError("synth needs --out");
  ClassPriors p = kDefaultPriors;
  if (!priors.empty()) {
    if (priors.size() != kNumClasses) throw ConfigError("--priors needs 5 values (O,PERIOD,COMMA,QUESTION,EXCLAMATION)");
    std::copy(priors.begin(), priors.end(), p.begin());
  }
  const auto docs = generate_synthetic(flags.seed, tokens, p);
  save_tsv(docs, flags.out);
  std::cout << format_stats(stats(docs)) << '\n';
  return kOk;
}

int cmd_prepare(const std::string& input, const CommonFlags& flags) {
  if (flags.out.empty()) throw ConfigError("prepare needs --out");
  const std::string raw = read_file(input);
  std::vector<Document> docs;
  // One document per non-empty paragraph (blank-line separated).
  std::istringstream in(raw);
  std::string line, para;
  auto flush = [&] {
    Document d = parse_labeled(normalize_text(para));
    if (!d.tokens.empty()) {
      d.id = std::to_string(docs.size());
      docs.push_back(std::move(d));
    }
    para.clear();
  };
  while (std::getline(in, line)) {
    if (normalize_text(line).empty()) {
      flush();
    } else {
      para += line;
      para += '\n';
    }
  }
  flush();
  save_tsv(docs, flags.out);
  std::cout << format_stats(stats(docs)) << '\n';
  return kOk;
}

int cmd_train_bpe(const RunConfig& cfg) {
  require(cfg.train_path, "train");
  require(cfg.out_dir, "out");
  const auto docs = load_tsv(cfg.train_path);
  const BpeModel bpe = train_bpe(docs, cfg.num_merges);
  save_bpe(bpe, cfg.out_dir);
  std::cout << "merges=" << bpe.merges().size() << " vocab=" << bpe.vocab_size() << '\n';
  return kOk;
}

int cmd_augment(const RunConfig& cfg, const std::string& input) {
  require(cfg.bpe_path, "bpe");
  require(cfg.out_dir, "out");
  const fs::path in_path = input.empty() ? cfg.train_path : fs::path(input);
  require(in_path, "train");
  const auto docs = load_tsv(in_path);
  const BpeModel bpe = load_bpe(cfg.bpe_path);
  std::vector<PieceStream> streams;
  for (const auto& d : docs) streams.push_back(to_piece_stream(bpe, d));
  AugmentTally tally;
  const auto augmented = augment_dataset(streams, cfg.augment_config(cfg.alpha), &tally);
  std::ostringstream os;
  for (const auto& s : augmented) {
    for (const auto& p : s) os << bpe.piece(p.id) << '\t' << label_name(p.label) << '\n';
    os << '\n';
  }
  write_file(cfg.out_dir, os.str());
  std::cout << "kept=" << tally.kept << " substituted=" << tally.substituted
            << " deleted=" << tally.deleted << " inserted=" << tally.inserted << '\n';
  return kOk;
}

int cmd_train(const RunConfig& cfg) {
  require(cfg.train_path, "train");
  require(cfg.dev_path, "dev");
  require(cfg.out_dir, "out");
  const auto train_docs = load_tsv(cfg.train_path);
  const auto dev_docs = load_tsv(cfg.dev_path);
  const BpeModel bpe = bpe_for(cfg, train_docs);
  fs::create_directories(cfg.out_dir);
  save_bpe(bpe, cfg.out_dir / "bpe.txt");

  const std::optional<double> alpha =
      cfg.alpha > 0.0 ? std::optional<double>(cfg.alpha) : std::nullopt;
  const TrainConfig tc = cfg.train_config(alpha);
  std::cerr << "kernels: " << kernels::active().name << '\n';
  const TrainResult tr = train(train_docs, dev_docs, bpe, tc, [](const EpochRecord& e, const ModelParams&) {
    std::cerr << "epoch " << e.epoch << " loss " << e.train_loss << " dev micro-F1 "
              << e.dev.micro.f1 << " (" << e.wall_seconds << " s)\n";
    return true;
  });

  CheckpointMeta meta;
  meta.vocab_hash = bpe.vocab_hash();
  meta.config = cfg.echo();
  if (tr.history.selected) {
    meta.epoch = tr.history.epochs[*tr.history.selected].epoch;
    meta.dev_score = selection_metric(tr.history.epochs[*tr.history.selected].dev);
  }
  save_checkpoint(tr.best, meta, cfg.out_dir / "model.ckpt");
  write_file(cfg.out_dir / "history.tsv", format_history(tr.history));
  if (tr.diverged) {
    std::cerr << "training diverged: " << tr.divergence << "; kept the last selected model\n";
    return kNumericFailure;
  }
  if (tr.history.selected) {
    std::cout << "selected epoch " << meta.epoch << " dev micro-F1 " << meta.dev_score << '\n';
    std::cout << format_report(tr.history.epochs[*tr.history.selected].dev);
  }
  return kOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  require(cfg.bpe_path, "bpe");
  if (cfg.test_paths.empty()) throw ConfigError("missing required setting 'test'");
  const BpeModel bpe = load_bpe(cfg.bpe_path);
  const Checkpoint ck = checked_checkpoint(cfg, bpe);
  std::vector<AblationEntry> entries;
  for (const auto& [name, path] : cfg.test_paths) {
    const auto docs = load_tsv(path);
    const auto windows = eval_windows(docs, bpe, cfg.train.seq_len);
    entries.push_back({"model", name, evaluate(ck.params, windows)});
    const EvalReport& r = entries.back().report;
    std::cout << "== " << name << " ==\n"
              << format_report(r) << "confusion (counts)\n"
              << format_confusion(r, false) << "confusion (row %)\n"
              << format_confusion(r, true);
    if (!cfg.out_dir.empty()) {
      write_file(cfg.out_dir / (name + ".report.tsv"), format_report_delimited(r));
      write_file(cfg.out_dir / (name + ".confusion.txt"),
                 format_confusion(r, false) + "\n" + format_confusion(r, true));
    }
  }
  if (!cfg.out_dir.empty()) {
    write_file(cfg.out_dir / "summary.txt", ablation_text(entries));
    write_file(cfg.out_dir / "summary.tsv", ablation_delimited(entries));
  }
  return kOk;
}

int cmd_restore(const RunConfig& cfg, const std::string& input) {
  require(cfg.bpe_path, "bpe");
  const BpeModel bpe = load_bpe(cfg.bpe_path);
  const Checkpoint ck = checked_checkpoint(cfg, bpe);
  RestoreRequest req{read_file(input), cfg.train.seq_len, cfg.stride};
  const std::string text = restore_text(bpe, ck.params, req);
  if (!cfg.out_dir.empty()) {
    write_file(cfg.out_dir, text + "\n");
  } else {
    std::cout << text << '\n';
  }
  return kOk;
}

int cmd_ablate(const RunConfig& cfg) {
  require(cfg.train_path, "train");
  require(cfg.dev_path, "dev");
  require(cfg.out_dir, "out");
  if (cfg.test_paths.empty()) throw ConfigError("missing required setting 'test'");
  AblationData data;
  data.train = load_tsv(cfg.train_path);
  data.dev = load_tsv(cfg.dev_path);
  for (const auto& [name, path] : cfg.test_paths) data.tests.emplace_back(name, load_tsv(path));
  const AblationResult result = run_ablation(data, cfg, cfg.out_dir);
  std::cout << ablation_text(result.entries);
  for (const auto& f : result.failures) std::cerr << "cell failed: " << f << '\n';
  return result.failures.empty() ? kOk : kNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Punctuation restoration: corpus prep, BPE, augmentation, BiLSTM tagger"};
  app.require_subcommand(1);

  CommonFlags synth_flags, prepare_flags, bpe_flags, aug_flags, train_flags, eval_flags,
      restore_flags, ablate_flags;
  std::size_t synth_tokens = 20000;
  std::vector<double> synth_priors;
  std::string prepare_input, aug_input, restore_input, bpe_train;
  std::size_t bpe_merges = kDefaultNumMerges;

  auto* synth = app.add_subcommand("synth", "write a synthetic labeled corpus (TSV)");
  add_common(synth, synth_flags);
  synth->add_option("--tokens", synth_tokens, "number of tokens");
  synth->add_option("--priors", synth_priors, "O PERIOD COMMA QUESTION EXCLAMATION priors")->delimiter(',');

  auto* prepare = app.add_subcommand("prepare", "normalize punctuated text and write the TSV corpus");
  add_common(prepare, prepare_flags);
  prepare->add_option("input", prepare_input, "raw text file")->required();

  auto* train_bpe_cmd = app.add_subcommand("train-bpe", "learn BPE merges from a TSV corpus");
  add_common(train_bpe_cmd, bpe_flags);
  train_bpe_cmd->add_option("--train", bpe_train, "training TSV");
  train_bpe_cmd->add_option("--num-merges", bpe_merges, "number of merges");

  auto* augment = app.add_subcommand("augment", "write an augmented piece stream");
  add_common(augment, aug_flags);
  augment->add_option("--input", aug_input, "TSV corpus (defaults to 'train')");

  auto* train_cmd = app.add_subcommand("train", "train the BiLSTM tagger");
  add_common(train_cmd, train_flags);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a checkpoint on test splits");
  add_common(evaluate_cmd, eval_flags);

  auto* restore = app.add_subcommand("restore", "punctuate raw text");
  add_common(restore, restore_flags);
  restore->add_option("input", restore_input, "text file")->required();

  auto* ablate = app.add_subcommand("ablate", "train and evaluate the augmentation grid");
  add_common(ablate, ablate_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigFailure;
  }

  try {
    if (*synth) return cmd_synth(synth_flags, synth_tokens, synth_priors);
    if (*prepare) return cmd_prepare(prepare_input, prepare_flags);
    if (*train_bpe_cmd) {
      std::map<std::string, std::string> kv;
      if (!bpe_train.empty()) kv["train"] = bpe_train;
      if (train_bpe_cmd->count("--num-merges")) kv["num_merges"] = std::to_string(bpe_merges);
      return cmd_train_bpe(resolve(train_bpe_cmd, bpe_flags, kv));
    }
    if (*augment) return cmd_augment(resolve(augment, aug_flags), aug_input);
    if (*train_cmd) return cmd_train(resolve(train_cmd, train_flags));
    if (*evaluate_cmd) return cmd_evaluate(resolve(evaluate_cmd, eval_flags));
    if (*restore) return cmd_restore(resolve(restore, restore_flags), restore_input);
    if (*ablate) return cmd_ablate(resolve(ablate, ablate_flags));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataFailure;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
