// tools/rntforge.cc

// Copyright 2026  The rntforge Authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// rntforge: command-line entry point for the transducer transfer-learning
// pipeline. Hyperparameters come from an experiment config file; flags pick
// files, strategies and seeds.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rntforge/data/logmel.h"
#include "rntforge/data/manifest.h"
#include "rntforge/data/stack.h"
#include "rntforge/data/synth-corpus.h"
#include "rntforge/data/wav.h"
#include "rntforge/eval/experiment.h"
#include "rntforge/eval/report.h"
#include "rntforge/eval/wer.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/pretrain/ce-model.h"
#include "rntforge/pretrain/dedup.h"
#include "rntforge/pretrain/lm-model.h"
#include "rntforge/tokenize/bpe.h"
#include "rntforge/tokenize/grapheme.h"
#include "rntforge/transducer/rnnt-trainer.h"
#include "rntforge/transfer/strategy.h"

namespace fs = std::filesystem;
using namespace rntforge;

namespace {

std::vector<std::string> ReadLines(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void WriteLines(const fs::path &path, const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &l : lines) out << l << '\n';
}

// Plain sentences, or decoder output "id<TAB>text<TAB>score".
std::vector<std::string> ReadSentences(const fs::path &path) {
  std::vector<std::string> out;
  for (const auto &line : ReadLines(path)) {
    auto a = line.find('\t');
    auto b = line.rfind('\t');
    if (a != std::string::npos && a != b)
      out.push_back(line.substr(a + 1, b - a - 1));
    else
      out.push_back(Trim(line));
  }
  return out;
}

ExperimentConfig LoadConfig(const std::string &path, std::optional<uint64_t> seed) {
  ExperimentConfig c = path.empty() ? ExperimentConfig{} : ExperimentConfig::Load(path);
  if (seed) c.seed = *seed;
  return c;
}

TrainOptions Seeded(TrainOptions o, uint64_t seed, std::string_view label) {
  o.seed = Rng(seed).Fork(label).NextU64();
  return o;
}

LabelInventory LoadTransducerInventory(const fs::path &labels,
                                       const std::string &merges) {
  return LabelInventory::Load(labels, merges.empty() ? InventoryKind::kGrapheme
                                                     : InventoryKind::kWordpiece);
}

void LogEpoch(const char *what, const EpochRecord &r) {
  std::cerr << what << " epoch " << r.epoch << " loss " << std::fixed
            << std::setprecision(4) << r.loss << '\n';
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"rntforge: RNN-T transfer-learning lab"};
  app.require_subcommand(1);
  std::optional<uint64_t> seed_flag;

  auto add_seed = [&](CLI::App *sub) {
    sub->add_option("--seed", seed_flag, "Random seed (default 42)");
  };

  // synth
  std::string synth_config, synth_out;
  auto *synth = app.add_subcommand("synth", "Generate the synthetic corpus pair");
  synth->add_option("--config", synth_config,
                    "Experiment config; its \"synth\" block is used");
  synth->add_option("--out", synth_out, "Output directory")->required();
  add_seed(synth);

  // features
  std::string wav_path, feat_out;
  bool stacked = false;
  auto *features = app.add_subcommand("features", "Log-mel features of a WAV file");
  features->add_option("--wav", wav_path, "Mono 16-bit PCM input")->required();
  features->add_option("--out", feat_out, "Output checkpoint base path")->required();
  features->add_flag("--stacked", stacked, "Stack 8 frames with shift 3");
  add_seed(features);

  // tokenize
  std::string tok_text, tok_unit = "grapheme", tok_out, tok_config;
  auto *tokenize = app.add_subcommand("tokenize", "Build a label inventory");
  tokenize->add_option("--text", tok_text, "Training text, one sentence per line")
      ->required();
  tokenize->add_option("--unit", tok_unit, "grapheme or wordpiece")
      ->check(CLI::IsMember({"grapheme", "wordpiece"}));
  tokenize->add_option("--config", tok_config,
                       "Experiment config; bpe_merges sets the merge count");
  tokenize->add_option("--out", tok_out, "Output directory")->required();
  add_seed(tokenize);

  // train-ce
  std::string ce_config, ce_data, ce_labels, ce_merges, ce_init, ce_out;
  auto *train_ce = app.add_subcommand("train-ce", "Frame-level CE pretraining");
  train_ce->add_option("--config", ce_config, "Experiment config (model, train.target_ce)");
  train_ce->add_option("--data", ce_data, "Dataset manifest with alignments")->required();
  train_ce->add_option("--labels", ce_labels, "Transducer label inventory")->required();
  train_ce->add_option("--merges", ce_merges, "Merge table for word-piece targets");
  train_ce->add_option("--init", ce_init, "CE checkpoint to start from");
  train_ce->add_option("--out", ce_out, "Output checkpoint base path")->required();
  add_seed(train_ce);

  // train-lm
  std::string lm_config, lm_text, lm_labels, lm_out;
  auto *train_lm = app.add_subcommand("train-lm", "Grapheme LSTM LM pretraining");
  train_lm->add_option("--config", lm_config, "Experiment config (model, train.lm)");
  train_lm->add_option("--text", lm_text, "Text corpus")->required();
  train_lm->add_option("--labels", lm_labels, "Grapheme inventory")->required();
  train_lm->add_option("--out", lm_out, "Output checkpoint base path")->required();
  add_seed(train_lm);

  // train-rnnt
  std::string rn_config, rn_data, rn_labels, rn_merges, rn_init = "random", rn_out;
  std::string rn_source_rnnt, rn_source_ce, rn_target_ce, rn_stage1, rn_lm;
  auto *train_rnnt = app.add_subcommand("train-rnnt", "Train a transducer");
  train_rnnt->add_option("--config", rn_config, "Experiment config (model, train.rnnt)");
  train_rnnt->add_option("--data", rn_data, "Dataset manifest")->required();
  train_rnnt->add_option("--labels", rn_labels, "Transducer label inventory")->required();
  train_rnnt->add_option("--merges", rn_merges, "Merge table for word-piece targets");
  train_rnnt->add_option("--init", rn_init, "Initialization strategy")
      ->check(CLI::IsMember(InitStrategy::AllIds()));
  train_rnnt->add_option("--source-rnnt", rn_source_rnnt, "Source RNN-T checkpoint");
  train_rnnt->add_option("--source-ce", rn_source_ce, "Source CE checkpoint");
  train_rnnt->add_option("--target-ce", rn_target_ce, "Target CE checkpoint");
  train_rnnt->add_option("--stage1-ce", rn_stage1, "Stage-1 CE checkpoint");
  train_rnnt->add_option("--lm", rn_lm, "LM checkpoint");
  train_rnnt->add_option("--out", rn_out, "Output checkpoint base path")->required();
  add_seed(train_rnnt);

  // transplant
  std::string tp_config, tp_labels, tp_merges, tp_source, tp_scope = "encoder", tp_out;
  auto *transplant = app.add_subcommand(
      "transplant", "Copy tensors from a checkpoint into a fresh RNN-T model");
  transplant->add_option("--config", tp_config, "Experiment config (model)");
  transplant->add_option("--labels", tp_labels, "Target label inventory")->required();
  transplant->add_option("--merges", tp_merges, "Marks the inventory as word pieces");
  transplant->add_option("--source", tp_source, "Source checkpoint base path")->required();
  transplant->add_option("--scope", tp_scope,
                         "encoder, prediction, or comma-separated tensor names");
  transplant->add_option("--out", tp_out, "Output checkpoint base path")->required();
  add_seed(transplant);

  // decode
  std::string dec_model, dec_data, dec_out;
  int beam = 4;
  auto *decode = app.add_subcommand("decode", "Beam-search decoding");
  decode->add_option("--model", dec_model, "RNN-T checkpoint base path")->required();
  decode->add_option("--data", dec_data, "Dataset manifest")->required();
  decode->add_option("--beam", beam, "Beam width (default 4)")->check(CLI::PositiveNumber);
  decode->add_option("--out", dec_out, "Output file (default standard output)");
  add_seed(decode);

  // score
  std::string ref_path, hyp_path;
  auto *score = app.add_subcommand("score", "Word error rate");
  score->add_option("--ref", ref_path, "Reference sentences")->required();
  score->add_option("--hyp", hyp_path, "Hypotheses (sentences or decoder output)")
      ->required();
  add_seed(score);

  // experiment
  std::string exp_config, exp_out = "experiment-out";
  auto *experiment = app.add_subcommand("experiment", "Run the strategy matrix");
  experiment->add_option("--config", exp_config, "Experiment config")->required();
  experiment->add_option("--out", exp_out, "Output directory");
  add_seed(experiment);

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*synth) {
      ExperimentConfig cfg = LoadConfig(synth_config, seed_flag);
      SynthCorpus c = GenerateSynthCorpus(cfg.synth, Rng(cfg.seed).Fork("synth").NextU64());
      fs::create_directories(synth_out);
      WriteDataset(synth_out, "source_train", c.source_train);
      WriteDataset(synth_out, "target_train", c.target_train);
      WriteDataset(synth_out, "target_test", c.target_test);
      WriteLines(fs::path(synth_out) / "lm_text.txt", c.lm_text);
      WriteLines(fs::path(synth_out) / "target_lexicon.txt", c.target.vocabulary);
      WriteLines(fs::path(synth_out) / "source_lexicon.txt", c.source.vocabulary);
      std::cout << "wrote " << c.source_train.size() << " source, "
                << c.target_train.size() << " target train, "
                << c.target_test.size() << " target test utterances to "
                << synth_out << '\n';
    } else if (*features) {
      Waveform w = ReadWav(wav_path);
      LogMelOptions opts;
      opts.sample_rate = w.sample_rate;
      Tensor f = ComputeLogMel(w.samples, opts);
      if (stacked) f = StackFrames(f);
      SaveFeatures(f, feat_out);
      std::cout << "features " << f.ShapeString() << " -> " << feat_out << '\n';
    } else if (*tokenize) {
      std::vector<std::string> text = DedupSentences(ReadLines(tok_text));
      fs::create_directories(tok_out);
      if (tok_unit == "grapheme") {
        LabelInventory inv = BuildGraphemeInventory(text);
        inv.Save(fs::path(tok_out) / "labels.txt");
        std::cout << inv.size() << " grapheme labels\n";
      } else {
        ExperimentConfig cfg = LoadConfig(tok_config, seed_flag);
        MergeTable merges = BpeTrain(CountWords(text), cfg.bpe_merges);
        merges.Save(fs::path(tok_out) / "merges.tsv");
        LabelInventory inv = BuildWordpieceInventory(text, merges);
        inv.Save(fs::path(tok_out) / "labels.txt");
        std::cout << merges.size() << " merges, " << inv.size()
                  << " word-piece labels\n";
      }
    } else if (*train_ce) {
      ExperimentConfig cfg = LoadConfig(ce_config, seed_flag);
      LabelInventory inv = LoadTransducerInventory(ce_labels, ce_merges);
      std::optional<MergeTable> merges;
      if (!ce_merges.empty()) merges = MergeTable::Load(ce_merges);
      TargetMode mode{merges ? TargetUnit::kWordpiece : TargetUnit::kGrapheme,
                      merges ? &*merges : nullptr};
      LabelInventory frame = inv.ToFrameInventory();
      std::vector<CeExample> data;
      for (const auto &u : ReadDataset(ce_data))
        data.push_back(MakeCeExample(u, frame, mode));
      std::optional<Checkpoint> init;
      if (!ce_init.empty()) init = LoadCheckpoint(ce_init);
      CeTrainResult r = TrainCe(data, frame, cfg.model.EncoderConfig(),
                                Seeded(cfg.target_ce, cfg.seed, "target-ce"),
                                init ? &*init : nullptr,
                                [](const EpochRecord &e) { LogEpoch("ce", e); });
      SaveCheckpoint(r.checkpoint, ce_out);
      r.log.WriteCsv(ce_out + "_log.csv", false);
      std::cout << "frame accuracy "
                << FrameAccuracy(CeModel::FromCheckpoint(r.checkpoint), data) << '\n';
    } else if (*train_lm) {
      ExperimentConfig cfg = LoadConfig(lm_config, seed_flag);
      LabelInventory inv = LabelInventory::Load(lm_labels, InventoryKind::kGrapheme);
      LmConfig lmc{cfg.model.embedding_dim, cfg.model.prediction_layers,
                   cfg.model.prediction_hidden, cfg.model.prediction_projection};
      std::vector<std::string> text = ReadLines(lm_text);
      LmTrainResult r = TrainLm(text, inv, lmc, Seeded(cfg.lm, cfg.seed, "lm"),
                                [](const EpochRecord &e) { LogEpoch("lm", e); });
      SaveCheckpoint(r.checkpoint, lm_out);
      r.log.WriteCsv(lm_out + "_log.csv", true);
      std::cout << r.unique_sentences << " unique sentences, perplexity "
                << Perplexity(LmModel::FromCheckpoint(r.checkpoint), text) << '\n';
    } else if (*train_rnnt) {
      ExperimentConfig cfg = LoadConfig(rn_config, seed_flag);
      LabelInventory inv = LoadTransducerInventory(rn_labels, rn_merges);
      std::optional<MergeTable> merges;
      if (!rn_merges.empty()) merges = MergeTable::Load(rn_merges);
      std::vector<RnntExample> data = MakeRnntExamples(
          ReadDataset(rn_data), inv, merges ? &*merges : nullptr);
      std::map<std::string, Checkpoint> loaded;
      auto load = [&](const std::string &p) -> const Checkpoint * {
        if (p.empty()) return nullptr;
        return &loaded.emplace(p, LoadCheckpoint(p)).first->second;
      };
      StrategySources src;
      src.source_rnnt = load(rn_source_rnnt);
      src.source_ce = load(rn_source_ce);
      src.target_ce = load(rn_target_ce);
      src.stage1_ce = load(rn_stage1);
      src.lm = load(rn_lm);
      Rng init(Rng(cfg.seed).Fork("rnnt-init").NextU64());
      TransplantResult t = BuildInit(InitStrategy::Parse(rn_init),
                                     {cfg.model, inv}, src, &init);
      std::cerr << t.report.ToText();
      RnntModel model = RnntModel::FromCheckpoint(t.checkpoint);
      TrainLog log = TrainRnnt(&model, data, Seeded(cfg.rnnt, cfg.seed, "rnnt-train"),
                               [](const EpochRecord &e) { LogEpoch("rnnt", e); });
      SaveCheckpoint(model.ToCheckpoint("rnnt"), rn_out);
      log.WriteCsv(rn_out + "_log.csv", false);
      t.report.Save(rn_out + "_transplant");
    } else if (*transplant) {
      ExperimentConfig cfg = LoadConfig(tp_config, seed_flag);
      LabelInventory inv = LoadTransducerInventory(tp_labels, tp_merges);
      Rng rng(cfg.seed);
      Checkpoint fresh = RnntModel::Random(cfg.model, inv, &rng).ToCheckpoint("init");
      Checkpoint source = LoadCheckpoint(tp_source);
      SourceBinding b{fs::path(tp_source).filename().string(), &source,
                      TransplantScope::Parse(tp_scope)};
      TransplantResult r = Transplant(fresh, std::span(&b, 1));
      SaveCheckpoint(r.checkpoint, tp_out);
      r.report.Save(tp_out + "_transplant");
      std::cout << r.report.ToText();
    } else if (*decode) {
      RnntModel model = RnntModel::FromCheckpoint(LoadCheckpoint(dec_model));
      std::vector<Utterance> utts = ReadDataset(dec_data);
      std::vector<RnntExample> ex;
      for (const auto &u : utts) ex.push_back({u.id, StackFrames(u.features), {}, u.transcript});
      std::vector<DecodedUtterance> d = DecodeExamples(model, ex, beam);
      if (dec_out.empty()) {
        for (const auto &x : d)
          std::cout << x.id << '\t' << x.text << '\t' << std::fixed
                    << std::setprecision(6) << x.score << '\n';
      } else {
        WriteDecoded(dec_out, d);
      }
    } else if (*score) {
      WerBreakdown w = ComputeWer(ReadSentences(ref_path), ReadSentences(hyp_path));
      std::cout << "WER " << FormatWer(w.percent()) << " (S=" << w.substitutions
                << " D=" << w.deletions << " I=" << w.insertions
                << " N=" << w.reference_words << ")\n";
    } else if (*experiment) {
      ExperimentConfig cfg = LoadConfig(exp_config, seed_flag);
      ExperimentResult r = RunExperiment(cfg, exp_out, &std::cerr);
      std::ifstream md(fs::path(exp_out) / "report.md");
      std::cout << md.rdbuf();
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
