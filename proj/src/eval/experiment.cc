// src/eval/experiment.cc

// Copyright 2026  The rntforge Authors

// See ../../COPYING for clarification regarding multiple authors
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

#include "rntforge/eval/experiment.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "rntforge/data/alignment.h"
#include "rntforge/eval/report.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/pretrain/ce-model.h"
#include "rntforge/pretrain/lm-model.h"
#include "rntforge/tokenize/bpe.h"
#include "rntforge/tokenize/grapheme.h"
#include "rntforge/transducer/rnnt-trainer.h"
#include "rntforge/transfer/strategy.h"

namespace rntforge {

namespace fs = std::filesystem;
using nlohmann::json;

TrainOptions TrainOptionsFromJson(const json &j) {
  TrainOptions o;
  if (!j.is_object()) throw ConfigError("training options must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &k = it.key();
    const json &v = *it;
    try {
      if (k == "epochs") {
        o.epochs = v.get<int>();
      } else if (k == "batch_size") {
        o.batch_size = v.get<int>();
      } else if (k == "epoch_examples") {
        o.epoch_examples = v.get<int>();
      } else if (k == "learning_rate") {
        o.optimizer.learning_rate = v.get<double>();
      } else if (k == "clip_norm") {
        o.optimizer.clip_norm = v.get<double>();
      } else if (k == "halve_on_plateau") {
        o.halve_on_plateau = v.get<bool>();
      } else if (k == "optimizer") {
        std::string m = v.get<std::string>();
        if (m == "adam")
          o.optimizer.method = OptimizerOptions::Method::kAdam;
        else if (m == "sgd")
          o.optimizer.method = OptimizerOptions::Method::kSgd;
        else
          throw ConfigError("unknown optimizer '" + m + "'");
      } else {
        throw ConfigError("unknown training option '" + k + "'");
      }
    } catch (const json::exception &e) {
      throw ConfigError("training option '" + k + "': " + e.what());
    }
  }
  if (o.epochs < 0 || o.batch_size <= 0 || o.epoch_examples < 0 ||
      !(o.optimizer.learning_rate > 0))
    throw ConfigError("training options out of range");
  return o;
}

json TrainOptionsToJson(const TrainOptions &o) {
  return {{"epochs", o.epochs},
          {"batch_size", o.batch_size},
          {"epoch_examples", o.epoch_examples},
          {"learning_rate", o.optimizer.learning_rate},
          {"optimizer", o.optimizer.method == OptimizerOptions::Method::kAdam
                            ? "adam"
                            : "sgd"},
          {"clip_norm", o.optimizer.clip_norm},
          {"halve_on_plateau", o.halve_on_plateau}};
}

ExperimentConfig ExperimentConfig::FromJson(const json &j) {
  ExperimentConfig c;
  if (!j.is_object()) throw ConfigError("experiment config must be an object");
  static const std::set<std::string> kTrainBlocks = {
      "source_ce", "source_rnnt", "target_ce", "stage1", "lm", "rnnt"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &k = it.key();
    const json &v = *it;
    try {
      if (k == "seed") {
        c.seed = v.get<uint64_t>();
      } else if (k == "synth") {
        c.synth = SynthSpec::FromJson(v);
      } else if (k == "model") {
        c.model = RnntConfig::FromJson(v);
      } else if (k == "source_units") {
        c.source_units = v.get<std::string>();
      } else if (k == "bpe_merges") {
        c.bpe_merges = v.get<int>();
      } else if (k == "source_rnnt_init") {
        c.source_rnnt_init = v.get<std::string>();
      } else if (k == "train") {
        for (auto t = v.begin(); t != v.end(); ++t) {
          if (!kTrainBlocks.count(t.key()))
            throw ConfigError("unknown training block '" + t.key() + "'");
          TrainOptions o = TrainOptionsFromJson(*t);
          if (t.key() == "source_ce") c.source_ce = o;
          if (t.key() == "source_rnnt") c.source_rnnt = o;
          if (t.key() == "target_ce") c.target_ce = o;
          if (t.key() == "stage1") c.stage1 = o;
          if (t.key() == "lm") c.lm = o;
          if (t.key() == "rnnt") c.rnnt = o;
        }
      } else if (k == "strategies") {
        c.strategies = v.get<std::vector<std::string>>();
      } else if (k == "fractions") {
        c.fractions = v.get<std::vector<double>>();
      } else if (k == "scaling_strategies") {
        c.scaling_strategies = v.get<std::vector<std::string>>();
      } else if (k == "beam_width") {
        c.beam_width = v.get<int>();
      } else if (k == "max_symbols_per_frame") {
        c.decode.max_symbols_per_frame = v.get<int>();
      } else {
        throw ConfigError("unknown experiment config key '" + k + "'");
      }
    } catch (const json::exception &e) {
      throw ConfigError("experiment config '" + k + "': " + e.what());
    }
  }
  if (c.source_units != "wordpiece" && c.source_units != "grapheme")
    throw ConfigError("source_units must be 'wordpiece' or 'grapheme'");
  if (c.source_rnnt_init != "random" && c.source_rnnt_init != "source-ce")
    throw ConfigError("source_rnnt_init must be 'random' or 'source-ce'");
  if (c.strategies.empty()) throw ConfigError("no strategies configured");
  for (const auto &s : c.strategies) InitStrategy::Parse(s);
  for (const auto &s : c.scaling_strategies) {
    InitStrategy st = InitStrategy::Parse(s);
    // The LM sees only the text corpus, never the transcribed target set.
    if (st.kind == StrategyKind::kTwoStage ||
        (st.kind == StrategyKind::kCePlusLm && st.ce_source == CeEncoderSource::kTargetCe))
      throw ConfigError("scaling strategy " + s +
                        " depends on target-data pretraining; only random and "
                        "source-* strategies can be swept");
  }
  for (double f : c.fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw ConfigError("data fractions must lie in (0, 1]");
  if (!c.fractions.empty() && c.scaling_strategies.empty())
    throw ConfigError("fractions configured without scaling strategies");
  if (c.beam_width < 1) throw ConfigError("beam width must be at least 1");
  if (c.decode.max_symbols_per_frame < 1)
    throw ConfigError("max_symbols_per_frame must be at least 1");
  return c;
}

ExperimentConfig ExperimentConfig::Load(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return FromJson(j);
}

json ExperimentConfig::ToJson() const {
  return {{"seed", seed},
          {"synth", synth.ToJson()},
          {"model", model.ToJson()},
          {"source_units", source_units},
          {"bpe_merges", bpe_merges},
          {"source_rnnt_init", source_rnnt_init},
          {"train",
           {{"source_ce", TrainOptionsToJson(source_ce)},
            {"source_rnnt", TrainOptionsToJson(source_rnnt)},
            {"target_ce", TrainOptionsToJson(target_ce)},
            {"stage1", TrainOptionsToJson(stage1)},
            {"lm", TrainOptionsToJson(lm)},
            {"rnnt", TrainOptionsToJson(rnnt)}}},
          {"strategies", strategies},
          {"fractions", fractions},
          {"scaling_strategies", scaling_strategies},
          {"beam_width", beam_width},
          {"max_symbols_per_frame", decode.max_symbols_per_frame}};
}

uint64_t DeriveSeed(uint64_t seed, std::string_view label) {
  return Rng(seed).Fork(label).NextU64();
}

void ComputeWerr(std::vector<StrategyReport> *rows) {
  std::map<double, double> baseline;
  for (const auto &r : *rows)
    if (r.ok && r.strategy == "random") baseline[r.fraction] = r.wer.percent();
  for (auto &r : *rows) {
    auto it = baseline.find(r.fraction);
    r.has_werr = r.ok && it != baseline.end() && it->second > 0.0;
    r.werr = r.has_werr ? Werr(it->second, r.wer.percent()) : 0.0;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}


std::vector<double> Losses(const TrainLog &log) {
  std::vector<double> out;
  for (const auto &e : log.epochs) out.push_back(e.loss);
  return out;
}

std::vector<std::string> Transcripts(const std::vector<Utterance> &utts) {
  std::vector<std::string> out;
  for (const auto &u : utts) out.push_back(u.transcript);
  return out;
}

std::string FractionTag(double f) {
  std::ostringstream os;
  os << "fraction-" << std::setw(3) << std::setfill('0')
     << static_cast<int>(std::lround(f * 100.0));
  return os.str();
}

// Everything the strategy rows share: data, inventories and pretrained
// checkpoints.
struct Workspace {
  const ExperimentConfig &config;
  fs::path out;
  std::ostream *log;
  std::ofstream timing;

  SynthCorpus corpus;
  LabelInventory target_inventory;
  LabelInventory source_inventory;
  MergeTable merges;
  std::vector<RnntExample> target_train;
  std::vector<RnntExample> target_test;

  std::optional<Checkpoint> source_ce, source_rnnt, target_ce, lm;
  std::map<StageOneTargets, Checkpoint> stage1;
  std::vector<PretrainSummary> pretrain;

  Workspace(const ExperimentConfig &c, fs::path o, std::ostream *l)
      : config(c), out(std::move(o)), log(l) {}

  void Say(const std::string &msg) {
    if (log) *log << msg << std::endl;
  }
  void Time(const std::string &what, double seconds) {
    timing << what << '\t' << std::fixed << std::setprecision(2) << seconds
           << '\n';
    if (log)
      *log << "  " << what << " took " << std::fixed << std::setprecision(1)
           << seconds << " s" << std::endl;
  }

  TrainOptions Options(const TrainOptions &base, std::string_view label) const {
    TrainOptions o = base;
    o.seed = DeriveSeed(config.seed, label);
    return o;
  }

  std::function<void(const EpochRecord &)> Progress(const std::string &what) {
    return [this, what](const EpochRecord &r) {
      if (log)
        *log << "  " << what << " epoch " << r.epoch << " loss " << std::fixed
             << std::setprecision(4) << r.loss << std::endl;
    };
  }

  const MergeTable *SourceMerges() const {
    return config.source_units == "wordpiece" ? &merges : nullptr;
  }

  void SaveLog(const TrainLog &tl, const std::string &name, bool ppl) {
    tl.WriteCsv(out / "pretrain" / (name + "_log.csv"), ppl);
  }

  void PrepareData() {
    Say("generating synthetic corpus");
    corpus = GenerateSynthCorpus(config.synth, DeriveSeed(config.seed, "synth"));
    target_inventory = BuildGraphemeInventory(corpus.target.vocabulary);
    if (config.source_units == "wordpiece") {
      merges = BpeTrain(CountWords(Transcripts(corpus.source_train)),
                        config.bpe_merges);
      source_inventory =
          BuildWordpieceInventory(Transcripts(corpus.source_train), merges);
      merges.Save(out / "source_merges.tsv");
    } else {
      source_inventory = BuildGraphemeInventory(corpus.source.vocabulary);
    }
    target_inventory.Save(out / "target_graphemes.txt");
    source_inventory.Save(out / "source_labels.txt");
    target_train = MakeRnntExamples(corpus.target_train, target_inventory);
    target_test = MakeRnntExamples(corpus.target_test, target_inventory);
  }

  std::vector<CeExample> SourceCeData() const {
    LabelInventory frame = source_inventory.ToFrameInventory();
    TargetMode mode{config.source_units == "wordpiece" ? TargetUnit::kWordpiece
                                                       : TargetUnit::kGrapheme,
                    SourceMerges()};
    std::vector<CeExample> out;
    for (const auto &u : corpus.source_train)
      out.push_back(MakeCeExample(u, frame, mode));
    return out;
  }

  std::vector<CeExample> TargetCeData() const {
    LabelInventory frame = target_inventory.ToFrameInventory();
    std::vector<CeExample> out;
    for (const auto &u : corpus.target_train)
      out.push_back(MakeCeExample(u, frame, TargetMode{}));
    return out;
  }

  // Acoustic prototype classes as externally supplied frame labels.
  LabelInventory PrototypeInventory() const {
    std::vector<std::string> labels = {std::string(kSilenceSymbol)};
    for (int k = 0; k < corpus.silence_prototype(); ++k) {
      std::ostringstream os;
      os << "proto" << std::setw(2) << std::setfill('0') << k;
      labels.push_back(os.str());
    }
    return LabelInventory(labels, InventoryKind::kFrame);
  }

  std::vector<CeExample> TargetPrototypeData() const {
    std::vector<CeExample> out;
    const int sil = corpus.silence_prototype();
    for (const auto &u : corpus.target_train) {
      std::vector<int> frames = RenderPrototypeFrames(
          corpus, corpus.target, u.transcript, config.synth.word_gap_frames,
          config.synth.edge_frames);
      for (int &f : frames) f = (f == sil) ? 0 : f + 1;
      out.push_back(MakeCeExampleFromFrameLabels(u, frames));
    }
    return out;
  }

  void TrainSourceCe() {
    Say("pretraining source CE model");
    auto t0 = Clock::now();
    std::vector<CeExample> data = SourceCeData();
    CeTrainResult r = TrainCe(data, source_inventory.ToFrameInventory(),
                              config.model.EncoderConfig(),
                              Options(config.source_ce, "source-ce"), nullptr,
                              Progress("source CE"));
    r.checkpoint.meta.attributes["language"] = "source";
    SaveCheckpoint(r.checkpoint, out / "pretrain" / "source_ce");
    SaveLog(r.log, "source_ce", false);
    double acc = FrameAccuracy(CeModel::FromCheckpoint(r.checkpoint), data);
    pretrain.push_back({"source-ce", "frame accuracy (train)", acc, Losses(r.log)});
    source_ce = std::move(r.checkpoint);
    Time("source CE", Seconds(t0));
  }

  void TrainSourceRnnt() {
    Say("pretraining source RNN-T model");
    auto t0 = Clock::now();
    std::vector<RnntExample> data =
        MakeRnntExamples(corpus.source_train, source_inventory, SourceMerges());
    Rng init(DeriveSeed(config.seed, "source-rnnt-init"));
    Checkpoint fresh =
        RnntModel::Random(config.model, source_inventory, &init).ToCheckpoint("init");
    if (config.source_rnnt_init == "source-ce") {
      const SourceBinding b{"source-ce", &*source_ce, TransplantScope::Encoder()};
      fresh = Transplant(fresh, std::span(&b, 1)).checkpoint;
    }
    RnntModel model = RnntModel::FromCheckpoint(fresh);
    TrainLog tl = TrainRnnt(&model, data, Options(config.source_rnnt, "source-rnnt"),
                            Progress("source RNN-T"));
    Checkpoint ckpt = model.ToCheckpoint("rnnt");
    ckpt.meta.attributes["language"] = "source";
    SaveCheckpoint(ckpt, out / "pretrain" / "source_rnnt");
    SaveLog(tl, "source_rnnt", false);
    pretrain.push_back({"source-rnnt", "final training loss",
                        tl.epochs.empty() ? 0.0 : tl.epochs.back().loss,
                        Losses(tl)});
    source_rnnt = std::move(ckpt);
    Time("source RNN-T", Seconds(t0));
  }

  void TrainTargetCe() {
    Say("pretraining target CE model");
    auto t0 = Clock::now();
    std::vector<CeExample> data = TargetCeData();
    CeTrainResult r = TrainCe(data, target_inventory.ToFrameInventory(),
                              config.model.EncoderConfig(),
                              Options(config.target_ce, "target-ce"), nullptr,
                              Progress("target CE"));
    r.checkpoint.meta.attributes["language"] = "target";
    SaveCheckpoint(r.checkpoint, out / "pretrain" / "target_ce");
    SaveLog(r.log, "target_ce", false);
    double acc = FrameAccuracy(CeModel::FromCheckpoint(r.checkpoint), data);
    pretrain.push_back({"target-ce", "frame accuracy (train)", acc, Losses(r.log)});
    target_ce = std::move(r.checkpoint);
    Time("target CE", Seconds(t0));
  }

  void TrainStageOne(StageOneTargets which) {
    const bool graph = which == StageOneTargets::kGrapheme;
    const std::string name = graph ? "stage1_grapheme" : "stage1_external";
    Say("two-stage transfer, stage 1 (" + name + ")");
    auto t0 = Clock::now();
    std::vector<CeExample> data = graph ? TargetCeData() : TargetPrototypeData();
    LabelInventory inv =
        graph ? target_inventory.ToFrameInventory() : PrototypeInventory();
    TwoStageResult r = TwoStageCe(*source_ce, data, inv, which,
                                  Options(config.stage1, name), Progress(name));
    r.stage1.checkpoint.meta.attributes["language"] = "target";
    SaveCheckpoint(r.stage1.checkpoint, out / "pretrain" / name);
    SaveLog(r.stage1.log, name, false);
    r.report.Save(out / "pretrain" / (name + "_transplant"));
    double acc = FrameAccuracy(CeModel::FromCheckpoint(r.stage1.checkpoint), data);
    pretrain.push_back({name, "frame accuracy (train)", acc, Losses(r.stage1.log)});
    stage1[which] = std::move(r.stage1.checkpoint);
    Time(name, Seconds(t0));
  }

  void TrainLanguageModel() {
    Say("pretraining target LM");
    auto t0 = Clock::now();
    LmConfig cfg{config.model.embedding_dim, config.model.prediction_layers,
                 config.model.prediction_hidden,
                 config.model.prediction_projection};
    LmTrainResult r = TrainLm(corpus.lm_text, target_inventory, cfg,
                              Options(config.lm, "lm"), Progress("LM"));
    r.checkpoint.meta.attributes["language"] = "target";
    SaveCheckpoint(r.checkpoint, out / "pretrain" / "lm");
    SaveLog(r.log, "lm", true);
    double ppl = Perplexity(LmModel::FromCheckpoint(r.checkpoint),
                            Transcripts(corpus.target_test));
    pretrain.push_back({"lm", "perplexity (target test transcripts)", ppl,
                        Losses(r.log)});
    lm = std::move(r.checkpoint);
    Time("LM", Seconds(t0));
  }

  StrategySources Sources() const {
    StrategySources s;
    if (source_rnnt) s.source_rnnt = &*source_rnnt;
    if (source_ce) s.source_ce = &*source_ce;
    if (target_ce) s.target_ce = &*target_ce;
    if (lm) s.lm = &*lm;
    return s;
  }

  StrategyReport RunStrategy(const std::string &id, double fraction,
                             const fs::path &dir) {
    StrategyReport rep;
    rep.strategy = id;
    rep.fraction = fraction;
    rep.seed = config.seed;
    const size_t n = std::max<size_t>(
        1, static_cast<size_t>(std::ceil(fraction * target_train.size() - 1e-9)));
    rep.train_utterances = std::min(n, target_train.size());
    auto t0 = Clock::now();
    Say("strategy " + id + " (" + std::to_string(rep.train_utterances) +
        " target utterances)");
    try {
      InitStrategy strategy = InitStrategy::Parse(id);
      StrategySources sources = Sources();
      if (strategy.kind == StrategyKind::kTwoStage) {
        auto it = stage1.find(strategy.stage1_targets);
        if (it != stage1.end()) sources.stage1_ce = &it->second;
      }
      // Same fresh draw and data order for every strategy: rows differ only
      // in what was transplanted.
      Rng init(DeriveSeed(config.seed, "rnnt-init"));
      TransplantResult t = BuildInit(strategy, {config.model, target_inventory},
                                     sources, &init);
      fs::create_directories(dir);
      SaveCheckpoint(t.checkpoint, dir / "init");
      t.report.Save(dir / "transplant");

      RnntModel model = RnntModel::FromCheckpoint(t.checkpoint);
      std::vector<RnntExample> subset(target_train.begin(),
                                      target_train.begin() + rep.train_utterances);
      TrainLog tl = TrainRnnt(&model, subset, Options(config.rnnt, "rnnt-train"),
                              Progress(id));
      rep.losses = Losses(tl);
      SaveCheckpoint(model.ToCheckpoint("rnnt"), dir / "final");

      std::vector<DecodedUtterance> decoded =
          DecodeExamples(model, target_test, config.beam_width, config.decode);
      WriteDecoded(dir / "decoded.tsv", decoded);
      std::vector<std::string> refs, hyps;
      for (size_t i = 0; i < decoded.size(); ++i) {
        refs.push_back(target_test[i].transcript);
        hyps.push_back(decoded[i].text);
      }
      rep.wer = ComputeWer(refs, hyps);
      rep.ok = true;
      Say("  WER " + FormatWer(rep.wer.percent()));
    } catch (const Error &e) {
      rep.ok = false;
      rep.error = e.what();
      Say("  failed: " + rep.error);
    }
    rep.wall_seconds = Seconds(t0);
    Time(id + " " + FractionTag(fraction), rep.wall_seconds);
    return rep;
  }
};

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig &config,
                               const fs::path &out_dir, std::ostream *log) {
  fs::create_directories(out_dir / "pretrain");
  Workspace ws(config, out_dir, log);
  ws.timing.open(out_dir / "timing.txt");
  if (!ws.timing) throw IoError("cannot write " + (out_dir / "timing.txt").string());
  {
    std::ofstream cfg(out_dir / "config.json");
    cfg << config.ToJson().dump(2) << '\n';
  }
  auto t0 = Clock::now();
  ws.PrepareData();

  std::set<std::string> needed(config.strategies.begin(), config.strategies.end());
  needed.insert(config.scaling_strategies.begin(), config.scaling_strategies.end());
  bool need_source_ce = config.source_rnnt_init == "source-ce" &&
                        needed.count("source-rnnt-encoder");
  bool need_stage1[2] = {false, false};
  bool need_target_ce = false, need_lm = false, need_source_rnnt = false;
  for (const auto &id : needed) {
    InitStrategy s = InitStrategy::Parse(id);
    switch (s.kind) {
      case StrategyKind::kRandom: break;
      case StrategyKind::kSourceRnntEncoder: need_source_rnnt = true; break;
      case StrategyKind::kSourceCeEncoder: need_source_ce = true; break;
      case StrategyKind::kTwoStage:
        need_source_ce = true;
        need_stage1[s.stage1_targets == StageOneTargets::kGrapheme ? 0 : 1] = true;
        break;
      case StrategyKind::kCePlusLm:
        need_lm = true;
        if (s.ce_source == CeEncoderSource::kTargetCe)
          need_target_ce = true;
        else
          need_source_ce = true;
        break;
    }
  }
  // Pretraining failures leave the dependent rows to fail individually.
  auto guarded = [&](const std::string &what, auto &&fn) {
    try {
      fn();
    } catch (const Error &e) {
      ws.Say("pretraining " + what + " failed: " + e.what());
    }
  };
  if (need_source_ce) guarded("source CE", [&] { ws.TrainSourceCe(); });
  if (need_source_rnnt) guarded("source RNN-T", [&] { ws.TrainSourceRnnt(); });
  if (need_target_ce) guarded("target CE", [&] { ws.TrainTargetCe(); });
  if (need_stage1[0] && ws.source_ce)
    guarded("stage 1", [&] { ws.TrainStageOne(StageOneTargets::kGrapheme); });
  if (need_stage1[1] && ws.source_ce)
    guarded("stage 1", [&] { ws.TrainStageOne(StageOneTargets::kExternal); });
  if (need_lm) guarded("LM", [&] { ws.TrainLanguageModel(); });

  ExperimentResult result;
  result.target_train_utterances = ws.target_train.size();
  result.target_test_utterances = ws.target_test.size();
  for (const auto &id : config.strategies)
    result.main.push_back(ws.RunStrategy(id, 1.0, out_dir / "strategies" / id));
  ComputeWerr(&result.main);

  for (double f : config.fractions) {
    for (const auto &id : config.scaling_strategies) {
      const StrategyReport *same = nullptr;
      if (std::abs(f - 1.0) < 1e-12)
        for (const auto &r : result.main)
          if (r.strategy == id) same = &r;
      if (same) {
        result.scaling.push_back(*same);
      } else {
        result.scaling.push_back(ws.RunStrategy(
            id, f, out_dir / "scaling" / FractionTag(f) / id));
      }
    }
  }
  ComputeWerr(&result.scaling);
  result.pretrain = ws.pretrain;

  auto write = [&](const std::string &name, const std::string &body) {
    std::ofstream o(out_dir / name, std::ios::binary);
    if (!o) throw IoError("cannot write " + (out_dir / name).string());
    o << body;
  };
  write("report.md", RenderReportMarkdown(config, result));
  write("report.csv", RenderReportCsv(result));
  ExportLossCurves(result.main, out_dir / "loss_curves.csv");
  ws.Time("total", Seconds(t0));
  return result;
}

}  // namespace rntforge
