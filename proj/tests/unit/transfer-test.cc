// tests/unit/transfer-test.cc

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

#include <cstring>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rntforge/data/synth-corpus.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/pretrain/ce-model.h"
#include "rntforge/pretrain/lm-model.h"
#include "rntforge/tokenize/grapheme.h"
#include "rntforge/transducer/rnnt-model.h"
#include "rntforge/transfer/strategy.h"
#include "rntforge/transfer/transplant.h"

using namespace rntforge;
namespace fs = std::filesystem;

namespace {

RnntConfig SmallConfig() {
  RnntConfig c;
  c.input_dim = 6;
  c.encoder_layers = 2;
  c.encoder_hidden = 5;
  c.encoder_projection = 4;
  c.embedding_dim = 3;
  c.prediction_layers = 2;
  c.prediction_hidden = 4;
  c.prediction_projection = 3;
  c.joint_dim = 5;
  return c;
}

LmConfig MatchingLm(const RnntConfig &c) {
  LmConfig l;
  l.embedding_dim = c.embedding_dim;
  l.num_layers = c.prediction_layers;
  l.hidden_dim = c.prediction_hidden;
  l.projection_dim = c.prediction_projection;
  return l;
}

Checkpoint SourceRnnt(const LabelInventory &inv, uint64_t seed) {
  Rng rng(seed);
  return RnntModel::Random(SmallConfig(), inv, &rng).ToCheckpoint();
}

Checkpoint Ce(const LabelInventory &inv, uint64_t seed) {
  Rng rng(seed);
  return CeModel::Random(SmallConfig().EncoderConfig(), inv.ToFrameInventory(), &rng)
      .ToCheckpoint();
}

Checkpoint Lm(const LabelInventory &inv, uint64_t seed) {
  Rng rng(seed);
  return LmModel::Random(MatchingLm(SmallConfig()), inv, &rng).ToCheckpoint();
}

// Every target tensor exactly once, in checkpoint order.
bool IsPartition(const TransplantReport &r, const Checkpoint &c) {
  if (r.target.size() != c.tensors.size()) return false;
  for (size_t i = 0; i < c.tensors.size(); ++i)
    if (r.target[i].tensor != c.tensors[i].name) return false;
  return true;
}

std::map<std::string, Disposition> Dispositions(const TransplantReport &r) {
  std::map<std::string, Disposition> out;
  for (const auto &e : r.target) out[e.tensor] = e.disposition;
  return out;
}

// Bit pattern of the 32-bit stored value.
bool SameStorage(const Tensor &a, const Tensor &b) {
  if (!a.SameShape(b)) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    float x = static_cast<float>(a[i]), y = static_cast<float>(b[i]);
    if (std::memcmp(&x, &y, sizeof x) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("encoder transplant between identical architectures") {
  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Checkpoint source = SourceRnnt(inv, 1);
  Rng rng(2);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), inv, &rng).ToCheckpoint("init");
  const SourceBinding b{"src", &source, TransplantScope::Encoder()};
  TransplantResult r = Transplant(fresh, std::span(&b, 1));
  CHECK(IsPartition(r.report, r.checkpoint));
  for (size_t i = 0; i < r.checkpoint.tensors.size(); ++i) {
    const auto &t = r.checkpoint.tensors[i];
    if (t.name.starts_with("encoder.")) {
      CHECK(r.report.target[i].disposition == Disposition::kCopied);
      CHECK(r.report.target[i].source == "src:" + t.name);
      CHECK(t.value == source.Find(t.name)->value);
      CHECK(SameStorage(t.value, source.Find(t.name)->value));
    } else {
      CHECK(r.report.target[i].disposition == Disposition::kStrategyExcluded);
      CHECK(t.value == fresh.tensors[i].value);
    }
  }
  CHECK(r.report.CountCopied() == 8);
  // Source tensors outside the scope are reported as left behind.
  CHECK(r.report.unused.size() == source.tensors.size() - 8);
  for (const auto &e : r.report.unused)
    CHECK(e.disposition == Disposition::kStrategyExcluded);
}

TEST_CASE("CE source: encoder copied, classifier left behind") {
  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Checkpoint ce = Ce(inv, 3);
  Rng rng(4);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), inv, &rng).ToCheckpoint("init");
  const SourceBinding b{"source-ce", &ce, TransplantScope::Encoder()};
  TransplantResult r = Transplant(fresh, std::span(&b, 1));
  std::set<std::string> left;
  for (const auto &e : r.report.unused) {
    CHECK(e.disposition == Disposition::kStrategyExcluded);
    left.insert(e.source);
  }
  CHECK(left == std::set<std::string>{"source-ce:ce_output.weight", "source-ce:ce_output.bias"});
  CHECK(r.report.CountCopied() == 8);
}

TEST_CASE("prediction transplant across inventories re-initialises the embedding") {
  LabelInventory small = BuildGraphemeInventory({"abc"});
  LabelInventory large = BuildGraphemeInventory({"abcdefg"});
  Checkpoint lm = Lm(small, 5);
  Rng rng(6);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), large, &rng).ToCheckpoint("init");
  const SourceBinding b{"lm", &lm, TransplantScope::Prediction()};
  TransplantResult r = Transplant(fresh, std::span(&b, 1));
  auto d = Dispositions(r.report);
  CHECK(d["prediction.embedding"] == Disposition::kVocabDependent);
  CHECK(r.checkpoint.Find("prediction.embedding")->value ==
        fresh.Find("prediction.embedding")->value);
  for (const auto &[name, disp] : d)
    if (name.starts_with("prediction.lstm."))
      CHECK(disp == Disposition::kCopied);
  bool embedding_reported = false;
  for (const auto &e : r.report.unused)
    if (e.source == "lm:prediction.embedding") {
      embedding_reported = true;
      CHECK(e.disposition == Disposition::kVocabDependent);
    }
  CHECK(embedding_reported);

  // Same inventory: the embedding comes across too.
  Checkpoint same = Lm(large, 7);
  const SourceBinding b2{"lm", &same, TransplantScope::Prediction()};
  TransplantResult r2 = Transplant(fresh, std::span(&b2, 1));
  CHECK(Dispositions(r2.report)["prediction.embedding"] == Disposition::kCopied);
  CHECK(r2.checkpoint.Find("prediction.embedding")->value ==
        same.Find("prediction.embedding")->value);
}

TEST_CASE("a coincidental shape match never moves a vocabulary tensor") {
  // Two inventories of the same size but different labels.
  LabelInventory a = BuildGraphemeInventory({"ab"});
  LabelInventory b = BuildGraphemeInventory({"xy"});
  Checkpoint source = SourceRnnt(a, 8);
  Rng rng(9);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), b, &rng).ToCheckpoint("init");
  const SourceBinding bind{"src", &source,
                           TransplantScope::Custom({"prediction.embedding",
                                                    "joint.output.weight"})};
  TransplantResult r = Transplant(fresh, std::span(&bind, 1));
  auto d = Dispositions(r.report);
  CHECK(d["prediction.embedding"] == Disposition::kVocabDependent);
  CHECK(d["joint.output.weight"] == Disposition::kVocabDependent);
  CHECK(r.report.CountCopied() == 0);
  CHECK(r.checkpoint == fresh);
}

TEST_CASE("transplant errors") {
  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Rng rng(10);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), inv, &rng).ToCheckpoint("init");

  RnntConfig wider = SmallConfig();
  wider.encoder_hidden = 7;
  Rng rng2(11);
  Checkpoint other = RnntModel::Random(wider, inv, &rng2).ToCheckpoint();
  const SourceBinding mismatch{"wide", &other, TransplantScope::Encoder()};
  CHECK_THROWS_AS(Transplant(fresh, std::span(&mismatch, 1)), TransplantError);

  RnntConfig shallow = SmallConfig();
  shallow.encoder_layers = 1;
  Rng rng3(12);
  Checkpoint thin = RnntModel::Random(shallow, inv, &rng3).ToCheckpoint();
  const SourceBinding missing{"thin", &thin, TransplantScope::Encoder()};
  CHECK_THROWS_AS(Transplant(fresh, std::span(&missing, 1)), TransplantError);

  Checkpoint source = SourceRnnt(inv, 13);
  const SourceBinding twice[2] = {{"a", &source, TransplantScope::Encoder()},
                                  {"b", &source, TransplantScope::Encoder()}};
  CHECK_THROWS_AS(Transplant(fresh, twice), TransplantError);

  CHECK_THROWS_AS(TransplantScope::Parse(","), ConfigError);
  CHECK(TransplantScope::Parse("a,b").Contains("b"));
  CHECK_FALSE(TransplantScope::Parse("encoder").Contains("prediction.embedding"));
}

TEST_CASE("report text and CSV") {
  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Checkpoint ce = Ce(inv, 14);
  Rng rng(15);
  Checkpoint fresh = RnntModel::Random(SmallConfig(), inv, &rng).ToCheckpoint("init");
  const SourceBinding b{"source-ce", &ce, TransplantScope::Encoder()};
  TransplantReport r = Transplant(fresh, std::span(&b, 1)).report;
  const std::string csv = r.ToCsv();
  CHECK(csv.rfind("tensor,disposition,source\n", 0) == 0);
  CHECK(csv.find("encoder.layer0.w_input,copied,source-ce:encoder.layer0.w_input\n") !=
        std::string::npos);
  CHECK(csv.find("joint.output.weight,reinit:strategy-excluded,\n") != std::string::npos);
  CHECK(csv.find("\n,reinit:strategy-excluded,source-ce:ce_output.bias\n") !=
        std::string::npos);
  TransplantReport back = TransplantReport::FromCsv(csv);
  CHECK(back.ToCsv() == csv);
  CHECK(r.ToText().find("<- source-ce:encoder.layer1.bias") != std::string::npos);
  CHECK_THROWS_AS(TransplantReport::FromCsv("a,b,c\n"), DataError);
  CHECK_THROWS_AS(ParseDisposition("moved"), DataError);

  const fs::path base = fs::temp_directory_path() / "rntforge-transplant";
  r.Save(base);
  CHECK(fs::exists(fs::path(base.string() + ".txt")));
  CHECK(fs::exists(fs::path(base.string() + ".csv")));
  fs::remove(base.string() + ".txt");
  fs::remove(base.string() + ".csv");
}

TEST_CASE("strategy ids and source requirements") {
  CHECK(InitStrategy::AllIds().size() == 7);
  for (const auto &id : InitStrategy::AllIds())
    CHECK(InitStrategy::Parse(id).Id() == id);
  CHECK_THROWS_AS(InitStrategy::Parse("source-lm"), StrategyError);

  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Checkpoint rnnt = SourceRnnt(inv, 16), ce = Ce(inv, 17), lm = Lm(inv, 18);
  CHECK_NOTHROW(CheckStrategySources(InitStrategy::Parse("random"), {}));
  CHECK_THROWS_AS(CheckStrategySources(InitStrategy::Parse("source-rnnt-encoder"), {}),
                  StrategyError);
  StrategySources wrong;
  wrong.source_rnnt = &ce;
  try {
    CheckStrategySources(InitStrategy::Parse("source-rnnt-encoder"), wrong);
    FAIL("expected StrategyError");
  } catch (const StrategyError &e) {
    CHECK(std::string(e.what()).find("'rnnt'") != std::string::npos);
  }
  StrategySources no_lm;
  no_lm.target_ce = &ce;
  CHECK_THROWS_AS(CheckStrategySources(InitStrategy::Parse("target-ce+lm"), no_lm),
                  StrategyError);
  // A plain CE checkpoint is not a stage-1 model.
  StrategySources plain;
  plain.stage1_ce = &ce;
  CHECK_THROWS_AS(CheckStrategySources(InitStrategy::Parse("two-stage-grapheme"), plain),
                  StrategyError);
}

TEST_CASE("build init per strategy") {
  LabelInventory inv = BuildGraphemeInventory({"abc"});
  Checkpoint rnnt = SourceRnnt(inv, 20), ce = Ce(inv, 21), tce = Ce(inv, 22),
             lm = Lm(inv, 23);
  Checkpoint stage1 = Ce(inv, 24);
  stage1.meta.attributes[kStageOneAttribute] = kStageOneValue;
  stage1.meta.attributes[kStageOneTargetsAttribute] = "grapheme";
  StrategySources src;
  src.source_rnnt = &rnnt;
  src.source_ce = &ce;
  src.target_ce = &tce;
  src.stage1_ce = &stage1;
  src.lm = &lm;
  const TargetSpec target{SmallConfig(), inv};

  Rng r0(99);
  TransplantResult random = BuildInit(InitStrategy::Parse("random"), target, src, &r0);
  CHECK(random.report.CountCopied() == 0);
  CHECK(random.checkpoint.meta.provenance == "init");
  CHECK(random.checkpoint.meta.attributes.at("strategy") == "random");

  const std::map<std::string, std::pair<const Checkpoint *, const Checkpoint *>> expect = {
      {"source-rnnt-encoder", {&rnnt, nullptr}},
      {"source-ce-encoder", {&ce, nullptr}},
      {"two-stage-grapheme", {&stage1, nullptr}},
      {"target-ce+lm", {&tce, &lm}},
      {"source-ce+lm", {&ce, &lm}},
  };
  for (const auto &[id, sources] : expect) {
    CAPTURE(id);
    Rng rng(99);
    TransplantResult r = BuildInit(InitStrategy::Parse(id), target, src, &rng);
    CHECK(IsPartition(r.report, r.checkpoint));
    CHECK(r.checkpoint.meta.attributes.at("strategy") == id);
    REQUIRE(r.checkpoint.tensors.size() == random.checkpoint.tensors.size());
    for (size_t i = 0; i < r.checkpoint.tensors.size(); ++i) {
      const auto &t = r.checkpoint.tensors[i];
      CHECK(t.name == random.checkpoint.tensors[i].name);
      CHECK(t.value.SameShape(random.checkpoint.tensors[i].value));
      const Checkpoint *from = nullptr;
      if (t.name.starts_with("encoder.")) from = sources.first;
      if (t.name.starts_with("prediction.")) from = sources.second;
      if (from) {
        CHECK(r.report.target[i].disposition == Disposition::kCopied);
        CHECK(t.value == from->Find(t.name)->value);
      } else {
        // Joint, and prediction for the encoder-only strategies, stay at
        // the fresh values a random init with the same seed would have.
        CHECK(r.report.target[i].disposition == Disposition::kStrategyExcluded);
        CHECK(t.value == random.checkpoint.tensors[i].value);
      }
    }
    Rng again(99);
    CHECK(BuildInit(InitStrategy::Parse(id), target, src, &again).checkpoint == r.checkpoint);
  }
  // The result loads as a trainable transducer.
  Rng rng(99);
  RnntModel m = RnntModel::FromCheckpoint(
      BuildInit(InitStrategy::Parse("target-ce+lm"), target, src, &rng).checkpoint);
  CHECK(m.inventory == inv);
}

TEST_CASE("two-stage first step starts from the source encoder") {
  SynthSpec spec;
  spec.num_prototypes = 3;
  spec.feature_dim = 2;
  spec.min_duration = spec.max_duration = 5;
  spec.source_train = 60;
  spec.target_train = 40;
  spec.target_test = 0;
  spec.source_vocab = 6;
  spec.target_vocab = 6;
  spec.min_words = 1;
  spec.max_words = 2;
  spec.min_word_length = 1;
  spec.max_word_length = 3;
  spec.noise = 0.2;
  spec.lm_sentences = 0;
  SynthCorpus c = GenerateSynthCorpus(spec, 4);
  std::vector<std::string> src_text, tgt_text;
  for (const auto &u : c.source_train) src_text.push_back(u.transcript);
  for (const auto &u : c.target_train) tgt_text.push_back(u.transcript);
  LabelInventory src_frames = BuildGraphemeInventory(src_text).ToFrameInventory();
  LabelInventory tgt_frames = BuildGraphemeInventory(tgt_text).ToFrameInventory();
  std::vector<CeExample> src_ex, tgt_ex;
  for (const auto &u : c.source_train) src_ex.push_back(MakeCeExample(u, src_frames, TargetMode{}));
  for (const auto &u : c.target_train) tgt_ex.push_back(MakeCeExample(u, tgt_frames, TargetMode{}));

  const LstmConfig enc{16, 8, 6, 2};
  TrainOptions opts;
  opts.epochs = 25;
  opts.optimizer.learning_rate = 0.01;
  Checkpoint source_ce = TrainCe(src_ex, src_frames, enc, opts).checkpoint;

  TrainOptions zero = opts;
  zero.epochs = 0;
  TwoStageResult s0 = TwoStageCe(source_ce, tgt_ex, tgt_frames, StageOneTargets::kGrapheme, zero);
  for (const auto &t : s0.stage1.checkpoint.tensors) {
    if (t.name.starts_with("encoder."))
      CHECK(t.value == source_ce.Find(t.name)->value);
    else
      CHECK(t.value.dim(0) == tgt_frames.size());
  }
  CHECK(s0.stage1.checkpoint.meta.attributes.at(kStageOneAttribute) == kStageOneValue);
  CHECK(s0.stage1.checkpoint.meta.attributes.at(kStageOneTargetsAttribute) == "grapheme");
  for (const auto &e : s0.report.target)
    CHECK(e.disposition == (e.tensor.starts_with("encoder.") ? Disposition::kCopied
                                                             : Disposition::kStrategyExcluded));

  // A 10-step epoch is mostly the fresh classifier settling; three passes
  // per epoch let the pretrained encoder show.
  TrainOptions one = opts;
  one.epochs = 1;
  one.epoch_examples = 120;
  TwoStageResult s1 = TwoStageCe(source_ce, tgt_ex, tgt_frames, StageOneTargets::kGrapheme, one);
  CeTrainResult scratch = TrainCe(tgt_ex, tgt_frames, enc, one);
  MESSAGE("epoch-1 CE loss: stage-1 " << s1.stage1.log.epochs[0].loss << ", scratch "
                                      << scratch.log.epochs[0].loss);
  CHECK(s1.stage1.log.epochs[0].loss < scratch.log.epochs[0].loss);
  CHECK(TwoStageCe(source_ce, tgt_ex, tgt_frames, StageOneTargets::kGrapheme, one)
            .stage1.checkpoint == s1.stage1.checkpoint);

  StrategySources src;
  src.stage1_ce = &s1.stage1.checkpoint;
  CHECK_NOTHROW(CheckStrategySources(InitStrategy::Parse("two-stage-grapheme"), src));
  CHECK_THROWS_AS(CheckStrategySources(InitStrategy::Parse("two-stage-external"), src),
                  StrategyError);
  Checkpoint not_ce = SourceRnnt(BuildGraphemeInventory({"ab"}), 1);
  CHECK_THROWS_AS(TwoStageCe(not_ce, tgt_ex, tgt_frames, StageOneTargets::kGrapheme, one),
                  StrategyError);
}
