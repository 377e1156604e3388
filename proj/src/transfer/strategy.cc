// src/transfer/strategy.cc

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

#include "rntforge/transfer/strategy.h"

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

const std::vector<std::pair<std::string, InitStrategy>> &StrategyTable() {
  static const std::vector<std::pair<std::string, InitStrategy>> table = {
      {"random", {StrategyKind::kRandom}},
      {"source-rnnt-encoder", {StrategyKind::kSourceRnntEncoder}},
      {"source-ce-encoder", {StrategyKind::kSourceCeEncoder}},
      {"two-stage-grapheme",
       {StrategyKind::kTwoStage, StageOneTargets::kGrapheme}},
      {"two-stage-external",
       {StrategyKind::kTwoStage, StageOneTargets::kExternal}},
      {"target-ce+lm",
       {StrategyKind::kCePlusLm, StageOneTargets::kGrapheme,
        CeEncoderSource::kTargetCe}},
      {"source-ce+lm",
       {StrategyKind::kCePlusLm, StageOneTargets::kGrapheme,
        CeEncoderSource::kSourceCe}},
  };
  return table;
}

std::string_view StageOneTargetsName(StageOneTargets t) {
  return t == StageOneTargets::kGrapheme ? "grapheme" : "external";
}

void Require(const Checkpoint *ckpt, const std::string &what,
             const std::string &provenance, const InitStrategy &s) {
  if (!ckpt)
    throw StrategyError("strategy " + s.Id() + " needs a " + what +
                        " checkpoint");
  if (ckpt->meta.provenance != provenance)
    throw StrategyError("strategy " + s.Id() + " needs the " + what +
                        " checkpoint tagged '" + provenance + "', got '" +
                        ckpt->meta.provenance + "'");
}

}  // namespace

std::string InitStrategy::Id() const {
  for (const auto &[id, s] : StrategyTable()) {
    if (s.kind != kind) continue;
    if (kind == StrategyKind::kTwoStage && s.stage1_targets != stage1_targets)
      continue;
    if (kind == StrategyKind::kCePlusLm && s.ce_source != ce_source) continue;
    return id;
  }
  return "?";
}

InitStrategy InitStrategy::Parse(std::string_view id) {
  for (const auto &[name, s] : StrategyTable())
    if (name == id) return s;
  throw StrategyError("unknown strategy '" + std::string(id) + "'");
}

std::vector<std::string> InitStrategy::AllIds() {
  std::vector<std::string> ids;
  for (const auto &entry : StrategyTable()) ids.push_back(entry.first);
  return ids;
}

void CheckStrategySources(const InitStrategy &s, const StrategySources &src) {
  switch (s.kind) {
    case StrategyKind::kRandom:
      break;
    case StrategyKind::kSourceRnntEncoder:
      Require(src.source_rnnt, "source RNN-T", "rnnt", s);
      break;
    case StrategyKind::kSourceCeEncoder:
      Require(src.source_ce, "source CE", "ce", s);
      break;
    case StrategyKind::kTwoStage: {
      Require(src.stage1_ce, "stage-1 CE", "ce", s);
      const auto &attrs = src.stage1_ce->meta.attributes;
      auto stage = attrs.find(kStageOneAttribute);
      auto targets = attrs.find(kStageOneTargetsAttribute);
      if (stage == attrs.end() || stage->second != kStageOneValue)
        throw StrategyError("strategy " + s.Id() +
                            " needs a CE checkpoint produced by the first "
                            "two-stage step");
      if (targets == attrs.end() ||
          targets->second != StageOneTargetsName(s.stage1_targets))
        throw StrategyError("strategy " + s.Id() + " needs a stage-1 model "
                            "trained on " +
                            std::string(StageOneTargetsName(s.stage1_targets)) +
                            " targets");
      break;
    }
    case StrategyKind::kCePlusLm:
      if (s.ce_source == CeEncoderSource::kTargetCe)
        Require(src.target_ce, "target CE", "ce", s);
      else
        Require(src.source_ce, "source CE", "ce", s);
      Require(src.lm, "LM", "lm", s);
      break;
  }
}

TransplantResult BuildInit(const InitStrategy &strategy, const TargetSpec &target,
                           const StrategySources &sources, Rng *rng) {
  CheckStrategySources(strategy, sources);
  Checkpoint fresh =
      RnntModel::Random(target.config, target.inventory, rng).ToCheckpoint("init");

  std::vector<SourceBinding> bindings;
  switch (strategy.kind) {
    case StrategyKind::kRandom:
      break;
    case StrategyKind::kSourceRnntEncoder:
      bindings.push_back({"source-rnnt", sources.source_rnnt,
                          TransplantScope::Encoder()});
      break;
    case StrategyKind::kSourceCeEncoder:
      bindings.push_back({"source-ce", sources.source_ce,
                          TransplantScope::Encoder()});
      break;
    case StrategyKind::kTwoStage:
      bindings.push_back({"stage1-ce", sources.stage1_ce,
                          TransplantScope::Encoder()});
      break;
    case StrategyKind::kCePlusLm:
      if (strategy.ce_source == CeEncoderSource::kTargetCe)
        bindings.push_back({"target-ce", sources.target_ce,
                            TransplantScope::Encoder()});
      else
        bindings.push_back({"source-ce", sources.source_ce,
                            TransplantScope::Encoder()});
      bindings.push_back({"lm", sources.lm, TransplantScope::Prediction()});
      break;
  }
  TransplantResult r = Transplant(fresh, bindings);
  r.checkpoint.meta.attributes["strategy"] = strategy.Id();
  return r;
}

TwoStageResult TwoStageCe(const Checkpoint &source_ce,
                          const std::vector<CeExample> &target_data,
                          const LabelInventory &target_frame_inventory,
                          StageOneTargets targets, const TrainOptions &opts,
                          const std::function<void(const EpochRecord &)> &on_epoch) {
  if (source_ce.meta.provenance != "ce")
    throw StrategyError("two-stage transfer starts from a CE checkpoint, got '" +
                        source_ce.meta.provenance + "'");
  const CeModel source = CeModel::FromCheckpoint(source_ce);
  Rng rng(opts.seed);
  Rng init_rng = rng.Fork("two-stage-template");
  Checkpoint fresh =
      CeModel::Random(source.encoder_config, target_frame_inventory, &init_rng)
          .ToCheckpoint();
  const SourceBinding binding{"source-ce", &source_ce, TransplantScope::Encoder()};
  TransplantResult t = Transplant(fresh, std::span(&binding, 1));
  t.checkpoint.meta.attributes[kStageOneAttribute] = kStageOneValue;
  t.checkpoint.meta.attributes[kStageOneTargetsAttribute] =
      std::string(StageOneTargetsName(targets));

  TwoStageResult r;
  r.report = std::move(t.report);
  r.stage1 = TrainCe(target_data, target_frame_inventory, source.encoder_config,
                     opts, &t.checkpoint, on_epoch);
  return r;
}

}  // namespace rntforge
