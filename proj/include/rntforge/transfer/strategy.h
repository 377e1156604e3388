// include/rntforge/transfer/strategy.h

// Copyright 2026  The rntforge Authors

// See ../../../COPYING for clarification regarding multiple authors
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

#ifndef RNTFORGE_TRANSFER_STRATEGY_H_
#define RNTFORGE_TRANSFER_STRATEGY_H_

#include <functional>
#include <string>
#include <vector>

#include "rntforge/pretrain/ce-model.h"
#include "rntforge/transducer/rnnt-model.h"
#include "rntforge/transfer/transplant.h"

namespace rntforge {

enum class StrategyKind {
  kRandom,
  kSourceRnntEncoder,
  kSourceCeEncoder,
  kTwoStage,
  kCePlusLm,
};

enum class StageOneTargets { kGrapheme, kExternal };
enum class CeEncoderSource { kTargetCe, kSourceCe };

struct InitStrategy {
  StrategyKind kind = StrategyKind::kRandom;
  StageOneTargets stage1_targets = StageOneTargets::kGrapheme;
  CeEncoderSource ce_source = CeEncoderSource::kTargetCe;

  // random, source-rnnt-encoder, source-ce-encoder, two-stage-grapheme,
  // two-stage-external, target-ce+lm, source-ce+lm
  std::string Id() const;
  static InitStrategy Parse(std::string_view id);
  static std::vector<std::string> AllIds();
  bool operator==(const InitStrategy &) const = default;
};

// Checkpoints a strategy may draw on. Only the ones the strategy needs have
// to be set.
struct StrategySources {
  const Checkpoint *source_rnnt = nullptr;  // provenance "rnnt"
  const Checkpoint *source_ce = nullptr;    // provenance "ce"
  const Checkpoint *target_ce = nullptr;    // provenance "ce"
  const Checkpoint *stage1_ce = nullptr;    // "ce" from TwoStageCe
  const Checkpoint *lm = nullptr;           // provenance "lm"
};

struct TargetSpec {
  RnntConfig config;
  LabelInventory inventory;
};

// Provenance tag the strategy expects of each checkpoint it uses. Throws
// StrategyError naming the missing or mis-tagged checkpoint.
void CheckStrategySources(const InitStrategy &strategy,
                          const StrategySources &sources);

// Fresh target RNN-T model from rng, with the strategy's tensors
// transplanted in. The joint network is always left at its fresh values.
// The result is tagged provenance "init" with attribute strategy=<id>.
TransplantResult BuildInit(const InitStrategy &strategy, const TargetSpec &target,
                           const StrategySources &sources, Rng *rng);

inline constexpr char kStageOneAttribute[] = "stage";
inline constexpr char kStageOneValue[] = "two-stage-1";
inline constexpr char kStageOneTargetsAttribute[] = "stage1_targets";

struct TwoStageResult {
  CeTrainResult stage1;  // target CE model, tagged stage=two-stage-1
  TransplantReport report;
};

// First stage of two-stage transfer: a target-language CE model whose
// encoder starts from the source CE encoder and whose classifier starts
// fresh for the target frame inventory.
TwoStageResult TwoStageCe(const Checkpoint &source_ce,
                          const std::vector<CeExample> &target_data,
                          const LabelInventory &target_frame_inventory,
                          StageOneTargets targets, const TrainOptions &opts,
                          const std::function<void(const EpochRecord &)> &on_epoch = {});

}  // namespace rntforge

#endif  // RNTFORGE_TRANSFER_STRATEGY_H_
