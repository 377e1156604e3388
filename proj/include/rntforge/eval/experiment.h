// include/rntforge/eval/experiment.h

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

#ifndef RNTFORGE_EVAL_EXPERIMENT_H_
#define RNTFORGE_EVAL_EXPERIMENT_H_

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rntforge/data/synth-corpus.h"
#include "rntforge/eval/wer.h"
#include "rntforge/nn/trainer.h"
#include "rntforge/transducer/decode.h"
#include "rntforge/transducer/rnnt-model.h"

namespace rntforge {

// {"epochs", "batch_size", "epoch_examples", "learning_rate", "optimizer"
// ("adam" | "sgd"), "clip_norm", "halve_on_plateau"}; missing keys keep
// defaults, unknown keys raise ConfigError. Seeds are not configurable here;
// the experiment derives them from its own seed.
TrainOptions TrainOptionsFromJson(const nlohmann::json &j);
nlohmann::json TrainOptionsToJson(const TrainOptions &opts);

struct ExperimentConfig {
  uint64_t seed = 42;
  SynthSpec synth;
  RnntConfig model;
  // Units of the source-language models: "wordpiece" or "grapheme".
  std::string source_units = "wordpiece";
  int bpe_merges = 30;
  // Encoder initialisation of the source RNN-T: "random" or "source-ce".
  std::string source_rnnt_init = "random";

  TrainOptions source_ce;
  TrainOptions source_rnnt;
  TrainOptions target_ce;
  TrainOptions stage1;
  TrainOptions lm;
  // One block for every target RNN-T run, so learning rate, batch size and
  // epoch quantum are identical across strategies by construction.
  TrainOptions rnnt;

  std::vector<std::string> strategies = {"random"};
  std::vector<double> fractions;  // of the target training set
  std::vector<std::string> scaling_strategies;
  int beam_width = 4;
  DecodeOptions decode;

  static ExperimentConfig FromJson(const nlohmann::json &j);
  static ExperimentConfig Load(const std::filesystem::path &path);
  nlohmann::json ToJson() const;
};

struct StrategyReport {
  std::string strategy;
  double fraction = 1.0;
  size_t train_utterances = 0;
  bool ok = false;
  std::string error;           // when !ok
  std::vector<double> losses;  // per epoch
  WerBreakdown wer;
  bool has_werr = false;
  double werr = 0.0;           // percent, versus random at the same fraction
  double wall_seconds = 0.0;
  uint64_t seed = 0;
};

struct PretrainSummary {
  std::string name;    // e.g. "source-ce"
  std::string metric;  // e.g. "frame accuracy (train)"
  double value = 0.0;
  std::vector<double> losses;
};

struct ExperimentResult {
  std::vector<StrategyReport> main;
  std::vector<StrategyReport> scaling;
  std::vector<PretrainSummary> pretrain;
  size_t target_train_utterances = 0;
  size_t target_test_utterances = 0;
};

// Runs the whole pipeline, writing report.md, report.csv, loss_curves.csv,
// timing.txt, checkpoints and transplant reports under out_dir. Progress
// goes to `log` when non-null. Everything except timing.txt is a pure
// function of the config.
ExperimentResult RunExperiment(const ExperimentConfig &config,
                               const std::filesystem::path &out_dir,
                               std::ostream *log = nullptr);

// Seed of the named stream under the experiment seed: "synth",
// "rnnt-init", "rnnt-train", "source-ce", ...
uint64_t DeriveSeed(uint64_t seed, std::string_view label);

// Fills werr for every successful row from the random row of its fraction.
void ComputeWerr(std::vector<StrategyReport> *rows);

}  // namespace rntforge

#endif  // RNTFORGE_EVAL_EXPERIMENT_H_
