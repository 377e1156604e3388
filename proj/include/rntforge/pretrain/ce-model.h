// include/rntforge/pretrain/ce-model.h

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

#ifndef RNTFORGE_PRETRAIN_CE_MODEL_H_
#define RNTFORGE_PRETRAIN_CE_MODEL_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rntforge/data/alignment.h"
#include "rntforge/data/stack.h"
#include "rntforge/data/utterance.h"
#include "rntforge/nn/checkpoint.h"
#include "rntforge/nn/layers.h"
#include "rntforge/nn/lstm.h"
#include "rntforge/nn/trainer.h"
#include "rntforge/tokenize/label-inventory.h"

namespace rntforge {

// Frame-level classifier: the transducer's encoder stack under a softmax
// layer. Tensor names encoder.layerN.* match the RNN-T encoder;
// ce_output.{weight,bias} is the classifier.
class CeModel {
 public:
  LstmConfig encoder_config;
  LabelInventory inventory;  // frame inventory
  LstmStack encoder;
  Linear output;

  CeModel() = default;
  CeModel(const LstmConfig &encoder_config, const LabelInventory &inventory);
  static CeModel Random(const LstmConfig &encoder_config,
                        const LabelInventory &inventory, Rng *rng);

  CeModel ZerosLike() const;
  void CollectParams(ParamList *out);

  Checkpoint ToCheckpoint() const;
  static CeModel FromCheckpoint(const Checkpoint &ckpt);

  // Log-posteriors [T x K] for stacked features.
  Tensor LogPosteriors(const Tensor &features) const;
  // Summed frame cross-entropy; count is the number of frames.
  LossStat LossAndGrad(const Tensor &features, std::span<const int> targets,
                       CeModel *grad) const;
};

struct CeExample {
  std::string id;
  Tensor features;           // stacked
  std::vector<int> targets;  // one per stacked frame
};

// Word-aligned grapheme or word-piece targets, subsampled to the stacked
// frame rate.
CeExample MakeCeExample(const Utterance &utt,
                        const LabelInventory &frame_inventory,
                        const TargetMode &mode, const StackOptions &stack = {});

// Externally supplied raw-rate frame labels (e.g. senone-like classes).
CeExample MakeCeExampleFromFrameLabels(const Utterance &utt,
                                       std::span<const int> raw_labels,
                                       const StackOptions &stack = {});

struct CeTrainResult {
  Checkpoint checkpoint;  // provenance "ce"
  TrainLog log;
};

// Trains a CE model over `inventory`. With an init checkpoint the encoder
// starts from its encoder tensors (TransplantError when they are missing or
// misshapen), and the classifier too when the init was trained over the
// same inventory; otherwise the classifier starts random. Init attributes
// carry over to the result.
CeTrainResult TrainCe(const std::vector<CeExample> &examples,
                      const LabelInventory &inventory,
                      const LstmConfig &encoder_config,
                      const TrainOptions &opts, const Checkpoint *init = nullptr,
                      const std::function<void(const EpochRecord &)> &on_epoch = {});

// Fraction of frames whose argmax equals the target.
double FrameAccuracy(const CeModel &model, const std::vector<CeExample> &examples);

}  // namespace rntforge

#endif  // RNTFORGE_PRETRAIN_CE_MODEL_H_
