// include/rntforge/transducer/rnnt-model.h

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

#ifndef RNTFORGE_TRANSDUCER_RNNT_MODEL_H_
#define RNTFORGE_TRANSDUCER_RNNT_MODEL_H_

#include <span>
#include <string>

#include "json.hpp"
#include "rntforge/nn/checkpoint.h"
#include "rntforge/nn/lstm.h"
#include "rntforge/nn/prediction-network.h"
#include "rntforge/nn/trainer.h"
#include "rntforge/tokenize/label-inventory.h"
#include "rntforge/transducer/joint.h"

namespace rntforge {

struct RnntConfig {
  size_t input_dim = 640;  // 8 stacked 80-dim frames
  size_t encoder_layers = 4;
  size_t encoder_hidden = 64;
  size_t encoder_projection = 32;
  size_t embedding_dim = 32;
  size_t prediction_layers = 2;
  size_t prediction_hidden = 64;
  size_t prediction_projection = 32;
  size_t joint_dim = 64;

  LstmConfig EncoderConfig() const;
  LstmConfig PredictionConfig() const;

  nlohmann::json ToJson() const;
  // Missing keys keep defaults; unknown keys raise ConfigError.
  static RnntConfig FromJson(const nlohmann::json &j);
  bool operator==(const RnntConfig &) const = default;
};

// Tensor names: encoder.layerN.*, prediction.embedding,
// prediction.lstm.layerN.*, joint.{encoder_proj,prediction_proj,output}.*
class RnntModel {
 public:
  RnntConfig config;
  LabelInventory inventory;
  LstmStack encoder;
  PredictionNetwork prediction;
  JointNetwork joint;

  RnntModel() = default;
  // Zero weights. The inventory must be a transducer inventory.
  RnntModel(const RnntConfig &config, const LabelInventory &inventory);
  static RnntModel Random(const RnntConfig &config,
                          const LabelInventory &inventory, Rng *rng);

  int blank() const { return inventory.blank_index(); }
  size_t vocab_size() const { return inventory.size(); }

  RnntModel ZerosLike() const;
  void CollectParams(ParamList *out);

  Checkpoint ToCheckpoint(const std::string &provenance = "rnnt") const;
  // Throws CodecError(kMeta) when the checkpoint does not describe an RNN-T
  // model, kIntegrity when tensors are missing or misshapen.
  static RnntModel FromCheckpoint(const Checkpoint &ckpt);

  // Stacked features [T x input_dim] -> encoder outputs [T x p].
  Tensor Encode(const Tensor &features) const;
  // Log-posteriors [T x (U+1) x V] for a target sequence.
  Tensor LatticeLogProbs(const Tensor &features,
                         std::span<const int> target) const;
  // Per-utterance transducer loss; gradients are accumulated into grad
  // when it is non-null.
  LossStat LossAndGrad(const Tensor &features, std::span<const int> target,
                       RnntModel *grad) const;
};

// Prediction-network input for a target: the blank id (start of sequence)
// followed by the target labels.
std::vector<int> PredictionInputs(std::span<const int> target, int blank);

}  // namespace rntforge

#endif  // RNTFORGE_TRANSDUCER_RNNT_MODEL_H_
