// include/rntforge/nn/prediction-network.h

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

#ifndef RNTFORGE_NN_PREDICTION_NETWORK_H_
#define RNTFORGE_NN_PREDICTION_NETWORK_H_

#include <span>
#include <string>
#include <vector>

#include "rntforge/nn/layers.h"
#include "rntforge/nn/lstm.h"

namespace rntforge {

// Label embedding feeding an LSTM stack. The transducer's prediction
// network and the grapheme LM share this layout (and tensor names), which
// is what lets an LM initialise a prediction network.
struct PredictionNetwork {
  Embedding embedding;
  LstmStack lstm;

  PredictionNetwork() = default;
  PredictionNetwork(size_t vocab, size_t embedding_dim,
                    const LstmConfig &lstm_config);

  void Initialize(Rng *rng);
  PredictionNetwork ZerosLike() const;

  struct Cache {
    std::vector<int> ids;
    LstmCache lstm;
  };

  // ids[n] -> [n x projection_dim].
  Tensor Forward(std::span<const int> ids, Cache *cache) const;
  void Backward(const Cache &cache, const Tensor &d_outputs,
                PredictionNetwork *grad) const;

  // Consumes one label, updating state; returns the new output.
  std::vector<double> Step(int id, LstmState *state) const;

  void CollectParams(const std::string &prefix, ParamList *out);
};

}  // namespace rntforge

#endif  // RNTFORGE_NN_PREDICTION_NETWORK_H_
