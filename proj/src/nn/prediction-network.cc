// src/nn/prediction-network.cc

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

#include "rntforge/nn/prediction-network.h"

namespace rntforge {

PredictionNetwork::PredictionNetwork(size_t vocab, size_t embedding_dim,
                                     const LstmConfig &lstm_config)
    : embedding(vocab, embedding_dim), lstm(lstm_config) {}

void PredictionNetwork::Initialize(Rng *rng) {
  embedding.Initialize(rng);
  lstm.Initialize(rng);
}

PredictionNetwork PredictionNetwork::ZerosLike() const {
  PredictionNetwork z;
  z.embedding = embedding.ZerosLike();
  z.lstm = lstm.ZerosLike();
  return z;
}

Tensor PredictionNetwork::Forward(std::span<const int> ids, Cache *cache) const {
  Tensor emb = embedding.Forward(ids);
  if (cache) cache->ids.assign(ids.begin(), ids.end());
  return lstm.Forward(emb, nullptr, cache ? &cache->lstm : nullptr);
}

void PredictionNetwork::Backward(const Cache &cache, const Tensor &d_outputs,
                                 PredictionNetwork *grad) const {
  Tensor d_emb = lstm.Backward(cache.lstm, d_outputs, &grad->lstm, true);
  embedding.Backward(cache.ids, d_emb, &grad->embedding);
}

std::vector<double> PredictionNetwork::Step(int id, LstmState *state) const {
  const int ids[1] = {id};
  Tensor emb = embedding.Forward(ids);
  return lstm.Step(emb.Row(0), state);
}

void PredictionNetwork::CollectParams(const std::string &prefix,
                                      ParamList *out) {
  embedding.CollectParams(prefix + ".embedding", out);
  lstm.CollectParams(prefix + ".lstm", out);
}

}  // namespace rntforge
