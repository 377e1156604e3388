// include/rntforge/pretrain/lm-model.h

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

#ifndef RNTFORGE_PRETRAIN_LM_MODEL_H_
#define RNTFORGE_PRETRAIN_LM_MODEL_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rntforge/nn/checkpoint.h"
#include "rntforge/nn/layers.h"
#include "rntforge/nn/prediction-network.h"
#include "rntforge/nn/trainer.h"
#include "rntforge/tokenize/label-inventory.h"

namespace rntforge {

struct LmConfig {
  size_t embedding_dim = 32;
  size_t num_layers = 2;
  size_t hidden_dim = 64;
  size_t projection_dim = 32;

  LstmConfig LstmLayers() const {
    return LstmConfig{embedding_dim, hidden_dim, projection_dim, num_layers};
  }
  nlohmann::json ToJson() const;
  static LmConfig FromJson(const nlohmann::json &j);
  bool operator==(const LmConfig &) const = default;
};

// Next-grapheme LSTM language model over a transducer grapheme inventory.
// The network is laid out exactly like the transducer's prediction network
// (tensor names prediction.*), and like it, it reads the blank row as the
// start-of-sentence input. Blank is never a prediction target.
class LmModel {
 public:
  LmConfig config;
  LabelInventory inventory;
  PredictionNetwork network;
  Linear output;  // lm_output.{weight,bias}

  LmModel() = default;
  LmModel(const LmConfig &config, const LabelInventory &inventory);
  static LmModel Random(const LmConfig &config, const LabelInventory &inventory,
                        Rng *rng);

  LmModel ZerosLike() const;
  void CollectParams(ParamList *out);

  Checkpoint ToCheckpoint() const;
  static LmModel FromCheckpoint(const Checkpoint &ckpt);

  // Summed next-label negative log-likelihood of one encoded sentence;
  // count is the number of predicted labels.
  LossStat LossAndGrad(std::span<const int> ids, LmModel *grad) const;
};

struct LmTrainResult {
  Checkpoint checkpoint;  // provenance "lm"
  TrainLog log;           // per-token loss; perplexity = exp(loss)
  size_t unique_sentences = 0;
};

// Deduplicates the corpus, encodes it with the grapheme inventory and
// trains. Throws DataError when no non-empty sentence remains.
LmTrainResult TrainLm(const std::vector<std::string> &corpus,
                      const LabelInventory &inventory, const LmConfig &config,
                      const TrainOptions &opts,
                      const std::function<void(const EpochRecord &)> &on_epoch = {});

// exp(mean per-label negative log-likelihood). Throws VocabularyError for an
// unencodable grapheme and DataError for a corpus with no labels.
double Perplexity(const LmModel &lm, const std::vector<std::string> &corpus);

}  // namespace rntforge

#endif  // RNTFORGE_PRETRAIN_LM_MODEL_H_
