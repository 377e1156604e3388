// src/transducer/rnnt-model.cc

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

#include "rntforge/transducer/rnnt-model.h"

#include "rntforge/numerics/errors.h"
#include "rntforge/transducer/rnnt-loss.h"

namespace rntforge {

#define RNNT_CONFIG_FIELDS(X)                                     \
  X(input_dim) X(encoder_layers) X(encoder_hidden)                \
  X(encoder_projection) X(embedding_dim) X(prediction_layers)    \
  X(prediction_hidden) X(prediction_projection) X(joint_dim)

LstmConfig RnntConfig::EncoderConfig() const {
  return LstmConfig{input_dim, encoder_hidden, encoder_projection,
                    encoder_layers};
}

LstmConfig RnntConfig::PredictionConfig() const {
  return LstmConfig{embedding_dim, prediction_hidden, prediction_projection,
                    prediction_layers};
}

nlohmann::json RnntConfig::ToJson() const {
  nlohmann::json j;
#define X(f) j[#f] = f;
  RNNT_CONFIG_FIELDS(X)
#undef X
  return j;
}

RnntConfig RnntConfig::FromJson(const nlohmann::json &j) {
  RnntConfig c;
  if (!j.is_object()) throw ConfigError("model config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &key = it.key();
    bool known = false;
#define X(f)                                                           \
    if (key == #f) {                                                   \
      if (!it->is_number_integer() || it->get<int64_t>() <= 0)          \
        throw ConfigError("model config '" + key +                     \
                          "' must be a positive integer");             \
      c.f = it->get<size_t>();                                         \
      known = true;                                                    \
    }
    RNNT_CONFIG_FIELDS(X)
#undef X
    if (!known) throw ConfigError("unknown model config key '" + key + "'");
  }
  return c;
}

RnntModel::RnntModel(const RnntConfig &cfg, const LabelInventory &inv)
    : config(cfg),
      inventory(inv),
      encoder(cfg.EncoderConfig()),
      prediction(inv.size(), cfg.embedding_dim, cfg.PredictionConfig()),
      joint(cfg.encoder_projection, cfg.prediction_projection, cfg.joint_dim,
            inv.size()) {
  if (inv.blank_index() < 0)
    throw VocabularyError("an RNN-T model needs an inventory with a blank");
}

RnntModel RnntModel::Random(const RnntConfig &cfg, const LabelInventory &inv,
                            Rng *rng) {
  RnntModel m(cfg, inv);
  Rng enc = rng->Fork("encoder"), pred = rng->Fork("prediction"),
      joint = rng->Fork("joint");
  m.encoder.Initialize(&enc);
  m.prediction.Initialize(&pred);
  m.joint.Initialize(&joint);
  return m;
}

RnntModel RnntModel::ZerosLike() const {
  RnntModel z;
  z.config = config;
  z.inventory = inventory;
  z.encoder = encoder.ZerosLike();
  z.prediction = prediction.ZerosLike();
  z.joint = joint.ZerosLike();
  return z;
}

void RnntModel::CollectParams(ParamList *out) {
  encoder.CollectParams("encoder", out);
  prediction.CollectParams("prediction", out);
  joint.CollectParams("joint", out);
}

Checkpoint RnntModel::ToCheckpoint(const std::string &provenance) const {
  // CollectParams hands out mutable pointers; the snapshot only reads them.
  ParamList params;
  const_cast<RnntModel *>(this)->CollectParams(&params);
  CheckpointMeta meta;
  meta.provenance = provenance;
  meta.architecture = {{"model", "rnnt"},
                       {"inventory", InventoryKindName(inventory.kind())},
                       {"config", config.ToJson()}};
  meta.labels = inventory.labels();
  meta.blank_index = blank();
  return CheckpointFromParams(params, std::move(meta));
}

RnntModel RnntModel::FromCheckpoint(const Checkpoint &ckpt) {
  const auto &arch = ckpt.meta.architecture;
  if (!arch.is_object() || arch.value("model", "") != "rnnt" ||
      !arch.contains("config") || !arch.contains("inventory"))
    throw CodecError(CodecError::Kind::kMeta,
                     "checkpoint does not describe an RNN-T model");
  RnntConfig cfg;
  LabelInventory inv;
  try {
    cfg = RnntConfig::FromJson(arch["config"]);
    inv = LabelInventory(ckpt.meta.labels,
                         ParseInventoryKind(arch["inventory"].get<std::string>()));
  } catch (const Error &e) {
    throw CodecError(CodecError::Kind::kMeta,
                     std::string("RNN-T checkpoint metadata: ") + e.what());
  }
  RnntModel m(cfg, inv);
  ParamList params;
  m.CollectParams(&params);
  LoadParams(ckpt, params);
  return m;
}

Tensor RnntModel::Encode(const Tensor &features) const {
  return encoder.Forward(features, nullptr, nullptr);
}

std::vector<int> PredictionInputs(std::span<const int> target, int blank) {
  std::vector<int> ids;
  ids.reserve(target.size() + 1);
  ids.push_back(blank);
  ids.insert(ids.end(), target.begin(), target.end());
  return ids;
}

Tensor RnntModel::LatticeLogProbs(const Tensor &features,
                                  std::span<const int> target) const {
  Tensor h_enc = Encode(features);
  Tensor h_pred = prediction.Forward(PredictionInputs(target, blank()), nullptr);
  return JointForward(joint, h_enc, h_pred, nullptr);
}

LossStat RnntModel::LossAndGrad(const Tensor &features,
                                std::span<const int> target,
                                RnntModel *grad) const {
  LstmCache enc_cache;
  PredictionNetwork::Cache pred_cache;
  JointCache joint_cache;
  Tensor h_enc = encoder.Forward(features, nullptr, grad ? &enc_cache : nullptr);
  Tensor h_pred = prediction.Forward(PredictionInputs(target, blank()),
                                     grad ? &pred_cache : nullptr);
  Tensor lp = JointForward(joint, h_enc, h_pred, grad ? &joint_cache : nullptr);
  RnntLossResult r = RnntLoss(lp, target, blank());
  if (grad) {
    Tensor d_enc, d_pred;
    JointBackward(joint, h_enc, h_pred, joint_cache, r.grad, &grad->joint,
                  &d_enc, &d_pred);
    encoder.Backward(enc_cache, d_enc, &grad->encoder, false);
    prediction.Backward(pred_cache, d_pred, &grad->prediction);
  }
  return LossStat{r.loss, 1.0};
}

}  // namespace rntforge
