// src/pretrain/lm-model.cc

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

#include "rntforge/pretrain/lm-model.h"

#include <cmath>

#include "rntforge/numerics/errors.h"
#include "rntforge/pretrain/dedup.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

nlohmann::json LmConfig::ToJson() const {
  return {{"embedding_dim", embedding_dim},
          {"num_layers", num_layers},
          {"hidden_dim", hidden_dim},
          {"projection_dim", projection_dim}};
}

LmConfig LmConfig::FromJson(const nlohmann::json &j) {
  LmConfig c;
  for (auto [key, field] : {std::pair{"embedding_dim", &c.embedding_dim},
                            std::pair{"num_layers", &c.num_layers},
                            std::pair{"hidden_dim", &c.hidden_dim},
                            std::pair{"projection_dim", &c.projection_dim}}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_number_integer() || j[key].get<int64_t>() <= 0)
      throw ConfigError(std::string("LM config '") + key +
                        "' must be a positive integer");
    *field = j[key].get<size_t>();
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!c.ToJson().contains(it.key()))
      throw ConfigError("unknown LM config key '" + it.key() + "'");
  return c;
}

LmModel::LmModel(const LmConfig &cfg, const LabelInventory &inv)
    : config(cfg),
      inventory(inv),
      network(inv.size(), cfg.embedding_dim, cfg.LstmLayers()),
      output(cfg.projection_dim, inv.size(), true) {
  if (inv.blank_index() < 0)
    throw VocabularyError("the LM reads the blank row as sentence start; "
                          "it needs a transducer inventory");
}

LmModel LmModel::Random(const LmConfig &cfg, const LabelInventory &inv,
                        Rng *rng) {
  LmModel m(cfg, inv);
  Rng net = rng->Fork("prediction"), out = rng->Fork("lm_output");
  m.network.Initialize(&net);
  m.output.Initialize(&out);
  return m;
}

LmModel LmModel::ZerosLike() const {
  LmModel z;
  z.config = config;
  z.inventory = inventory;
  z.network = network.ZerosLike();
  z.output = output.ZerosLike();
  return z;
}

void LmModel::CollectParams(ParamList *out) {
  network.CollectParams("prediction", out);
  output.CollectParams("lm_output", out, ParamRole::kOutput);
}

Checkpoint LmModel::ToCheckpoint() const {
  ParamList params;
  const_cast<LmModel *>(this)->CollectParams(&params);
  CheckpointMeta meta;
  meta.provenance = "lm";
  meta.architecture = {{"model", "lm"},
                       {"inventory", InventoryKindName(inventory.kind())},
                       {"config", config.ToJson()}};
  meta.labels = inventory.labels();
  meta.blank_index = inventory.blank_index();
  return CheckpointFromParams(params, std::move(meta));
}

LmModel LmModel::FromCheckpoint(const Checkpoint &ckpt) {
  const auto &arch = ckpt.meta.architecture;
  if (!arch.is_object() || arch.value("model", "") != "lm" ||
      !arch.contains("config") || !arch.contains("inventory"))
    throw CodecError(CodecError::Kind::kMeta,
                     "checkpoint does not describe a language model");
  LmConfig cfg;
  LabelInventory inv;
  try {
    cfg = LmConfig::FromJson(arch["config"]);
    inv = LabelInventory(ckpt.meta.labels,
                         ParseInventoryKind(arch["inventory"].get<std::string>()));
  } catch (const Error &e) {
    throw CodecError(CodecError::Kind::kMeta,
                     std::string("LM checkpoint metadata: ") + e.what());
  }
  LmModel m(cfg, inv);
  ParamList params;
  m.CollectParams(&params);
  LoadParams(ckpt, params);
  return m;
}

LossStat LmModel::LossAndGrad(std::span<const int> ids, LmModel *grad) const {
  if (ids.empty()) return LossStat{};
  std::vector<int> inputs;
  inputs.push_back(inventory.blank_index());
  inputs.insert(inputs.end(), ids.begin(), ids.end() - 1);
  PredictionNetwork::Cache cache;
  Tensor h = network.Forward(inputs, grad ? &cache : nullptr);
  Tensor lp = LinearLogSoftmax(output, h);
  Tensor d_logits;
  double loss = CrossEntropy(lp, ids, grad ? &d_logits : nullptr);
  if (grad) {
    Tensor dh = output.Backward(h, d_logits, &grad->output, true);
    network.Backward(cache, dh, &grad->network);
  }
  return LossStat{loss, static_cast<double>(ids.size())};
}

LmTrainResult TrainLm(const std::vector<std::string> &corpus,
                      const LabelInventory &inventory, const LmConfig &config,
                      const TrainOptions &opts,
                      const std::function<void(const EpochRecord &)> &on_epoch) {
  std::vector<std::string> unique = DedupSentences(corpus);
  std::vector<std::vector<int>> encoded;
  for (const auto &s : unique) {
    if (s.empty()) continue;
    encoded.push_back(GraphemeEncode(s, inventory));
  }
  if (encoded.empty()) throw DataError("LM training corpus is empty");

  Rng rng(opts.seed);
  Rng init_rng = rng.Fork("lm-init");
  LmModel model = LmModel::Random(config, inventory, &init_rng);
  std::function<LossStat(const LmModel &, size_t, LmModel *)> loss =
      [&](const LmModel &m, size_t i, LmModel *grad) {
        return m.LossAndGrad(encoded[i], grad);
      };
  LmTrainResult r;
  r.unique_sentences = encoded.size();
  r.log = TrainModel<LmModel>(&model, encoded.size(), opts, loss, on_epoch);
  r.checkpoint = model.ToCheckpoint();
  return r;
}

double Perplexity(const LmModel &lm, const std::vector<std::string> &corpus) {
  double nll = 0.0, count = 0.0;
  for (const auto &s : corpus) {
    if (Trim(s).empty()) continue;
    LossStat st = lm.LossAndGrad(GraphemeEncode(s, lm.inventory), nullptr);
    nll += st.sum;
    count += st.count;
  }
  if (count == 0) throw DataError("perplexity over a corpus with no labels");
  return std::exp(nll / count);
}

}  // namespace rntforge
