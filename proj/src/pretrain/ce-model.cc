// src/pretrain/ce-model.cc

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

#include "rntforge/pretrain/ce-model.h"

#include <algorithm>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/parallel.h"

namespace rntforge {

CeModel::CeModel(const LstmConfig &cfg, const LabelInventory &inv)
    : encoder_config(cfg),
      inventory(inv),
      encoder(cfg),
      output(cfg.projection_dim, inv.size(), true) {
  if (inv.kind() != InventoryKind::kFrame)
    throw VocabularyError("a CE model needs a frame-level inventory");
}

CeModel CeModel::Random(const LstmConfig &cfg, const LabelInventory &inv,
                        Rng *rng) {
  CeModel m(cfg, inv);
  Rng enc = rng->Fork("encoder"), out = rng->Fork("ce_output");
  m.encoder.Initialize(&enc);
  m.output.Initialize(&out);
  return m;
}

CeModel CeModel::ZerosLike() const {
  CeModel z;
  z.encoder_config = encoder_config;
  z.inventory = inventory;
  z.encoder = encoder.ZerosLike();
  z.output = output.ZerosLike();
  return z;
}

void CeModel::CollectParams(ParamList *out) {
  encoder.CollectParams("encoder", out);
  output.CollectParams("ce_output", out, ParamRole::kOutput);
}

Checkpoint CeModel::ToCheckpoint() const {
  ParamList params;
  const_cast<CeModel *>(this)->CollectParams(&params);
  CheckpointMeta meta;
  meta.provenance = "ce";
  meta.architecture = {{"model", "ce"}, {"encoder", encoder_config.ToJson()}};
  meta.labels = inventory.labels();
  meta.blank_index = -1;
  return CheckpointFromParams(params, std::move(meta));
}

CeModel CeModel::FromCheckpoint(const Checkpoint &ckpt) {
  const auto &arch = ckpt.meta.architecture;
  if (!arch.is_object() || arch.value("model", "") != "ce" ||
      !arch.contains("encoder"))
    throw CodecError(CodecError::Kind::kMeta,
                     "checkpoint does not describe a CE model");
  LstmConfig cfg;
  LabelInventory inv;
  try {
    cfg = LstmConfig::FromJson(arch["encoder"]);
    inv = LabelInventory(ckpt.meta.labels, InventoryKind::kFrame);
  } catch (const Error &e) {
    throw CodecError(CodecError::Kind::kMeta,
                     std::string("CE checkpoint metadata: ") + e.what());
  }
  CeModel m(cfg, inv);
  ParamList params;
  m.CollectParams(&params);
  LoadParams(ckpt, params);
  return m;
}

Tensor CeModel::LogPosteriors(const Tensor &features) const {
  return LinearLogSoftmax(output, encoder.Forward(features, nullptr, nullptr));
}

LossStat CeModel::LossAndGrad(const Tensor &features,
                              std::span<const int> targets,
                              CeModel *grad) const {
  if (targets.size() != features.dim(0))
    throw DataError("CE example has " + std::to_string(features.dim(0)) +
                    " frames but " + std::to_string(targets.size()) +
                    " targets");
  LstmCache cache;
  Tensor h = encoder.Forward(features, nullptr, grad ? &cache : nullptr);
  Tensor lp = LinearLogSoftmax(output, h);
  Tensor d_logits;
  double loss = CrossEntropy(lp, targets, grad ? &d_logits : nullptr);
  if (grad) {
    Tensor dh = output.Backward(h, d_logits, &grad->output, true);
    encoder.Backward(cache, dh, &grad->encoder, false);
  }
  return LossStat{loss, static_cast<double>(targets.size())};
}

CeExample MakeCeExample(const Utterance &utt,
                        const LabelInventory &frame_inventory,
                        const TargetMode &mode, const StackOptions &stack) {
  std::vector<int> raw = FrameTargets(utt, frame_inventory, mode);
  return MakeCeExampleFromFrameLabels(utt, raw, stack);
}

CeExample MakeCeExampleFromFrameLabels(const Utterance &utt,
                                       std::span<const int> raw_labels,
                                       const StackOptions &stack) {
  if (raw_labels.size() != utt.num_frames())
    throw DataError(utt.id + ": " + std::to_string(raw_labels.size()) +
                    " frame labels for " + std::to_string(utt.num_frames()) +
                    " frames");
  CeExample ex;
  ex.id = utt.id;
  ex.features = StackFrames(utt.features, stack);
  ex.targets = SubsampleTargets(raw_labels, stack);
  return ex;
}

namespace {

void InitializeFrom(const Checkpoint &init, CeModel *model) {
  ParamList params;
  model->CollectParams(&params);
  const bool same_inventory = init.meta.labels == model->inventory.labels();
  for (const auto &p : params) {
    const bool is_encoder = p.name.starts_with("encoder.");
    if (!is_encoder && !same_inventory) continue;
    const CheckpointTensor *src = init.Find(p.name);
    if (!src) {
      if (is_encoder)
        throw TransplantError("CE init checkpoint lacks " + p.name);
      continue;
    }
    if (!src->value.SameShape(*p.value))
      throw TransplantError("CE init tensor " + p.name + " has shape " +
                            src->value.ShapeString() + ", model expects " +
                            p.value->ShapeString());
    *p.value = src->value;
  }
}

}  // namespace

CeTrainResult TrainCe(const std::vector<CeExample> &examples,
                      const LabelInventory &inventory,
                      const LstmConfig &encoder_config,
                      const TrainOptions &opts, const Checkpoint *init,
                      const std::function<void(const EpochRecord &)> &on_epoch) {
  for (const auto &ex : examples) {
    if (ex.targets.empty() || ex.targets.size() != ex.features.dim(0))
      throw DataError("CE example " + ex.id + " lacks frame targets");
    for (int t : ex.targets)
      if (t < 0 || t >= static_cast<int>(inventory.size()))
        throw DataError("CE example " + ex.id + " has target " +
                        std::to_string(t) + " outside the inventory");
  }
  Rng rng(opts.seed);
  Rng init_rng = rng.Fork("ce-init");
  CeModel model = CeModel::Random(encoder_config, inventory, &init_rng);
  if (init) InitializeFrom(*init, &model);

  std::function<LossStat(const CeModel &, size_t, CeModel *)> loss =
      [&](const CeModel &m, size_t i, CeModel *grad) {
        return m.LossAndGrad(examples[i].features, examples[i].targets, grad);
      };
  CeTrainResult r;
  r.log = TrainModel<CeModel>(&model, examples.size(), opts, loss, on_epoch);
  r.checkpoint = model.ToCheckpoint();
  if (init) r.checkpoint.meta.attributes = init->meta.attributes;
  return r;
}

double FrameAccuracy(const CeModel &model,
                     const std::vector<CeExample> &examples) {
  std::vector<size_t> correct(examples.size()), total(examples.size());
  ParallelFor(examples.size(), [&](size_t i) {
    Tensor lp = model.LogPosteriors(examples[i].features);
    for (size_t t = 0; t < lp.dim(0); ++t) {
      auto row = lp.Row(t);
      int best = static_cast<int>(std::max_element(row.begin(), row.end()) -
                                  row.begin());
      correct[i] += best == examples[i].targets[t];
    }
    total[i] = lp.dim(0);
  });
  size_t c = 0, n = 0;
  for (size_t i = 0; i < examples.size(); ++i) {
    c += correct[i];
    n += total[i];
  }
  if (n == 0) throw DataError("frame accuracy over an empty set");
  return static_cast<double>(c) / static_cast<double>(n);
}

}  // namespace rntforge
