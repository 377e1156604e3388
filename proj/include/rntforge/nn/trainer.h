// include/rntforge/nn/trainer.h

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

#ifndef RNTFORGE_NN_TRAINER_H_
#define RNTFORGE_NN_TRAINER_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numeric>
#include <vector>

#include "rntforge/nn/optimizer.h"
#include "rntforge/nn/params.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/parallel.h"
#include "rntforge/numerics/rng.h"

namespace rntforge {

struct TrainOptions {
  int epochs = 6;
  int batch_size = 4;
  // Examples drawn per epoch; 0 means one pass over the data. Larger values
  // cycle through reshuffled passes, so an epoch is a fixed quantum of
  // examples independent of the dataset size.
  int epoch_examples = 0;
  OptimizerOptions optimizer;
  bool halve_on_plateau = true;
  uint64_t seed = 42;
};

// Loss summed over `count` normalisation units (utterances, frames, tokens).
struct LossStat {
  double sum = 0.0;
  double count = 0.0;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;  // mean per unit over the epoch
  double learning_rate = 0.0;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;

  // CSV "epoch,loss" or "epoch,loss,perplexity".
  void WriteCsv(const std::filesystem::path &path, bool with_perplexity) const;
};

// Mini-batch training with per-example gradients computed in parallel and
// reduced in example order, so results are independent of the thread count.
// Model needs ZerosLike() and CollectParams(ParamList*); loss_fn computes
// the summed loss of one example and accumulates its gradient into `grad`.
template <class Model>
TrainLog TrainModel(
    Model *model, size_t num_examples, const TrainOptions &opts,
    const std::function<LossStat(const Model &, size_t, Model *)> &loss_fn,
    const std::function<void(const EpochRecord &)> &on_epoch = {}) {
  TrainLog log;
  if (opts.epochs <= 0) return log;
  if (num_examples == 0) throw DataError("training set is empty");
  if (opts.batch_size <= 0) throw ConfigError("batch size must be positive");

  Optimizer optimizer(opts.optimizer);
  PlateauHalving schedule;
  Rng rng(opts.seed);
  std::vector<size_t> order(num_examples);
  std::iota(order.begin(), order.end(), 0);
  size_t cursor = num_examples;  // forces a shuffle on first use

  ParamList params;
  model->CollectParams(&params);
  const size_t per_epoch =
      opts.epoch_examples > 0 ? static_cast<size_t>(opts.epoch_examples)
                              : num_examples;
  const size_t batch = static_cast<size_t>(opts.batch_size);

  std::vector<Model> grads;
  std::vector<ParamList> grad_params;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    LossStat epoch_stat;
    for (size_t done = 0; done < per_epoch;) {
      const size_t n = std::min(batch, per_epoch - done);
      std::vector<size_t> items(n);
      for (size_t i = 0; i < n; ++i) {
        if (cursor == num_examples) {
          std::iota(order.begin(), order.end(), 0);
          rng.Shuffle(&order);
          cursor = 0;
        }
        items[i] = order[cursor++];
      }
      if (grads.size() < n) {
        grads.resize(n, model->ZerosLike());
        grad_params.resize(n);
        for (size_t i = 0; i < n; ++i) {
          grad_params[i].clear();
          grads[i].CollectParams(&grad_params[i]);
        }
      }
      std::vector<LossStat> stats(n);
      ParallelFor(n, [&](size_t i) {
        ZeroParams(grad_params[i]);
        stats[i] = loss_fn(*model, items[i], &grads[i]);
      });
      double count = 0.0;
      for (size_t i = 0; i < n; ++i) {
        epoch_stat.sum += stats[i].sum;
        epoch_stat.count += stats[i].count;
        count += stats[i].count;
      }
      if (!std::isfinite(epoch_stat.sum))
        throw TrainingError("training loss became non-finite in epoch " +
                            std::to_string(epoch));
      for (size_t i = 1; i < n; ++i)
        AccumulateParams(grad_params[0], grad_params[i]);
      if (count > 0) {
        for (auto &g : grad_params[0]) g.value->Scale(1.0 / count);
        optimizer.Step(params, grad_params[0]);
      }
      done += n;
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = epoch_stat.count > 0 ? epoch_stat.sum / epoch_stat.count : 0.0;
    rec.learning_rate = optimizer.learning_rate();
    log.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (opts.halve_on_plateau) schedule.EndEpoch(rec.loss, &optimizer);
  }
  return log;
}

}  // namespace rntforge

#endif  // RNTFORGE_NN_TRAINER_H_
