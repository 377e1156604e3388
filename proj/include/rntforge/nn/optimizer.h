// include/rntforge/nn/optimizer.h

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

#ifndef RNTFORGE_NN_OPTIMIZER_H_
#define RNTFORGE_NN_OPTIMIZER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rntforge/nn/params.h"

namespace rntforge {

struct OptimizerOptions {
  enum class Method { kAdam, kSgd };
  Method method = Method::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Global L2 norm across all gradients; <= 0 disables clipping.
  double clip_norm = 5.0;
};

struct OptimizerState {
  std::vector<std::string> names;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;
  int64_t step = 0;
  double learning_rate = 1e-3;
};

class Optimizer {
 public:
  explicit Optimizer(const OptimizerOptions &options = {});

  // Applies one update. Moments are created lazily on the first call and
  // must keep mirroring the parameter list afterwards. A non-finite gradient
  // throws TrainingError naming the tensor, before any parameter moves.
  void Step(const ParamList &params, const ParamList &grads);

  double learning_rate() const { return state_.learning_rate; }
  void set_learning_rate(double lr) { state_.learning_rate = lr; }
  const OptimizerState &state() const { return state_; }
  const OptimizerOptions &options() const { return options_; }

 private:
  OptimizerOptions options_;
  OptimizerState state_;
};

// Halves the learning rate whenever an epoch's loss fails to improve on the
// best loss so far by at least `min_relative_gain`.
class PlateauHalving {
 public:
  explicit PlateauHalving(double min_relative_gain = 0.01)
      : min_gain_(min_relative_gain) {}

  // Returns true if the rate was halved.
  bool EndEpoch(double loss, Optimizer *opt);

 private:
  double min_gain_;
  double best_ = 0.0;
  bool has_best_ = false;
};

}  // namespace rntforge

#endif  // RNTFORGE_NN_OPTIMIZER_H_
