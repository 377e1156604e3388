// src/nn/optimizer.cc

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

#include "rntforge/nn/optimizer.h"

#include <cmath>

#include "rntforge/numerics/errors.h"

namespace rntforge {

Optimizer::Optimizer(const OptimizerOptions &options) : options_(options) {
  state_.learning_rate = options.learning_rate;
}

void Optimizer::Step(const ParamList &params, const ParamList &grads) {
  if (params.size() != grads.size())
    throw TrainingError("optimizer: parameter and gradient lists differ");
  double sq = 0.0;
  for (size_t i = 0; i < grads.size(); ++i) {
    if (!params[i].value->SameShape(*grads[i].value))
      throw TrainingError("optimizer: gradient shape mismatch for " +
                          params[i].name);
    if (!grads[i].value->AllFinite())
      throw TrainingError("non-finite gradient in tensor " + params[i].name);
    sq += grads[i].value->SquaredNorm();
  }
  double scale = 1.0;
  const double norm = std::sqrt(sq);
  if (options_.clip_norm > 0.0 && norm > options_.clip_norm)
    scale = options_.clip_norm / norm;

  const double lr = state_.learning_rate;
  if (options_.method == OptimizerOptions::Method::kSgd) {
    for (size_t i = 0; i < params.size(); ++i)
      params[i].value->AddScaled(*grads[i].value, -lr * scale);
    ++state_.step;
    return;
  }

  if (state_.first_moment.empty()) {
    for (const auto &p : params) {
      state_.names.push_back(p.name);
      state_.first_moment.emplace_back(p.value->shape());
      state_.second_moment.emplace_back(p.value->shape());
    }
  } else if (state_.names.size() != params.size()) {
    throw TrainingError("optimizer state does not mirror parameters");
  }

  ++state_.step;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state_.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state_.step));
  for (size_t i = 0; i < params.size(); ++i) {
    auto p = params[i].value->data();
    auto g = grads[i].value->data();
    auto m = state_.first_moment[i].data();
    auto v = state_.second_moment[i].data();
    for (size_t k = 0; k < p.size(); ++k) {
      const double gk = g[k] * scale;
      m[k] = b1 * m[k] + (1.0 - b1) * gk;
      v[k] = b2 * v[k] + (1.0 - b2) * gk * gk;
      const double mhat = m[k] / c1;
      const double vhat = v[k] / c2;
      p[k] -= lr * mhat / (std::sqrt(vhat) + options_.epsilon);
    }
  }
}

bool PlateauHalving::EndEpoch(double loss, Optimizer *opt) {
  if (!has_best_) {
    has_best_ = true;
    best_ = loss;
    return false;
  }
  const bool improved = loss < best_ * (1.0 - min_gain_);
  if (loss < best_) best_ = loss;
  if (improved) return false;
  opt->set_learning_rate(opt->learning_rate() * 0.5);
  return true;
}

}  // namespace rntforge
