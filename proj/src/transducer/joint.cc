// src/transducer/joint.cc

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

#include "rntforge/transducer/joint.h"

#include <cmath>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/linalg.h"
#include "rntforge/numerics/logmath.h"

namespace rntforge {

JointNetwork::JointNetwork(size_t encoder_dim, size_t prediction_dim,
                           size_t joint_dim, size_t vocab)
    : encoder_proj(encoder_dim, joint_dim, true),
      prediction_proj(prediction_dim, joint_dim, false),
      output(joint_dim, vocab, false) {}

void JointNetwork::Initialize(Rng *rng) {
  encoder_proj.Initialize(rng);
  prediction_proj.Initialize(rng);
  output.Initialize(rng);
}

JointNetwork JointNetwork::ZerosLike() const {
  JointNetwork z;
  z.encoder_proj = encoder_proj.ZerosLike();
  z.prediction_proj = prediction_proj.ZerosLike();
  z.output = output.ZerosLike();
  return z;
}

void JointNetwork::CollectParams(const std::string &prefix, ParamList *out) {
  encoder_proj.CollectParams(prefix + ".encoder_proj", out);
  prediction_proj.CollectParams(prefix + ".prediction_proj", out);
  output.CollectParams(prefix + ".output", out, ParamRole::kOutput);
}

namespace {

void CheckInputs(const JointNetwork &joint, const Tensor &h_enc,
                 const Tensor &h_pred) {
  if (h_enc.rank() != 2 || h_enc.dim(1) != joint.encoder_proj.in_dim())
    throw DimensionError("joint: encoder output " + h_enc.ShapeString() +
                         " does not fit projection " +
                         joint.encoder_proj.weight.ShapeString());
  if (h_pred.rank() != 2 || h_pred.dim(1) != joint.prediction_proj.in_dim())
    throw DimensionError("joint: prediction output " + h_pred.ShapeString() +
                         " does not fit projection " +
                         joint.prediction_proj.weight.ShapeString());
}

}  // namespace

Tensor JointForward(const JointNetwork &joint, const Tensor &h_enc,
                    const Tensor &h_pred, JointCache *cache) {
  CheckInputs(joint, h_enc, h_pred);
  const size_t T = h_enc.dim(0), U1 = h_pred.dim(0), J = joint.joint_dim();
  const size_t V = joint.vocab_size();
  Tensor e = joint.encoder_proj.Forward(h_enc);
  Tensor p = joint.prediction_proj.Forward(h_pred);
  Tensor hidden({T * U1, J});
  for (size_t t = 0; t < T; ++t) {
    for (size_t u = 0; u < U1; ++u) {
      auto row = hidden.Row(t * U1 + u);
      for (size_t j = 0; j < J; ++j) row[j] = std::tanh(e.at(t, j) + p.at(u, j));
    }
  }
  Tensor lp = LinearLogSoftmax(joint.output, hidden);
  Tensor out({T, U1, V}, lp.values());
  if (cache) {
    cache->hidden = std::move(hidden);
    cache->log_probs = std::move(lp);
  }
  return out;
}

void JointBackward(const JointNetwork &joint, const Tensor &h_enc,
                   const Tensor &h_pred, const JointCache &cache,
                   const Tensor &d_log_probs, JointNetwork *grad,
                   Tensor *d_enc, Tensor *d_pred) {
  const size_t T = h_enc.dim(0), U1 = h_pred.dim(0), J = joint.joint_dim();
  const size_t V = joint.vocab_size();
  if (d_log_probs.size() != T * U1 * V)
    throw DimensionError("joint backward: gradient " +
                         d_log_probs.ShapeString() + " does not match lattice");
  Tensor g({T * U1, V}, d_log_probs.values());
  Tensor dz = LogSoftmaxBackward(cache.log_probs, g);
  Tensor dh = joint.output.Backward(cache.hidden, dz, &grad->output, true);
  Tensor de({T, J}), dp({U1, J});
  for (size_t t = 0; t < T; ++t) {
    for (size_t u = 0; u < U1; ++u) {
      auto h = cache.hidden.Row(t * U1 + u);
      auto d = dh.Row(t * U1 + u);
      for (size_t j = 0; j < J; ++j) {
        double da = d[j] * (1.0 - h[j] * h[j]);
        de.at(t, j) += da;
        dp.at(u, j) += da;
      }
    }
  }
  Tensor dx = joint.encoder_proj.Backward(h_enc, de, &grad->encoder_proj,
                                          d_enc != nullptr);
  if (d_enc) *d_enc = std::move(dx);
  Tensor dy = joint.prediction_proj.Backward(h_pred, dp, &grad->prediction_proj,
                                             d_pred != nullptr);
  if (d_pred) *d_pred = std::move(dy);
}

std::vector<double> JointCellLogProbs(const JointNetwork &joint,
                                      std::span<const double> enc_proj,
                                      std::span<const double> pred_proj) {
  const size_t J = joint.joint_dim();
  std::vector<double> h(J);
  for (size_t j = 0; j < J; ++j) h[j] = std::tanh(enc_proj[j] + pred_proj[j]);
  std::vector<double> z(joint.vocab_size(), 0.0);
  MatVecAdd(joint.output.weight, h, z);
  double lse = LogSumExp(z);
  for (double &v : z) v -= lse;
  return z;
}

}  // namespace rntforge
