// include/rntforge/transducer/joint.h

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

#ifndef RNTFORGE_TRANSDUCER_JOINT_H_
#define RNTFORGE_TRANSDUCER_JOINT_H_

#include <span>
#include <string>
#include <vector>

#include "rntforge/nn/layers.h"

namespace rntforge {

// z[t,u] = W_out tanh(W_enc h_enc[t] + W_pred h_pred[u] + b), followed by
// a log-softmax over the V output labels.
struct JointNetwork {
  Linear encoder_proj;     // [J x p], carries b
  Linear prediction_proj;  // [J x p'], no bias
  Linear output;           // [V x J], no bias

  JointNetwork() = default;
  JointNetwork(size_t encoder_dim, size_t prediction_dim, size_t joint_dim,
               size_t vocab);

  size_t vocab_size() const { return output.out_dim(); }
  size_t joint_dim() const { return output.in_dim(); }

  void Initialize(Rng *rng);
  JointNetwork ZerosLike() const;
  void CollectParams(const std::string &prefix, ParamList *out);
};

struct JointCache {
  Tensor hidden;     // [T(U+1) x J], tanh activations
  Tensor log_probs;  // [T(U+1) x V]
};

// h_enc [T x p], h_pred [(U+1) x p'] -> log-posteriors [T x (U+1) x V].
// Throws DimensionError when the inputs do not fit the projections.
Tensor JointForward(const JointNetwork &joint, const Tensor &h_enc,
                    const Tensor &h_pred, JointCache *cache = nullptr);

// Backward pass for JointForward given dL/d(log-posteriors). Accumulates
// parameter gradients into grad and writes input gradients when the output
// pointers are non-null.
void JointBackward(const JointNetwork &joint, const Tensor &h_enc,
                   const Tensor &h_pred, const JointCache &cache,
                   const Tensor &d_log_probs, JointNetwork *grad,
                   Tensor *d_enc, Tensor *d_pred);

// One lattice cell from already projected inputs (W_enc h + b and W_pred h).
std::vector<double> JointCellLogProbs(const JointNetwork &joint,
                                      std::span<const double> enc_proj,
                                      std::span<const double> pred_proj);

}  // namespace rntforge

#endif  // RNTFORGE_TRANSDUCER_JOINT_H_
