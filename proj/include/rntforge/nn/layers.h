// include/rntforge/nn/layers.h

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

#ifndef RNTFORGE_NN_LAYERS_H_
#define RNTFORGE_NN_LAYERS_H_

#include <span>
#include <string>
#include <vector>

#include "rntforge/nn/params.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/numerics/tensor.h"

namespace rntforge {

// uniform(-a, a), a = sqrt(6 / (fan_in + fan_out)).
void GlorotUniform(Tensor *w, size_t fan_in, size_t fan_out, Rng *rng);

// Affine map y = W x + b with W stored [out x in]. bias may be empty.
struct Linear {
  Tensor weight;
  Tensor bias;

  Linear() = default;
  Linear(size_t in, size_t out, bool with_bias);

  size_t in_dim() const { return weight.dim(1); }
  size_t out_dim() const { return weight.dim(0); }
  bool has_bias() const { return !bias.empty(); }

  void Initialize(Rng *rng);
  Linear ZerosLike() const;

  // x[N x in] -> [N x out].
  Tensor Forward(const Tensor &x) const;
  // Accumulates dW, db into grad. Returns dx when need_dx, else an empty
  // tensor.
  Tensor Backward(const Tensor &x, const Tensor &dy, Linear *grad,
                  bool need_dx) const;

  void CollectParams(const std::string &prefix, ParamList *out,
                     ParamRole role = ParamRole::kGeneric);
};

// Lookup table [V x e].
struct Embedding {
  Tensor table;

  Embedding() = default;
  Embedding(size_t vocab, size_t dim);

  size_t vocab_size() const { return table.dim(0); }
  size_t dim() const { return table.dim(1); }

  void Initialize(Rng *rng);
  Embedding ZerosLike() const;

  // Throws IndexError naming the offending id.
  Tensor Forward(std::span<const int> ids) const;
  void Backward(std::span<const int> ids, const Tensor &dy,
                Embedding *grad) const;

  void CollectParams(const std::string &prefix, ParamList *out);
};

// Row-wise log-softmax of a [N x K] matrix.
Tensor LogSoftmaxRows(const Tensor &logits);

// Output layer followed by log-softmax.
Tensor LinearLogSoftmax(const Linear &layer, const Tensor &inputs);

// Summed cross entropy of rows of log-probabilities against target ids.
// d_logits receives softmax - onehot per row (gradient of the sum with
// respect to the pre-softmax logits).
double CrossEntropy(const Tensor &log_probs, std::span<const int> targets,
                    Tensor *d_logits);

// Gradient through log-softmax: given g = dL/d(log p), returns dL/dz for
// every row: g - p * sum(g).
Tensor LogSoftmaxBackward(const Tensor &log_probs, const Tensor &g);

}  // namespace rntforge

#endif  // RNTFORGE_NN_LAYERS_H_
