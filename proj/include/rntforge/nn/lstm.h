// include/rntforge/nn/lstm.h

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

#ifndef RNTFORGE_NN_LSTM_H_
#define RNTFORGE_NN_LSTM_H_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rntforge/nn/params.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/numerics/tensor.h"

namespace rntforge {

struct LstmConfig {
  size_t input_dim = 0;
  size_t hidden_dim = 64;
  size_t projection_dim = 32;
  size_t num_layers = 1;

  bool operator==(const LstmConfig &) const = default;

  nlohmann::json ToJson() const;
  // Throws ConfigError on missing or non-positive fields.
  static LstmConfig FromJson(const nlohmann::json &j);
};

// One projected LSTM layer. Gate rows are stacked in the order
// input, forget, cell candidate, output:
//   a_t = W_x x_t + W_r r_{t-1} + b
//   c_t = f * c_{t-1} + i * g,  h_t = o * tanh(c_t),  r_t = W_p h_t
struct LstmLayer {
  Tensor w_input;       // [4H x in]
  Tensor w_recurrent;   // [4H x P]
  Tensor bias;          // [4H]
  Tensor w_projection;  // [P x H]
};

// Recurrent state r (projected output) and c (cell) per layer.
struct LstmState {
  std::vector<std::vector<double>> r;
  std::vector<std::vector<double>> c;
};

struct LstmLayerCache {
  Tensor inputs;      // [T x in]
  Tensor gates;       // [T x 4H], post-activation
  Tensor cells;       // [T x H]
  Tensor tanh_cells;  // [T x H]
  Tensor hidden;      // [T x H]
  Tensor outputs;     // [T x P]
  std::vector<double> r0, c0;
};

struct LstmCache {
  std::vector<LstmLayerCache> layers;
};

struct LstmStack {
  LstmConfig config;
  std::vector<LstmLayer> layers;

  LstmStack() = default;
  // All weights zero; call Initialize for a trainable start.
  explicit LstmStack(const LstmConfig &config);

  size_t output_dim() const { return config.projection_dim; }

  // Glorot-uniform matrices, zero biases, forget-gate bias +1.
  void Initialize(Rng *rng);
  LstmStack ZerosLike() const;

  LstmState ZeroState() const;

  // inputs [T x input_dim] -> [T x projection_dim]. When cache is non-null
  // it receives everything Backward needs. A null init means zero state.
  Tensor Forward(const Tensor &inputs, const LstmState *init,
                 LstmCache *cache) const;

  // Accumulates parameter gradients into grad. Returns d inputs when
  // need_dinput, else an empty tensor. Gradients do not flow into the
  // initial state.
  Tensor Backward(const LstmCache &cache, const Tensor &d_outputs,
                  LstmStack *grad, bool need_dinput) const;

  // Single time step through every layer, for incremental decoding.
  std::vector<double> Step(std::span<const double> x, LstmState *state) const;

  void CollectParams(const std::string &prefix, ParamList *out);
};

}  // namespace rntforge

#endif  // RNTFORGE_NN_LSTM_H_
