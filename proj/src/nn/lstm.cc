// src/nn/lstm.cc

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

#include "rntforge/nn/lstm.h"

#include <cmath>

#include "rntforge/nn/layers.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/linalg.h"
#include "rntforge/numerics/logmath.h"

namespace rntforge {

nlohmann::json LstmConfig::ToJson() const {
  return {{"input_dim", input_dim},
          {"hidden_dim", hidden_dim},
          {"projection_dim", projection_dim},
          {"num_layers", num_layers}};
}

LstmConfig LstmConfig::FromJson(const nlohmann::json &j) {
  LstmConfig c;
  for (auto [key, field] : {std::pair{"input_dim", &c.input_dim},
                            std::pair{"hidden_dim", &c.hidden_dim},
                            std::pair{"projection_dim", &c.projection_dim},
                            std::pair{"num_layers", &c.num_layers}}) {
    if (!j.contains(key) || !j[key].is_number_integer() ||
        j[key].get<int64_t>() <= 0)
      throw ConfigError(std::string("LSTM config needs a positive '") + key +
                        "'");
    *field = j[key].get<size_t>();
  }
  return c;
}

namespace {

size_t LayerInputDim(const LstmConfig &config, size_t layer) {
  return layer == 0 ? config.input_dim : config.projection_dim;
}

// Applies the gate nonlinearities in place and advances the cell.
void CellUpdate(size_t hidden, std::span<double> gates,
                std::span<const double> c_prev, std::span<double> c,
                std::span<double> tanh_c, std::span<double> h) {
  for (size_t j = 0; j < hidden; ++j) {
    double &i = gates[j];
    double &f = gates[hidden + j];
    double &g = gates[2 * hidden + j];
    double &o = gates[3 * hidden + j];
    i = Sigmoid(i);
    f = Sigmoid(f);
    g = std::tanh(g);
    o = Sigmoid(o);
    c[j] = f * c_prev[j] + i * g;
    tanh_c[j] = std::tanh(c[j]);
    h[j] = o * tanh_c[j];
  }
}

}  // namespace

LstmStack::LstmStack(const LstmConfig &cfg) : config(cfg) {
  if (cfg.num_layers == 0 || cfg.input_dim == 0 || cfg.hidden_dim == 0 ||
      cfg.projection_dim == 0)
    throw DimensionError("LSTM dimensions and layer count must be positive");
  const size_t h = cfg.hidden_dim, p = cfg.projection_dim;
  for (size_t l = 0; l < cfg.num_layers; ++l) {
    LstmLayer layer;
    layer.w_input = Tensor({4 * h, LayerInputDim(cfg, l)});
    layer.w_recurrent = Tensor({4 * h, p});
    layer.bias = Tensor({4 * h});
    layer.w_projection = Tensor({p, h});
    layers.push_back(std::move(layer));
  }
}

void LstmStack::Initialize(Rng *rng) {
  const size_t h = config.hidden_dim, p = config.projection_dim;
  for (size_t l = 0; l < layers.size(); ++l) {
    LstmLayer &layer = layers[l];
    GlorotUniform(&layer.w_input, LayerInputDim(config, l), 4 * h, rng);
    GlorotUniform(&layer.w_recurrent, p, 4 * h, rng);
    layer.bias.SetZero();
    for (size_t j = h; j < 2 * h; ++j) layer.bias[j] = 1.0;
    GlorotUniform(&layer.w_projection, h, p, rng);
  }
}

LstmStack LstmStack::ZerosLike() const { return LstmStack(config); }

LstmState LstmStack::ZeroState() const {
  LstmState s;
  s.r.assign(layers.size(), std::vector<double>(config.projection_dim, 0.0));
  s.c.assign(layers.size(), std::vector<double>(config.hidden_dim, 0.0));
  return s;
}

Tensor LstmStack::Forward(const Tensor &inputs, const LstmState *init,
                          LstmCache *cache) const {
  if (inputs.rank() != 2 || inputs.dim(1) != config.input_dim)
    throw DimensionError("LSTM expects [T x " +
                         std::to_string(config.input_dim) + "], got " +
                         inputs.ShapeString());
  const size_t T = inputs.dim(0), H = config.hidden_dim,
               P = config.projection_dim;
  if (cache) cache->layers.assign(layers.size(), {});

  Tensor x = inputs;
  for (size_t l = 0; l < layers.size(); ++l) {
    const LstmLayer &layer = layers[l];
    Tensor gates({T, 4 * H}), cells({T, H}), tanh_cells({T, H}),
        hidden({T, H}), outputs({T, P});
    std::vector<double> r0(P, 0.0), c0(H, 0.0);
    if (init) {
      r0 = init->r.at(l);
      c0 = init->c.at(l);
    }
    for (size_t t = 0; t < T; ++t) {
      auto a = gates.Row(t);
      for (size_t j = 0; j < 4 * H; ++j) a[j] = layer.bias[j];
      MatVecAdd(layer.w_input, x.Row(t), a);
      std::span<const double> r_prev = t ? outputs.Row(t - 1)
                                         : std::span<const double>(r0);
      std::span<const double> c_prev = t ? cells.Row(t - 1)
                                         : std::span<const double>(c0);
      MatVecAdd(layer.w_recurrent, r_prev, a);
      CellUpdate(H, a, c_prev, cells.Row(t), tanh_cells.Row(t),
                 hidden.Row(t));
      MatVecAdd(layer.w_projection, hidden.Row(t), outputs.Row(t));
    }
    if (cache) {
      LstmLayerCache &lc = cache->layers[l];
      lc.inputs = std::move(x);
      lc.gates = std::move(gates);
      lc.cells = std::move(cells);
      lc.tanh_cells = std::move(tanh_cells);
      lc.hidden = std::move(hidden);
      lc.outputs = outputs;
      lc.r0 = std::move(r0);
      lc.c0 = std::move(c0);
    }
    x = std::move(outputs);
  }
  return x;
}

Tensor LstmStack::Backward(const LstmCache &cache, const Tensor &d_outputs,
                           LstmStack *grad, bool need_dinput) const {
  const size_t H = config.hidden_dim, P = config.projection_dim;
  if (cache.layers.size() != layers.size())
    throw DimensionError("LSTM backward called with a mismatched cache");
  Tensor d_out = d_outputs;
  for (size_t l = layers.size(); l-- > 0;) {
    const LstmLayer &layer = layers[l];
    LstmLayer &g = grad->layers[l];
    const LstmLayerCache &lc = cache.layers[l];
    const size_t T = lc.inputs.dim(0);
    if (d_out.rank() != 2 || d_out.dim(0) != T || d_out.dim(1) != P)
      throw DimensionError("LSTM backward: d_outputs " + d_out.ShapeString());

    Tensor d_gates({T, 4 * H});
    std::vector<double> dr_next(P, 0.0), dc_next(H, 0.0), dh(H), dr(P);
    for (size_t t = T; t-- > 0;) {
      auto dout_t = d_out.Row(t);
      for (size_t j = 0; j < P; ++j) dr[j] = dout_t[j] + dr_next[j];
      AddOuter(dr, lc.hidden.Row(t), &g.w_projection);
      std::fill(dh.begin(), dh.end(), 0.0);
      MatTransVecAdd(layer.w_projection, dr, dh);

      auto gates = lc.gates.Row(t);
      auto tc = lc.tanh_cells.Row(t);
      std::span<const double> c_prev =
          t ? lc.cells.Row(t - 1) : std::span<const double>(lc.c0);
      auto da = d_gates.Row(t);
      for (size_t j = 0; j < H; ++j) {
        const double i = gates[j], f = gates[H + j], gc = gates[2 * H + j],
                     o = gates[3 * H + j];
        const double d_o = dh[j] * tc[j];
        const double dc = dc_next[j] + dh[j] * o * (1.0 - tc[j] * tc[j]);
        da[j] = dc * gc * i * (1.0 - i);
        da[H + j] = dc * c_prev[j] * f * (1.0 - f);
        da[2 * H + j] = dc * i * (1.0 - gc * gc);
        da[3 * H + j] = d_o * o * (1.0 - o);
        dc_next[j] = dc * f;
      }
      std::span<const double> r_prev =
          t ? lc.outputs.Row(t - 1) : std::span<const double>(lc.r0);
      AddOuter(da, r_prev, &g.w_recurrent);
      for (size_t j = 0; j < 4 * H; ++j) g.bias[j] += da[j];
      std::fill(dr_next.begin(), dr_next.end(), 0.0);
      MatTransVecAdd(layer.w_recurrent, da, dr_next);
    }

    const bool need_dx = l > 0 || need_dinput;
    Tensor dx;
    if (need_dx) dx = Tensor(lc.inputs.shape());
    for (size_t t = 0; t < T; ++t) {
      AddOuter(d_gates.Row(t), lc.inputs.Row(t), &g.w_input);
      if (need_dx) MatTransVecAdd(layer.w_input, d_gates.Row(t), dx.Row(t));
    }
    d_out = std::move(dx);
  }
  return d_out;
}

std::vector<double> LstmStack::Step(std::span<const double> x,
                                    LstmState *state) const {
  if (x.size() != config.input_dim)
    throw DimensionError("LSTM step expects input of size " +
                         std::to_string(config.input_dim));
  const size_t H = config.hidden_dim, P = config.projection_dim;
  std::vector<double> in(x.begin(), x.end());
  std::vector<double> a(4 * H), c(H), tc(H), h(H);
  for (size_t l = 0; l < layers.size(); ++l) {
    const LstmLayer &layer = layers[l];
    for (size_t j = 0; j < 4 * H; ++j) a[j] = layer.bias[j];
    MatVecAdd(layer.w_input, in, a);
    MatVecAdd(layer.w_recurrent, state->r[l], a);
    CellUpdate(H, a, state->c[l], c, tc, h);
    std::vector<double> r(P, 0.0);
    MatVecAdd(layer.w_projection, h, r);
    state->c[l] = c;
    state->r[l] = r;
    in = std::move(r);
  }
  return in;
}

void LstmStack::CollectParams(const std::string &prefix, ParamList *out) {
  for (size_t l = 0; l < layers.size(); ++l) {
    const std::string p = prefix + ".layer" + std::to_string(l);
    out->push_back({p + ".w_input", &layers[l].w_input, ParamRole::kGeneric});
    out->push_back(
        {p + ".w_recurrent", &layers[l].w_recurrent, ParamRole::kGeneric});
    out->push_back({p + ".bias", &layers[l].bias, ParamRole::kGeneric});
    out->push_back(
        {p + ".w_projection", &layers[l].w_projection, ParamRole::kGeneric});
  }
}

}  // namespace rntforge
