// src/nn/layers.cc

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

#include "rntforge/nn/layers.h"

#include <cmath>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/linalg.h"
#include "rntforge/numerics/logmath.h"

namespace rntforge {

std::string_view RoleName(ParamRole role) {
  switch (role) {
    case ParamRole::kEmbedding: return "embedding";
    case ParamRole::kOutput: return "output";
    default: return "generic";
  }
}

ParamRole ParseRole(std::string_view name) {
  if (name == "embedding") return ParamRole::kEmbedding;
  if (name == "output") return ParamRole::kOutput;
  if (name == "generic") return ParamRole::kGeneric;
  throw DomainError("unknown parameter role '" + std::string(name) + "'");
}

void AccumulateParams(const ParamList &into, const ParamList &other,
                      double scale) {
  if (into.size() != other.size())
    throw DimensionError("parameter lists differ in length");
  for (size_t i = 0; i < into.size(); ++i)
    into[i].value->AddScaled(*other[i].value, scale);
}

void ZeroParams(const ParamList &params) {
  for (const auto &p : params) p.value->SetZero();
}

void GlorotUniform(Tensor *w, size_t fan_in, size_t fan_out, Rng *rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double &x : w->data()) x = rng->Uniform(-a, a);
}

Linear::Linear(size_t in, size_t out, bool with_bias) : weight({out, in}) {
  if (with_bias) bias = Tensor({out});
}

void Linear::Initialize(Rng *rng) {
  GlorotUniform(&weight, in_dim(), out_dim(), rng);
  if (has_bias()) bias.SetZero();
}

Linear Linear::ZerosLike() const {
  Linear z;
  z.weight = Tensor(weight.shape());
  if (has_bias()) z.bias = Tensor(bias.shape());
  return z;
}

Tensor Linear::Forward(const Tensor &x) const {
  if (x.rank() != 2 || x.dim(1) != in_dim())
    throw DimensionError("linear layer expects [N x " +
                         std::to_string(in_dim()) + "], got " +
                         x.ShapeString());
  Tensor y = MatmulTransB(x, weight);
  if (has_bias()) {
    for (size_t n = 0; n < y.dim(0); ++n) {
      auto row = y.Row(n);
      for (size_t j = 0; j < row.size(); ++j) row[j] += bias[j];
    }
  }
  return y;
}

Tensor Linear::Backward(const Tensor &x, const Tensor &dy, Linear *grad,
                        bool need_dx) const {
  if (dy.rank() != 2 || dy.dim(0) != x.dim(0) || dy.dim(1) != out_dim())
    throw DimensionError("linear backward: dy " + dy.ShapeString() +
                         " for input " + x.ShapeString());
  Tensor dx;
  if (need_dx) dx = Tensor(x.shape());
  for (size_t n = 0; n < x.dim(0); ++n) {
    auto dyn = dy.Row(n);
    AddOuter(dyn, x.Row(n), &grad->weight);
    if (has_bias())
      for (size_t j = 0; j < dyn.size(); ++j) grad->bias[j] += dyn[j];
    if (need_dx) MatTransVecAdd(weight, dyn, dx.Row(n));
  }
  return dx;
}

void Linear::CollectParams(const std::string &prefix, ParamList *out,
                           ParamRole role) {
  out->push_back({prefix + ".weight", &weight, role});
  if (has_bias()) out->push_back({prefix + ".bias", &bias, role});
}

Embedding::Embedding(size_t vocab, size_t dim) : table({vocab, dim}) {}

void Embedding::Initialize(Rng *rng) {
  GlorotUniform(&table, vocab_size(), dim(), rng);
}

Embedding Embedding::ZerosLike() const {
  Embedding z;
  z.table = Tensor(table.shape());
  return z;
}

Tensor Embedding::Forward(std::span<const int> ids) const {
  if (ids.empty()) throw DimensionError("embedding lookup of empty sequence");
  Tensor out({ids.size(), dim()});
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<size_t>(ids[i]) >= vocab_size())
      throw IndexError("embedding id " + std::to_string(ids[i]) +
                       " out of range for vocabulary of " +
                       std::to_string(vocab_size()));
    auto src = table.Row(ids[i]);
    std::copy(src.begin(), src.end(), out.Row(i).begin());
  }
  return out;
}

void Embedding::Backward(std::span<const int> ids, const Tensor &dy,
                         Embedding *grad) const {
  for (size_t i = 0; i < ids.size(); ++i) {
    auto dst = grad->table.Row(ids[i]);
    auto src = dy.Row(i);
    for (size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
}

void Embedding::CollectParams(const std::string &prefix, ParamList *out) {
  out->push_back({prefix, &table, ParamRole::kEmbedding});
}

Tensor LogSoftmaxRows(const Tensor &logits) {
  if (logits.rank() != 2)
    throw DimensionError("log-softmax expects a matrix, got " +
                         logits.ShapeString());
  Tensor out = logits;
  for (size_t n = 0; n < out.dim(0); ++n) {
    auto row = out.Row(n);
    const double lse = LogSumExp(row);
    for (double &v : row) v -= lse;
  }
  return out;
}

Tensor LinearLogSoftmax(const Linear &layer, const Tensor &inputs) {
  return LogSoftmaxRows(layer.Forward(inputs));
}

double CrossEntropy(const Tensor &log_probs, std::span<const int> targets,
                    Tensor *d_logits) {
  if (log_probs.dim(0) != targets.size())
    throw DimensionError("cross entropy: " + log_probs.ShapeString() +
                         " rows vs " + std::to_string(targets.size()) +
                         " targets");
  const size_t k = log_probs.dim(1);
  if (d_logits) *d_logits = Tensor(log_probs.shape());
  double loss = 0.0;
  for (size_t n = 0; n < targets.size(); ++n) {
    const int y = targets[n];
    if (y < 0 || static_cast<size_t>(y) >= k)
      throw IndexError("target id " + std::to_string(y) + " out of range");
    loss -= log_probs.at(n, y);
    if (d_logits) {
      for (size_t j = 0; j < k; ++j)
        d_logits->at(n, j) = std::exp(log_probs.at(n, j));
      d_logits->at(n, y) -= 1.0;
    }
  }
  return loss;
}

Tensor LogSoftmaxBackward(const Tensor &log_probs, const Tensor &g) {
  Tensor dz(g.shape());
  const size_t k = log_probs.shape().back();
  const size_t rows = log_probs.size() / k;
  const double *lp = log_probs.data().data();
  const double *pg = g.data().data();
  double *out = dz.data().data();
  for (size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (size_t j = 0; j < k; ++j) sum += pg[r * k + j];
    for (size_t j = 0; j < k; ++j)
      out[r * k + j] = pg[r * k + j] - std::exp(lp[r * k + j]) * sum;
  }
  return dz;
}

}  // namespace rntforge
