// src/numerics/gradcheck.cc

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

#include "rntforge/numerics/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "rntforge/numerics/errors.h"

namespace rntforge {

Tensor FiniteDiffGrad(const ScalarFunction &f, const Tensor &params,
                      double eps) {
  if (!(eps > 0.0)) throw DomainError("finite difference step must be > 0");
  Tensor grad(params.shape());
  Tensor probe = params;
  for (size_t i = 0; i < params.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + eps;
    const double plus = f(probe);
    probe[i] = orig - eps;
    const double minus = f(probe);
    probe[i] = orig;
    if (!std::isfinite(plus) || !std::isfinite(minus))
      throw EvaluationError("function value is not finite at coordinate " +
                            std::to_string(i));
    grad[i] = (plus - minus) / (2.0 * eps);
  }
  return grad;
}

double RelativeError(const Tensor &a, const Tensor &b) {
  if (!a.SameShape(b))
    throw DimensionError("RelativeError: " + a.ShapeString() + " vs " +
                         b.ShapeString());
  double diff = 0.0;
  for (size_t i = 0; i < a.size(); ++i) diff += (a[i] - b[i]) * (a[i] - b[i]);
  const double scale =
      std::max(std::sqrt(a.SquaredNorm()), std::sqrt(b.SquaredNorm()));
  if (scale == 0.0) return std::sqrt(diff);
  return std::sqrt(diff) / scale;
}

}  // namespace rntforge
