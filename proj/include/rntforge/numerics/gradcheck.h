// include/rntforge/numerics/gradcheck.h

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

#ifndef RNTFORGE_NUMERICS_GRADCHECK_H_
#define RNTFORGE_NUMERICS_GRADCHECK_H_

#include <functional>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

using ScalarFunction = std::function<double(const Tensor &)>;

// Central differences: g_i = (f(p + eps e_i) - f(p - eps e_i)) / (2 eps).
// Throws EvaluationError if f returns a non-finite value.
Tensor FiniteDiffGrad(const ScalarFunction &f, const Tensor &params,
                      double eps = 1e-5);

// ||a - b|| / max(||a||, ||b||), with 0 when both are zero. Norm-wise
// comparison keeps near-zero entries from dominating the check.
double RelativeError(const Tensor &a, const Tensor &b);

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_GRADCHECK_H_
