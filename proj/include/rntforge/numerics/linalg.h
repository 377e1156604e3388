// include/rntforge/numerics/linalg.h

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

#ifndef RNTFORGE_NUMERICS_LINALG_H_
#define RNTFORGE_NUMERICS_LINALG_H_

#include <span>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

// a[m x k] * b[k x n]. Accumulation runs over k in increasing order for each
// output element, so results are bit-reproducible.
Tensor Matmul(const Tensor &a, const Tensor &b);

// a[m x k] * b[n x k]^T -> [m x n]. This is the layout of every weight
// matrix in the nn layers (out x in), so it is the hot path.
Tensor MatmulTransB(const Tensor &a, const Tensor &b);

// a[k x m]^T * b[k x n] -> [m x n].
Tensor MatmulTransA(const Tensor &a, const Tensor &b);

// y += W x for W[out x in].
void MatVecAdd(const Tensor &w, std::span<const double> x, std::span<double> y);

// y += W^T x for W[out x in]; x has length out, y has length in.
void MatTransVecAdd(const Tensor &w, std::span<const double> x,
                    std::span<double> y);

// W += scale * a b^T (outer product), W[a.size() x b.size()].
void AddOuter(std::span<const double> a, std::span<const double> b,
              Tensor *w, double scale = 1.0);

Tensor Identity(size_t n);

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_LINALG_H_
