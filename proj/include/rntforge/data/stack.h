// include/rntforge/data/stack.h

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

#ifndef RNTFORGE_DATA_STACK_H_
#define RNTFORGE_DATA_STACK_H_

#include <span>
#include <vector>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

// Eight 10 ms frames per stacked vector, advancing three frames (30 ms).
struct StackOptions {
  int window = 8;
  int shift = 3;
};

// floor((T_raw - window) / shift) + 1, or 0 if T_raw < window.
size_t NumStackedFrames(size_t num_raw, const StackOptions &opts = {});

// [T_raw x d] -> [T x window*d]; stacked[i] = raw[shift*i .. shift*i+window)
// concatenated. Incomplete trailing windows are dropped. Throws DomainError
// when T_raw < window.
Tensor StackFrames(const Tensor &raw, const StackOptions &opts = {});

// Raw frame whose label a stacked frame inherits: shift*i + window/2.
size_t StackedLabelFrame(size_t stacked_index, const StackOptions &opts = {});

// Picks one raw-rate label per stacked frame via StackedLabelFrame.
std::vector<int> SubsampleTargets(std::span<const int> raw_targets,
                                  const StackOptions &opts = {});

}  // namespace rntforge

#endif  // RNTFORGE_DATA_STACK_H_
