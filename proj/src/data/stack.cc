// src/data/stack.cc

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

#include "rntforge/data/stack.h"

#include <algorithm>

#include "rntforge/numerics/errors.h"

namespace rntforge {

size_t NumStackedFrames(size_t num_raw, const StackOptions &opts) {
  if (num_raw < static_cast<size_t>(opts.window)) return 0;
  return (num_raw - opts.window) / opts.shift + 1;
}

Tensor StackFrames(const Tensor &raw, const StackOptions &opts) {
  if (opts.window <= 0 || opts.shift <= 0)
    throw ConfigError("stacking window and shift must be positive");
  if (raw.rank() != 2)
    throw DimensionError("frame stacking expects [T x d], got " + raw.ShapeString());
  const size_t t_raw = raw.dim(0), d = raw.dim(1);
  if (t_raw < static_cast<size_t>(opts.window))
    throw DomainError("need at least " + std::to_string(opts.window) +
                      " frames to stack, got " + std::to_string(t_raw));
  const size_t n = NumStackedFrames(t_raw, opts);
  Tensor out({n, d * opts.window});
  for (size_t i = 0; i < n; ++i) {
    auto dst = out.Row(i);
    for (int w = 0; w < opts.window; ++w) {
      auto src = raw.Row(i * opts.shift + w);
      std::copy(src.begin(), src.end(), dst.begin() + w * d);
    }
  }
  return out;
}

size_t StackedLabelFrame(size_t stacked_index, const StackOptions &opts) {
  return stacked_index * opts.shift + opts.window / 2;
}

std::vector<int> SubsampleTargets(std::span<const int> raw_targets,
                                  const StackOptions &opts) {
  const size_t n = NumStackedFrames(raw_targets.size(), opts);
  std::vector<int> out(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = raw_targets[std::min(StackedLabelFrame(i, opts),
                                  raw_targets.size() - 1)];
  return out;
}

}  // namespace rntforge
