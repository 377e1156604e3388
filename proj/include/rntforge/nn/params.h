// include/rntforge/nn/params.h

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

#ifndef RNTFORGE_NN_PARAMS_H_
#define RNTFORGE_NN_PARAMS_H_

#include <string>
#include <string_view>
#include <vector>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

// Tags a parameter with whether its shape is tied to a label inventory.
// Transplanting uses the tag, never shape coincidence, to decide whether a
// tensor can cross between inventories.
enum class ParamRole { kGeneric, kEmbedding, kOutput };

std::string_view RoleName(ParamRole role);
ParamRole ParseRole(std::string_view name);
inline bool IsVocabDependent(ParamRole role) {
  return role != ParamRole::kGeneric;
}

struct ParamEntry {
  std::string name;
  Tensor *value;
  ParamRole role;
};

using ParamList = std::vector<ParamEntry>;

// grads[i] += scale * other[i]; lists must come from two models of the same
// architecture.
void AccumulateParams(const ParamList &into, const ParamList &other,
                      double scale = 1.0);
void ZeroParams(const ParamList &params);

}  // namespace rntforge

#endif  // RNTFORGE_NN_PARAMS_H_
