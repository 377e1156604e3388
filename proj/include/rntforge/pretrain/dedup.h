// include/rntforge/pretrain/dedup.h

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

#ifndef RNTFORGE_PRETRAIN_DEDUP_H_
#define RNTFORGE_PRETRAIN_DEDUP_H_

#include <string>
#include <string_view>
#include <vector>

namespace rntforge {

std::string Trim(std::string_view s);

// Unique sentences after trimming surrounding whitespace, first occurrence
// kept, original order preserved.
std::vector<std::string> DedupSentences(const std::vector<std::string> &corpus);

}  // namespace rntforge

#endif  // RNTFORGE_PRETRAIN_DEDUP_H_
