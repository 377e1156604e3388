// include/rntforge/data/utterance.h

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

#ifndef RNTFORGE_DATA_UTTERANCE_H_
#define RNTFORGE_DATA_UTTERANCE_H_

#include <string>
#include <vector>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

// Word occupying raw (10 ms) frames [start, end], both inclusive.
struct WordSpan {
  std::string word;
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool operator==(const WordSpan &) const = default;
};

struct Utterance {
  std::string id;
  Tensor features;  // raw [T_raw x 80]
  std::string transcript;
  std::vector<WordSpan> alignment;  // optional

  size_t num_frames() const { return features.empty() ? 0 : features.dim(0); }
};

// Spans ordered, non-overlapping, inside [0, T_raw), and spelling the
// transcript's words in order. Throws AlignmentError.
void ValidateAlignment(const Utterance &utt);

}  // namespace rntforge

#endif  // RNTFORGE_DATA_UTTERANCE_H_
