// include/rntforge/data/alignment.h

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

#ifndef RNTFORGE_DATA_ALIGNMENT_H_
#define RNTFORGE_DATA_ALIGNMENT_H_

#include <vector>

#include "rntforge/data/utterance.h"
#include "rntforge/tokenize/bpe.h"
#include "rntforge/tokenize/label-inventory.h"

namespace rntforge {

struct FrameSpan {
  int start = 0;
  int end = 0;  // inclusive

  int length() const { return end - start + 1; }
  bool operator==(const FrameSpan &) const = default;
};

// Splits a word's frames evenly among its pieces: every piece gets
// floor(L/n) frames and the last L mod n pieces one more. Throws
// AlignmentError when L < n.
std::vector<FrameSpan> SplitWordAlignment(FrameSpan span, int num_pieces);

enum class TargetUnit { kGrapheme, kWordpiece };

struct TargetMode {
  TargetUnit unit = TargetUnit::kGrapheme;
  const MergeTable *merges = nullptr;  // required for kWordpiece
};

// Per-raw-frame CE labels over a frame inventory (<sil> at index 0). Frames
// outside every word span are silence. Throws AlignmentError naming the word
// when it cannot be encoded or has fewer frames than pieces.
std::vector<int> FrameTargets(const Utterance &utt,
                              const LabelInventory &frame_inventory,
                              const TargetMode &mode);

}  // namespace rntforge

#endif  // RNTFORGE_DATA_ALIGNMENT_H_
