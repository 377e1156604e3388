// include/rntforge/tokenize/grapheme.h

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

#ifndef RNTFORGE_TOKENIZE_GRAPHEME_H_
#define RNTFORGE_TOKENIZE_GRAPHEME_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rntforge/tokenize/label-inventory.h"

namespace rntforge {

// Splits text into UTF-8 code points. Synthetic corpora are ASCII; no
// normalisation is attempted.
std::vector<std::string> SplitGraphemes(std::string_view word);

std::vector<std::string> SplitWords(std::string_view sentence);
std::string JoinWords(const std::vector<std::string> &words);

// Blank, then sorted B_-prefixed graphemes, then sorted base graphemes:
// size 2G + 1. Throws DomainError on an empty corpus.
LabelInventory BuildGraphemeInventory(const std::vector<std::string> &corpus);

// First grapheme of each word becomes "B_x", the rest plain.
std::vector<std::string> GraphemeLabels(std::string_view sentence);

// Throws VocabularyError naming an unknown grapheme.
std::vector<int> GraphemeEncode(std::string_view sentence,
                                const LabelInventory &inventory);

// What to do when a label sequence does not open with a B_ label.
enum class BoundaryPolicy {
  kStrict,            // DecodeError
  kImplicitBoundary,  // treat the first label as word-initial
};

// Joins B_-delimited label sequences (graphemes or word pieces) back into
// space-separated words. Blank ids raise DecodeError.
std::string DecodeBoundaryLabels(std::span<const int> ids,
                                 const LabelInventory &inventory,
                                 BoundaryPolicy policy = BoundaryPolicy::kStrict);

inline std::string GraphemeDecode(
    std::span<const int> ids, const LabelInventory &inventory,
    BoundaryPolicy policy = BoundaryPolicy::kStrict) {
  return DecodeBoundaryLabels(ids, inventory, policy);
}

}  // namespace rntforge

#endif  // RNTFORGE_TOKENIZE_GRAPHEME_H_
