// include/rntforge/tokenize/bpe.h

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

#ifndef RNTFORGE_TOKENIZE_BPE_H_
#define RNTFORGE_TOKENIZE_BPE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rntforge/tokenize/label-inventory.h"

namespace rntforge {

struct Merge {
  int rank = 0;
  std::string left;
  std::string right;

  bool operator==(const Merge &) const = default;
};

// Ordered merge list; ranks are 0, 1, 2, ... with no repeated pair.
class MergeTable {
 public:
  MergeTable() = default;
  explicit MergeTable(std::vector<Merge> merges);

  const std::vector<Merge> &merges() const { return merges_; }
  size_t size() const { return merges_.size(); }
  // Rank of (left, right) or -1.
  int RankOf(const std::string &left, const std::string &right) const;

  // Lines "rank<TAB>left<TAB>right".
  void Save(const std::filesystem::path &path) const;
  static MergeTable Load(const std::filesystem::path &path);

  bool operator==(const MergeTable &o) const { return merges_ == o.merges_; }

 private:
  std::vector<Merge> merges_;
  std::map<std::pair<std::string, std::string>, int> rank_;
};

// Greedy byte-pair learning over grapheme sequences: repeatedly merge the
// most frequent adjacent pair, ties to the lexicographically smallest
// (left, right). Stops early when no pair remains.
MergeTable BpeTrain(const std::map<std::string, int64_t> &word_counts,
                    int num_merges);

// Applies merges in rank order, each left-to-right without overlap. Pieces
// are returned without markers.
std::vector<std::string> BpeSegment(std::string_view word,
                                    const MergeTable &merges);

// BpeSegment with the first piece carrying the B_ word-boundary marker.
std::vector<std::string> BpeEncode(std::string_view word,
                                   const MergeTable &merges);

// Word-piece labels for a whole sentence.
std::vector<std::string> WordpieceLabels(std::string_view sentence,
                                         const MergeTable &merges);
std::vector<int> WordpieceEncode(std::string_view sentence,
                                 const MergeTable &merges,
                                 const LabelInventory &inventory);

// Blank plus every piece label produced for the corpus, sorted.
LabelInventory BuildWordpieceInventory(const std::vector<std::string> &corpus,
                                       const MergeTable &merges);

std::map<std::string, int64_t> CountWords(const std::vector<std::string> &corpus);

}  // namespace rntforge

#endif  // RNTFORGE_TOKENIZE_BPE_H_
