// src/data/alignment.cc

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

#include "rntforge/data/alignment.h"

#include "rntforge/numerics/errors.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

void ValidateAlignment(const Utterance &utt) {
  const int t_raw = static_cast<int>(utt.num_frames());
  const auto words = SplitWords(utt.transcript);
  if (words.size() != utt.alignment.size())
    throw AlignmentError(utt.id + ": alignment has " +
                         std::to_string(utt.alignment.size()) +
                         " words, transcript " + std::to_string(words.size()));
  int prev_end = -1;
  for (size_t i = 0; i < words.size(); ++i) {
    const WordSpan &s = utt.alignment[i];
    if (s.word != words[i])
      throw AlignmentError(utt.id + ": aligned word '" + s.word +
                           "' does not match transcript word '" + words[i] + "'");
    if (s.start <= prev_end || s.end < s.start || s.end >= t_raw)
      throw AlignmentError(utt.id + ": span [" + std::to_string(s.start) + "," +
                           std::to_string(s.end) + "] for '" + s.word +
                           "' is out of order or outside [0, " +
                           std::to_string(t_raw) + ")");
    prev_end = s.end;
  }
}

std::vector<FrameSpan> SplitWordAlignment(FrameSpan span, int num_pieces) {
  if (num_pieces < 1)
    throw AlignmentError("a word must split into at least one piece");
  const int len = span.length();
  if (len < num_pieces)
    throw AlignmentError("span [" + std::to_string(span.start) + "," +
                         std::to_string(span.end) + "] has " +
                         std::to_string(len) + " frames for " +
                         std::to_string(num_pieces) + " pieces");
  const int base = len / num_pieces, extra = len % num_pieces;
  std::vector<FrameSpan> out;
  int start = span.start;
  for (int p = 0; p < num_pieces; ++p) {
    const int n = base + (p >= num_pieces - extra ? 1 : 0);
    out.push_back({start, start + n - 1});
    start += n;
  }
  return out;
}

std::vector<int> FrameTargets(const Utterance &utt,
                              const LabelInventory &frame_inventory,
                              const TargetMode &mode) {
  if (frame_inventory.kind() != InventoryKind::kFrame)
    throw VocabularyError("frame targets need a frame-level inventory");
  if (utt.alignment.empty() && !utt.transcript.empty())
    throw DataError(utt.id + " has no word alignment");
  ValidateAlignment(utt);
  std::vector<int> targets(utt.num_frames(), 0);
  for (const WordSpan &w : utt.alignment) {
    std::vector<std::string> pieces;
    if (mode.unit == TargetUnit::kGrapheme) {
      pieces = GraphemeLabels(w.word);
    } else {
      if (!mode.merges) throw ConfigError("word-piece targets need a merge table");
      pieces = BpeEncode(w.word, *mode.merges);
    }
    std::vector<int> ids;
    for (const auto &p : pieces) {
      auto id = frame_inventory.Find(p);
      if (!id || *id == 0)
        throw AlignmentError(utt.id + ": word '" + w.word +
                             "' has piece '" + p + "' outside the inventory");
      ids.push_back(*id);
    }
    std::vector<FrameSpan> spans;
    try {
      spans = SplitWordAlignment({w.start, w.end}, static_cast<int>(ids.size()));
    } catch (const AlignmentError &e) {
      throw AlignmentError(utt.id + ": word '" + w.word + "': " + e.what());
    }
    for (size_t p = 0; p < ids.size(); ++p)
      for (int f = spans[p].start; f <= spans[p].end; ++f) targets[f] = ids[p];
  }
  return targets;
}

}  // namespace rntforge
