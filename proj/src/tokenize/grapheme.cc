// src/tokenize/grapheme.cc

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

#include "rntforge/tokenize/grapheme.h"

#include <set>

#include "rntforge/numerics/errors.h"

namespace rntforge {

std::vector<std::string> SplitGraphemes(std::string_view word) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < word.size()) {
    const unsigned char c = static_cast<unsigned char>(word[i]);
    size_t len = 1;
    if (c >= 0xf0) len = 4;
    else if (c >= 0xe0) len = 3;
    else if (c >= 0xc0) len = 2;
    len = std::min(len, word.size() - i);
    out.emplace_back(word.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> SplitWords(std::string_view sentence) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    size_t j = i;
    while (j < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[j]))) ++j;
    if (j > i) words.emplace_back(sentence.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

LabelInventory BuildGraphemeInventory(const std::vector<std::string> &corpus) {
  std::set<std::string> graphemes;
  for (const auto &sentence : corpus)
    for (const auto &word : SplitWords(sentence))
      for (auto &g : SplitGraphemes(word)) graphemes.insert(std::move(g));
  if (graphemes.empty())
    throw DomainError("cannot build a grapheme inventory from an empty corpus");
  std::vector<std::string> labels{std::string(kBlankSymbol)};
  for (const auto &g : graphemes)
    labels.push_back(std::string(kWordBoundaryPrefix) + g);
  for (const auto &g : graphemes) labels.push_back(g);
  return LabelInventory(std::move(labels), InventoryKind::kGrapheme);
}

std::vector<std::string> GraphemeLabels(std::string_view sentence) {
  std::vector<std::string> labels;
  for (const auto &word : SplitWords(sentence)) {
    auto gs = SplitGraphemes(word);
    for (size_t i = 0; i < gs.size(); ++i)
      labels.push_back(i == 0 ? std::string(kWordBoundaryPrefix) + gs[i]
                              : gs[i]);
  }
  return labels;
}

std::vector<int> GraphemeEncode(std::string_view sentence,
                                const LabelInventory &inventory) {
  std::vector<int> ids;
  for (const auto &label : GraphemeLabels(sentence)) {
    auto id = inventory.Find(label);
    if (!id || *id == inventory.blank_index()) {
      std::string_view g = label;
      if (HasBoundaryPrefix(g)) g.remove_prefix(kWordBoundaryPrefix.size());
      throw VocabularyError("unknown grapheme '" + std::string(g) + "'");
    }
    ids.push_back(*id);
  }
  return ids;
}

std::string DecodeBoundaryLabels(std::span<const int> ids,
                                 const LabelInventory &inventory,
                                 BoundaryPolicy policy) {
  std::vector<std::string> words;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == inventory.blank_index())
      throw DecodeError("blank label inside a label sequence");
    std::string_view label = inventory.label(ids[i]);
    if (HasBoundaryPrefix(label)) {
      label.remove_prefix(kWordBoundaryPrefix.size());
      words.emplace_back(label);
    } else {
      if (words.empty()) {
        if (policy == BoundaryPolicy::kStrict)
          throw DecodeError("label sequence starts with non-initial label '" +
                            std::string(label) + "'");
        words.emplace_back();
      }
      words.back() += label;
    }
  }
  return JoinWords(words);
}

}  // namespace rntforge
