// src/tokenize/bpe.cc

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

#include "rntforge/tokenize/bpe.h"

#include <fstream>
#include <set>
#include <sstream>

#include "rntforge/numerics/errors.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

namespace {

using Pair = std::pair<std::string, std::string>;

// Merges every non-overlapping occurrence of (left, right), scanning left
// to right. Returns true if anything changed.
bool ApplyMerge(const std::string &left, const std::string &right,
                std::vector<std::string> *symbols) {
  bool changed = false;
  std::vector<std::string> out;
  out.reserve(symbols->size());
  for (size_t i = 0; i < symbols->size();) {
    if (i + 1 < symbols->size() && (*symbols)[i] == left &&
        (*symbols)[i + 1] == right) {
      out.push_back(left + right);
      i += 2;
      changed = true;
    } else {
      out.push_back(std::move((*symbols)[i]));
      ++i;
    }
  }
  *symbols = std::move(out);
  return changed;
}

}  // namespace

MergeTable::MergeTable(std::vector<Merge> merges) : merges_(std::move(merges)) {
  for (size_t i = 0; i < merges_.size(); ++i) {
    if (merges_[i].rank != static_cast<int>(i))
      throw VocabularyError("merge ranks must be 0, 1, 2, ...; got " +
                            std::to_string(merges_[i].rank) + " at position " +
                            std::to_string(i));
    if (!rank_.emplace(Pair{merges_[i].left, merges_[i].right}, merges_[i].rank)
             .second)
      throw VocabularyError("duplicate merge " + merges_[i].left + " " +
                            merges_[i].right);
  }
}

int MergeTable::RankOf(const std::string &left, const std::string &right) const {
  auto it = rank_.find(Pair{left, right});
  return it == rank_.end() ? -1 : it->second;
}

void MergeTable::Save(const std::filesystem::path &path) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &m : merges_)
    out << m.rank << '\t' << m.left << '\t' << m.right << '\n';
}

MergeTable MergeTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Merge> merges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    Merge m;
    std::string rank;
    if (!std::getline(fields, rank, '\t') || !std::getline(fields, m.left, '\t') ||
        !std::getline(fields, m.right, '\t'))
      throw VocabularyError("malformed merge line: " + line);
    m.rank = std::stoi(rank);
    merges.push_back(std::move(m));
  }
  return MergeTable(std::move(merges));
}

MergeTable BpeTrain(const std::map<std::string, int64_t> &word_counts,
                    int num_merges) {
  std::vector<std::pair<std::vector<std::string>, int64_t>> words;
  for (const auto &[word, count] : word_counts)
    if (!word.empty() && count > 0) words.emplace_back(SplitGraphemes(word), count);

  std::vector<Merge> merges;
  for (int r = 0; r < num_merges; ++r) {
    std::map<Pair, int64_t> counts;
    for (const auto &[symbols, count] : words)
      for (size_t i = 0; i + 1 < symbols.size(); ++i)
        counts[{symbols[i], symbols[i + 1]}] += count;
    if (counts.empty()) break;
    // std::map iterates pairs in lexicographic order, so the first maximum
    // found is the tie-break winner.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    merges.push_back({r, best->first.first, best->first.second});
    for (auto &[symbols, count] : words)
      ApplyMerge(best->first.first, best->first.second, &symbols);
  }
  return MergeTable(std::move(merges));
}

std::vector<std::string> BpeSegment(std::string_view word,
                                    const MergeTable &merges) {
  std::vector<std::string> symbols = SplitGraphemes(word);
  // Equivalent to replaying every merge in rank order, but only visits ranks
  // that occur: each round applies the lowest-ranked pair present whose rank
  // exceeds the last one applied.
  int last = -1;
  while (symbols.size() > 1) {
    int best = -1;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      const int r = merges.RankOf(symbols[i], symbols[i + 1]);
      if (r > last && (best < 0 || r < best)) best = r;
    }
    if (best < 0) break;
    const Merge &m = merges.merges()[best];
    ApplyMerge(m.left, m.right, &symbols);
    last = best;
  }
  return symbols;
}

std::vector<std::string> BpeEncode(std::string_view word,
                                   const MergeTable &merges) {
  auto pieces = BpeSegment(word, merges);
  if (!pieces.empty()) pieces[0] = std::string(kWordBoundaryPrefix) + pieces[0];
  return pieces;
}

std::vector<std::string> WordpieceLabels(std::string_view sentence,
                                         const MergeTable &merges) {
  std::vector<std::string> labels;
  for (const auto &word : SplitWords(sentence))
    for (auto &p : BpeEncode(word, merges)) labels.push_back(std::move(p));
  return labels;
}

std::vector<int> WordpieceEncode(std::string_view sentence,
                                 const MergeTable &merges,
                                 const LabelInventory &inventory) {
  std::vector<int> ids;
  for (const auto &label : WordpieceLabels(sentence, merges)) {
    auto id = inventory.Find(label);
    if (!id || *id == inventory.blank_index())
      throw VocabularyError("unknown word piece '" + label + "'");
    ids.push_back(*id);
  }
  return ids;
}

LabelInventory BuildWordpieceInventory(const std::vector<std::string> &corpus,
                                       const MergeTable &merges) {
  std::set<std::string> pieces;
  for (const auto &sentence : corpus)
    for (auto &p : WordpieceLabels(sentence, merges)) pieces.insert(std::move(p));
  if (pieces.empty())
    throw DomainError("cannot build a word-piece inventory from an empty corpus");
  std::vector<std::string> labels{std::string(kBlankSymbol)};
  labels.insert(labels.end(), pieces.begin(), pieces.end());
  return LabelInventory(std::move(labels), InventoryKind::kWordpiece);
}

std::map<std::string, int64_t> CountWords(const std::vector<std::string> &corpus) {
  std::map<std::string, int64_t> counts;
  for (const auto &sentence : corpus)
    for (const auto &w : SplitWords(sentence)) ++counts[w];
  return counts;
}

}  // namespace rntforge
