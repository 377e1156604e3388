// src/tokenize/label-inventory.cc

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

#include "rntforge/tokenize/label-inventory.h"

#include <fstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

std::string_view InventoryKindName(InventoryKind kind) {
  switch (kind) {
    case InventoryKind::kGrapheme: return "grapheme";
    case InventoryKind::kWordpiece: return "wordpiece";
    case InventoryKind::kFrame: return "frame";
  }
  return "?";
}

InventoryKind ParseInventoryKind(std::string_view name) {
  for (auto k : {InventoryKind::kGrapheme, InventoryKind::kWordpiece,
                 InventoryKind::kFrame})
    if (InventoryKindName(k) == name) return k;
  throw ConfigError("unknown inventory kind '" + std::string(name) + "'");
}

LabelInventory::LabelInventory(std::vector<std::string> labels,
                               InventoryKind kind)
    : labels_(std::move(labels)), kind_(kind) {
  const std::string_view head =
      kind == InventoryKind::kFrame ? kSilenceSymbol : kBlankSymbol;
  if (labels_.empty() || labels_[0] != head)
    throw VocabularyError("inventory must start with " + std::string(head));
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw VocabularyError("empty label in inventory");
    if (i > 0 && (labels_[i] == kBlankSymbol || labels_[i] == kSilenceSymbol))
      throw VocabularyError("reserved symbol " + labels_[i] +
                            " may only appear at index 0");
    if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
      throw VocabularyError("duplicate label " + labels_[i]);
  }
}

const std::string &LabelInventory::label(int id) const {
  if (id < 0 || static_cast<size_t>(id) >= labels_.size())
    throw IndexError("label id " + std::to_string(id) + " out of range");
  return labels_[id];
}

std::optional<int> LabelInventory::Find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int LabelInventory::IdOf(std::string_view label) const {
  auto id = Find(label);
  if (!id) throw VocabularyError("label '" + std::string(label) +
                                 "' not in inventory");
  return *id;
}

LabelInventory LabelInventory::ToFrameInventory() const {
  if (kind_ == InventoryKind::kFrame) return *this;
  std::vector<std::string> labels = labels_;
  labels[0] = std::string(kSilenceSymbol);
  return LabelInventory(std::move(labels), InventoryKind::kFrame);
}

void LabelInventory::Save(const std::filesystem::path &path) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &l : labels_) out << l << '\n';
}

LabelInventory LabelInventory::Load(const std::filesystem::path &path,
                                    InventoryKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  return LabelInventory(std::move(labels), kind);
}

}  // namespace rntforge
