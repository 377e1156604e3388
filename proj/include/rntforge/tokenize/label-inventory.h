// include/rntforge/tokenize/label-inventory.h

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

#ifndef RNTFORGE_TOKENIZE_LABEL_INVENTORY_H_
#define RNTFORGE_TOKENIZE_LABEL_INVENTORY_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rntforge {

inline constexpr std::string_view kBlankSymbol = "<blank>";
inline constexpr std::string_view kSilenceSymbol = "<sil>";
inline constexpr std::string_view kWordBoundaryPrefix = "B_";

enum class InventoryKind { kGrapheme, kWordpiece, kFrame };

std::string_view InventoryKindName(InventoryKind kind);
// Throws ConfigError for an unknown name.
InventoryKind ParseInventoryKind(std::string_view name);

// Ordered label list. Transducer inventories (grapheme, word piece) hold
// the blank at index 0; frame-level CE inventories hold <sil> there
// instead, so CE label k and transducer label k name the same unit.
class LabelInventory {
 public:
  LabelInventory() = default;
  LabelInventory(std::vector<std::string> labels, InventoryKind kind);

  size_t size() const { return labels_.size(); }
  InventoryKind kind() const { return kind_; }
  int blank_index() const { return kind_ == InventoryKind::kFrame ? -1 : 0; }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::string &label(int id) const;

  std::optional<int> Find(std::string_view label) const;
  // Throws VocabularyError naming the label.
  int IdOf(std::string_view label) const;

  // Transducer labels minus blank, plus <sil> at index 0.
  LabelInventory ToFrameInventory() const;

  // One label per line, first line the blank (or silence) literal.
  void Save(const std::filesystem::path &path) const;
  static LabelInventory Load(const std::filesystem::path &path,
                             InventoryKind kind);

  bool operator==(const LabelInventory &o) const {
    return kind_ == o.kind_ && labels_ == o.labels_;
  }

 private:
  std::vector<std::string> labels_;
  InventoryKind kind_ = InventoryKind::kGrapheme;
  std::unordered_map<std::string, int> index_;
};

inline bool HasBoundaryPrefix(std::string_view label) {
  return label.starts_with(kWordBoundaryPrefix);
}

}  // namespace rntforge

#endif  // RNTFORGE_TOKENIZE_LABEL_INVENTORY_H_
