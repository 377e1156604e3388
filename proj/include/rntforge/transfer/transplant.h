// include/rntforge/transfer/transplant.h

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

#ifndef RNTFORGE_TRANSFER_TRANSPLANT_H_
#define RNTFORGE_TRANSFER_TRANSPLANT_H_

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rntforge/nn/checkpoint.h"

namespace rntforge {

enum class Disposition {
  kCopied,
  kShapeMismatch,     // re-initialized
  kVocabDependent,    // re-initialized
  kStrategyExcluded,  // re-initialized (target) or left behind (source)
};

std::string_view DispositionName(Disposition d);
Disposition ParseDisposition(std::string_view name);

// Which target tensors a source may fill.
class TransplantScope {
 public:
  static TransplantScope Encoder();     // encoder.*
  static TransplantScope Prediction();  // prediction.*
  static TransplantScope Custom(std::set<std::string> names);
  // "encoder", "prediction", or a comma-separated list of tensor names.
  static TransplantScope Parse(const std::string &spec);

  bool Contains(const std::string &tensor) const;
  std::string Describe() const;

 private:
  std::string prefix_;
  std::set<std::string> names_;
};

struct SourceBinding {
  std::string label;  // how the report names this source
  const Checkpoint *checkpoint = nullptr;
  TransplantScope scope;
};

struct TargetTensorEntry {
  std::string tensor;
  Disposition disposition = Disposition::kStrategyExcluded;
  std::string source;  // "label:tensor" when copied or considered
};

struct SourceTensorEntry {
  std::string source;  // "label:tensor"
  Disposition disposition = Disposition::kStrategyExcluded;
};

struct TransplantReport {
  std::vector<TargetTensorEntry> target;  // one per target tensor, in order
  std::vector<SourceTensorEntry> unused;  // source tensors not copied

  size_t CountCopied() const;
  std::string ToText() const;
  // Header "tensor,disposition,source". Target tensors first; source
  // tensors that were left behind follow with an empty tensor column.
  std::string ToCsv() const;
  // Writes <base>.txt and <base>.csv.
  void Save(const std::filesystem::path &base) const;
  static TransplantReport FromCsv(const std::string &csv);
};

struct TransplantResult {
  Checkpoint checkpoint;
  TransplantReport report;
};

// Starts from target_template (a freshly initialised target model) and
// copies every in-scope tensor from its source. Vocabulary-dependent
// tensors (role tag) are copied only when source and target label lists
// are identical and the shapes agree. Throws TransplantError when an
// in-scope tensor is missing from its source or a vocabulary-independent
// tensor's shape differs (architecture mismatch), and when two bindings
// claim the same tensor.
TransplantResult Transplant(const Checkpoint &target_template,
                            std::span<const SourceBinding> sources);

}  // namespace rntforge

#endif  // RNTFORGE_TRANSFER_TRANSPLANT_H_
