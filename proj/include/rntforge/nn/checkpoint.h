// include/rntforge/nn/checkpoint.h

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

#ifndef RNTFORGE_NN_CHECKPOINT_H_
#define RNTFORGE_NN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rntforge/nn/params.h"
#include "rntforge/numerics/tensor.h"

namespace rntforge {

inline constexpr uint32_t kCheckpointVersion = 1;
inline constexpr char kCheckpointMagic[8] = {'R', 'N', 'T', 'F',
                                             'O', 'R', 'G', 'E'};

struct CheckpointMeta {
  uint32_t format_version = kCheckpointVersion;
  // Training provenance: "ce", "rnnt", "lm", "init", "features", ...
  std::string provenance;
  nlohmann::json architecture = nlohmann::json::object();
  std::vector<std::string> labels;
  int blank_index = -1;
  // Free-form lineage, e.g. {"stage": "two-stage-1"}.
  std::map<std::string, std::string> attributes;

  bool operator==(const CheckpointMeta &) const = default;
};

struct CheckpointTensor {
  std::string name;
  ParamRole role = ParamRole::kGeneric;
  Tensor value;

  bool operator==(const CheckpointTensor &) const = default;
};

struct Checkpoint {
  CheckpointMeta meta;
  std::vector<CheckpointTensor> tensors;

  const CheckpointTensor *Find(const std::string &name) const;
  CheckpointTensor *Find(const std::string &name);

  // Unique tensor names, unique labels, blank index in range for "rnnt".
  // Throws CodecError(kMeta).
  void Validate() const;

  bool operator==(const Checkpoint &) const = default;
};

// Snapshot of a parameter list; values are rounded to float32, the storage
// precision, so a checkpoint in memory equals what a reload yields.
Checkpoint CheckpointFromParams(const ParamList &params, CheckpointMeta meta);

// Copies checkpoint tensors into a parameter list by name. Throws
// CodecError(kIntegrity) on a missing name or shape mismatch.
void LoadParams(const Checkpoint &ckpt, const ParamList &params);

double RoundToStorage(double v);

std::filesystem::path ManifestPath(const std::filesystem::path &base);
std::filesystem::path BlobPath(const std::filesystem::path &base);

// Writes <base>.manifest.json and <base>.weights.bin.
void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &base);

// Throws CodecError for bad magic, version mismatch, truncation, or
// manifest/blob disagreement, and IoError when files cannot be opened.
// Nothing is returned unless the whole checkpoint decoded.
Checkpoint LoadCheckpoint(const std::filesystem::path &base);

}  // namespace rntforge

#endif  // RNTFORGE_NN_CHECKPOINT_H_
