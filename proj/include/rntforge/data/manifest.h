// include/rntforge/data/manifest.h

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

#ifndef RNTFORGE_DATA_MANIFEST_H_
#define RNTFORGE_DATA_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "rntforge/data/utterance.h"
#include "rntforge/numerics/tensor.h"

namespace rntforge {

// One line of a dataset manifest:
//   id<TAB>feature-path<TAB>transcript[<TAB>alignment-path]
// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::string feature_path;
  std::string transcript;
  std::string alignment_path;  // may be empty
};

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path &path);
void WriteManifest(const std::filesystem::path &path,
                   const std::vector<ManifestEntry> &entries);

// Feature files reuse the checkpoint container with a single tensor named
// "features".
void SaveFeatures(const Tensor &features, const std::filesystem::path &base);
Tensor LoadFeatures(const std::filesystem::path &base);

// Lines "word<TAB>start_frame<TAB>end_frame".
std::vector<WordSpan> ReadAlignment(const std::filesystem::path &path);
void WriteAlignment(const std::filesystem::path &path,
                    const std::vector<WordSpan> &spans);

// Writes <dir>/<name>.tsv plus features/ and align/ subdirectories.
std::filesystem::path WriteDataset(const std::filesystem::path &dir,
                                   const std::string &name,
                                   const std::vector<Utterance> &utts);
std::vector<Utterance> ReadDataset(const std::filesystem::path &manifest);

}  // namespace rntforge

#endif  // RNTFORGE_DATA_MANIFEST_H_
