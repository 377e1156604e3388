// src/data/manifest.cc

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

#include "rntforge/data/manifest.h"

#include <fstream>
#include <sstream>

#include "rntforge/nn/checkpoint.h"
#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) fields.push_back(field);
  return fields;
}

std::filesystem::path Resolve(const std::filesystem::path &dir,
                              const std::string &p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : dir / path;
}

}  // namespace

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    if (f.size() < 3 || f.size() > 4)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 3 or 4 tab-separated fields");
    entries.push_back({f[0], f[1], f[2], f.size() == 4 ? f[3] : ""});
  }
  return entries;
}

void WriteManifest(const std::filesystem::path &path,
                   const std::vector<ManifestEntry> &entries) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &e : entries) {
    out << e.id << '\t' << e.feature_path << '\t' << e.transcript;
    if (!e.alignment_path.empty()) out << '\t' << e.alignment_path;
    out << '\n';
  }
}

void SaveFeatures(const Tensor &features, const std::filesystem::path &base) {
  Checkpoint ckpt;
  ckpt.meta.provenance = "features";
  ckpt.tensors.push_back({"features", ParamRole::kGeneric, features});
  SaveCheckpoint(ckpt, base);
}

Tensor LoadFeatures(const std::filesystem::path &base) {
  Checkpoint ckpt = LoadCheckpoint(base);
  const CheckpointTensor *t = ckpt.Find("features");
  if (!t || t->value.rank() != 2)
    throw DataError(base.string() + " holds no [T x d] features tensor");
  return t->value;
}

std::vector<WordSpan> ReadAlignment(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open alignment " + path.string());
  std::vector<WordSpan> spans;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    if (f.size() != 3)
      throw DataError(path.string() + ": expected word<TAB>start<TAB>end");
    spans.push_back({f[0], std::stoi(f[1]), std::stoi(f[2])});
  }
  return spans;
}

void WriteAlignment(const std::filesystem::path &path,
                    const std::vector<WordSpan> &spans) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &s : spans)
    out << s.word << '\t' << s.start << '\t' << s.end << '\n';
}

std::filesystem::path WriteDataset(const std::filesystem::path &dir,
                                   const std::string &name,
                                   const std::vector<Utterance> &utts) {
  std::vector<ManifestEntry> entries;
  for (const auto &u : utts) {
    ManifestEntry e{u.id, "features/" + u.id, u.transcript, ""};
    SaveFeatures(u.features, dir / e.feature_path);
    if (!u.alignment.empty()) {
      e.alignment_path = "align/" + u.id + ".ali";
      WriteAlignment(dir / e.alignment_path, u.alignment);
    }
    entries.push_back(std::move(e));
  }
  const auto manifest = dir / (name + ".tsv");
  WriteManifest(manifest, entries);
  return manifest;
}

std::vector<Utterance> ReadDataset(const std::filesystem::path &manifest) {
  const auto dir = manifest.parent_path();
  std::vector<Utterance> utts;
  for (const auto &e : ReadManifest(manifest)) {
    Utterance u;
    u.id = e.id;
    u.transcript = e.transcript;
    u.features = LoadFeatures(Resolve(dir, e.feature_path));
    if (!e.alignment_path.empty())
      u.alignment = ReadAlignment(Resolve(dir, e.alignment_path));
    utts.push_back(std::move(u));
  }
  return utts;
}

}  // namespace rntforge
