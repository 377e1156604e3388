// src/nn/checkpoint.cc

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

#include "rntforge/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

using Kind = CodecError::Kind;

constexpr size_t kHeaderBytes = sizeof(kCheckpointMagic) + sizeof(uint32_t);

void PutU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t GetU32(const unsigned char *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

std::string ReadAll(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

double RoundToStorage(double v) {
  return static_cast<double>(static_cast<float>(v));
}

const CheckpointTensor *Checkpoint::Find(const std::string &name) const {
  for (const auto &t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

CheckpointTensor *Checkpoint::Find(const std::string &name) {
  for (auto &t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

void Checkpoint::Validate() const {
  std::set<std::string> names;
  for (const auto &t : tensors) {
    if (t.name.empty()) throw CodecError(Kind::kMeta, "empty tensor name");
    if (!names.insert(t.name).second)
      throw CodecError(Kind::kMeta, "duplicate tensor name " + t.name);
    if (t.value.empty())
      throw CodecError(Kind::kMeta, "tensor " + t.name + " is empty");
  }
  std::set<std::string> labels(meta.labels.begin(), meta.labels.end());
  if (labels.size() != meta.labels.size())
    throw CodecError(Kind::kMeta, "label inventory contains duplicates");
  if (meta.provenance == "rnnt" &&
      (meta.blank_index < 0 ||
       meta.blank_index >= static_cast<int>(meta.labels.size())))
    throw CodecError(Kind::kMeta, "blank index " +
                                      std::to_string(meta.blank_index) +
                                      " invalid for an rnnt checkpoint");
}

Checkpoint CheckpointFromParams(const ParamList &params, CheckpointMeta meta) {
  Checkpoint ckpt;
  ckpt.meta = std::move(meta);
  for (const auto &p : params) {
    Tensor v = *p.value;
    for (double &x : v.data()) x = RoundToStorage(x);
    ckpt.tensors.push_back({p.name, p.role, std::move(v)});
  }
  return ckpt;
}

void LoadParams(const Checkpoint &ckpt, const ParamList &params) {
  for (const auto &p : params) {
    const CheckpointTensor *t = ckpt.Find(p.name);
    if (!t)
      throw CodecError(Kind::kIntegrity,
                       "checkpoint lacks tensor " + p.name);
    if (!t->value.SameShape(*p.value))
      throw CodecError(Kind::kIntegrity,
                       "tensor " + p.name + " has shape " +
                           t->value.ShapeString() + ", model expects " +
                           p.value->ShapeString());
    *p.value = t->value;
  }
}

std::filesystem::path ManifestPath(const std::filesystem::path &base) {
  return base.string() + ".manifest.json";
}

std::filesystem::path BlobPath(const std::filesystem::path &base) {
  return base.string() + ".weights.bin";
}

void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &base) {
  ckpt.Validate();
  std::string blob(kCheckpointMagic, sizeof(kCheckpointMagic));
  PutU32(&blob, kCheckpointVersion);

  nlohmann::ordered_json manifest;
  manifest["format_version"] = kCheckpointVersion;
  manifest["provenance"] = ckpt.meta.provenance;
  manifest["architecture"] = ckpt.meta.architecture;
  manifest["labels"] = ckpt.meta.labels;
  manifest["blank_index"] = ckpt.meta.blank_index;
  manifest["attributes"] = ckpt.meta.attributes;
  manifest["blob"] = BlobPath(base).filename().string();
  auto &entries = manifest["tensors"] = nlohmann::ordered_json::array();
  for (const auto &t : ckpt.tensors) {
    entries.push_back({{"name", t.name},
                       {"role", std::string(RoleName(t.role))},
                       {"shape", t.value.shape()},
                       {"offset", blob.size()},
                       {"count", t.value.size()}});
    for (double v : t.value.data())
      PutU32(&blob, std::bit_cast<uint32_t>(static_cast<float>(v)));
  }

  if (base.has_parent_path())
    std::filesystem::create_directories(base.parent_path());
  {
    std::ofstream out(BlobPath(base), std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + BlobPath(base).string());
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  }
  std::ofstream out(ManifestPath(base), std::ios::trunc);
  if (!out) throw IoError("cannot write " + ManifestPath(base).string());
  out << manifest.dump(1) << '\n';
}

Checkpoint LoadCheckpoint(const std::filesystem::path &base) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(ReadAll(ManifestPath(base)));
  } catch (const nlohmann::json::exception &e) {
    throw CodecError(Kind::kTruncated,
                     "unreadable manifest " + ManifestPath(base).string() +
                         ": " + e.what());
  }
  const std::string raw = ReadAll(BlobPath(base));
  const auto *bytes = reinterpret_cast<const unsigned char *>(raw.data());

  if (raw.size() < sizeof(kCheckpointMagic) ||
      std::memcmp(raw.data(), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0)
    throw CodecError(Kind::kBadMagic,
                     "bad magic in " + BlobPath(base).string());
  if (raw.size() < kHeaderBytes)
    throw CodecError(Kind::kTruncated, "blob header truncated");
  const uint32_t blob_version = GetU32(bytes + sizeof(kCheckpointMagic));

  Checkpoint ckpt;
  try {
    const uint32_t manifest_version = manifest.at("format_version");
    if (manifest_version != kCheckpointVersion ||
        blob_version != kCheckpointVersion)
      throw CodecError(Kind::kVersionMismatch,
                       "checkpoint version " +
                           std::to_string(manifest_version) + "/" +
                           std::to_string(blob_version) + ", expected " +
                           std::to_string(kCheckpointVersion));
    ckpt.meta.format_version = manifest_version;
    ckpt.meta.provenance = manifest.at("provenance");
    ckpt.meta.architecture = manifest.at("architecture");
    ckpt.meta.labels = manifest.at("labels").get<std::vector<std::string>>();
    ckpt.meta.blank_index = manifest.at("blank_index");
    ckpt.meta.attributes =
        manifest.at("attributes").get<std::map<std::string, std::string>>();

    size_t expected_end = kHeaderBytes;
    for (const auto &entry : manifest.at("tensors")) {
      const std::string name = entry.at("name");
      const auto shape = entry.at("shape").get<std::vector<size_t>>();
      const size_t offset = entry.at("offset");
      const size_t count = entry.at("count");
      size_t product = shape.empty() ? 0 : 1;
      for (size_t d : shape) product *= d;
      if (product != count || count == 0)
        throw CodecError(Kind::kIntegrity,
                         "tensor " + name + " declares shape " +
                             ShapeString(shape) + " but " +
                             std::to_string(count) + " values");
      if (offset != expected_end)
        throw CodecError(Kind::kIntegrity,
                         "tensor " + name + " offset " +
                             std::to_string(offset) + " is not contiguous");
      if (offset + 4 * count > raw.size())
        throw CodecError(Kind::kTruncated,
                         "blob truncated inside tensor " + name);
      std::vector<double> values(count);
      for (size_t i = 0; i < count; ++i)
        values[i] = std::bit_cast<float>(GetU32(bytes + offset + 4 * i));
      ckpt.tensors.push_back({name, ParseRole(entry.at("role").get<std::string>()),
                              Tensor(shape, std::move(values))});
      expected_end = offset + 4 * count;
    }
    if (expected_end != raw.size())
      throw CodecError(Kind::kIntegrity,
                       "blob holds " + std::to_string(raw.size()) +
                           " bytes, manifest accounts for " +
                           std::to_string(expected_end));
  } catch (const nlohmann::json::exception &e) {
    throw CodecError(Kind::kMeta, std::string("malformed manifest: ") + e.what());
  } catch (const DomainError &e) {
    throw CodecError(Kind::kMeta, e.what());
  }
  ckpt.Validate();
  return ckpt;
}

}  // namespace rntforge
