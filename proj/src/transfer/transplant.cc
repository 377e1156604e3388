// src/transfer/transplant.cc

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

#include "rntforge/transfer/transplant.h"

#include <fstream>
#include <sstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

std::string_view DispositionName(Disposition d) {
  switch (d) {
    case Disposition::kCopied: return "copied";
    case Disposition::kShapeMismatch: return "reinit:shape-mismatch";
    case Disposition::kVocabDependent: return "reinit:vocab-dependent";
    case Disposition::kStrategyExcluded: return "reinit:strategy-excluded";
  }
  return "?";
}

Disposition ParseDisposition(std::string_view name) {
  for (auto d : {Disposition::kCopied, Disposition::kShapeMismatch,
                 Disposition::kVocabDependent, Disposition::kStrategyExcluded})
    if (DispositionName(d) == name) return d;
  throw DataError("unknown transplant disposition '" + std::string(name) + "'");
}

TransplantScope TransplantScope::Encoder() {
  TransplantScope s;
  s.prefix_ = "encoder.";
  return s;
}

TransplantScope TransplantScope::Prediction() {
  TransplantScope s;
  s.prefix_ = "prediction.";
  return s;
}

TransplantScope TransplantScope::Custom(std::set<std::string> names) {
  TransplantScope s;
  s.names_ = std::move(names);
  return s;
}

TransplantScope TransplantScope::Parse(const std::string &spec) {
  if (spec == "encoder") return Encoder();
  if (spec == "prediction") return Prediction();
  std::set<std::string> names;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) names.insert(item);
  if (names.empty()) throw ConfigError("empty transplant scope");
  return Custom(std::move(names));
}

bool TransplantScope::Contains(const std::string &tensor) const {
  if (!prefix_.empty()) return tensor.starts_with(prefix_);
  return names_.count(tensor) > 0;
}

std::string TransplantScope::Describe() const {
  if (!prefix_.empty()) return prefix_ + "*";
  std::string out;
  for (const auto &n : names_) out += (out.empty() ? "" : ",") + n;
  return out;
}

size_t TransplantReport::CountCopied() const {
  size_t n = 0;
  for (const auto &e : target) n += e.disposition == Disposition::kCopied;
  return n;
}

std::string TransplantReport::ToText() const {
  std::ostringstream os;
  os << "target tensors: " << target.size() << " (" << CountCopied()
     << " copied)\n";
  for (const auto &e : target) {
    os << "  " << e.tensor << "  " << DispositionName(e.disposition);
    if (!e.source.empty()) os << "  <- " << e.source;
    os << '\n';
  }
  if (!unused.empty()) {
    os << "source tensors left behind: " << unused.size() << '\n';
    for (const auto &e : unused)
      os << "  " << e.source << "  " << DispositionName(e.disposition) << '\n';
  }
  return os.str();
}

std::string TransplantReport::ToCsv() const {
  std::ostringstream os;
  os << "tensor,disposition,source\n";
  for (const auto &e : target)
    os << e.tensor << ',' << DispositionName(e.disposition) << ',' << e.source
       << '\n';
  for (const auto &e : unused)
    os << ',' << DispositionName(e.disposition) << ',' << e.source << '\n';
  return os.str();
}

void TransplantReport::Save(const std::filesystem::path &base) const {
  for (auto [ext, body] : {std::pair{".txt", ToText()}, std::pair{".csv", ToCsv()}}) {
    std::filesystem::path p = base;
    p += ext;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << body;
  }
}

TransplantReport TransplantReport::FromCsv(const std::string &csv) {
  TransplantReport r;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "tensor,disposition,source")
    throw DataError("transplant CSV lacks its header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto a = line.find(','), b = line.find(',', a + 1);
    if (a == std::string::npos || b == std::string::npos)
      throw DataError("malformed transplant CSV row: " + line);
    std::string tensor = line.substr(0, a);
    Disposition d = ParseDisposition(line.substr(a + 1, b - a - 1));
    std::string source = line.substr(b + 1);
    if (tensor.empty())
      r.unused.push_back({source, d});
    else
      r.target.push_back({tensor, d, source});
  }
  return r;
}

TransplantResult Transplant(const Checkpoint &target_template,
                            std::span<const SourceBinding> sources) {
  TransplantResult r;
  r.checkpoint = target_template;
  std::vector<std::set<std::string>> used(sources.size());

  for (auto &t : r.checkpoint.tensors) {
    TargetTensorEntry entry;
    entry.tensor = t.name;
    int owner = -1;
    for (size_t s = 0; s < sources.size(); ++s) {
      if (!sources[s].scope.Contains(t.name)) continue;
      if (owner >= 0)
        throw TransplantError("tensor " + t.name + " is in scope of both " +
                              sources[owner].label + " and " + sources[s].label);
      owner = static_cast<int>(s);
    }
    if (owner < 0) {
      r.report.target.push_back(entry);
      continue;
    }
    const SourceBinding &b = sources[owner];
    if (!b.checkpoint) throw TransplantError("source " + b.label + " is missing");
    const CheckpointTensor *src = b.checkpoint->Find(t.name);
    if (!src)
      throw TransplantError("source " + b.label + " has no tensor " + t.name +
                            " required by scope " + b.scope.Describe());
    entry.source = b.label + ":" + t.name;
    const bool vocab_dependent =
        IsVocabDependent(t.role) || IsVocabDependent(src->role);
    if (vocab_dependent) {
      if (b.checkpoint->meta.labels != r.checkpoint.meta.labels) {
        entry.disposition = Disposition::kVocabDependent;
      } else if (!src->value.SameShape(t.value)) {
        entry.disposition = Disposition::kShapeMismatch;
      } else {
        t.value = src->value;
        entry.disposition = Disposition::kCopied;
        used[owner].insert(t.name);
      }
    } else {
      if (!src->value.SameShape(t.value))
        throw TransplantError("architecture mismatch on " + t.name + ": " +
                              b.label + " has " + src->value.ShapeString() +
                              ", target expects " + t.value.ShapeString());
      t.value = src->value;
      entry.disposition = Disposition::kCopied;
      used[owner].insert(t.name);
    }
    r.report.target.push_back(entry);
  }

  for (size_t s = 0; s < sources.size(); ++s) {
    if (!sources[s].checkpoint) continue;
    for (const auto &st : sources[s].checkpoint->tensors) {
      if (used[s].count(st.name)) continue;
      SourceTensorEntry e;
      e.source = sources[s].label + ":" + st.name;
      const CheckpointTensor *tt = r.checkpoint.Find(st.name);
      if (tt && sources[s].scope.Contains(st.name)) {
        const bool vocab = IsVocabDependent(tt->role) || IsVocabDependent(st.role);
        e.disposition = (vocab && sources[s].checkpoint->meta.labels !=
                                      r.checkpoint.meta.labels)
                            ? Disposition::kVocabDependent
                            : Disposition::kShapeMismatch;
      }
      r.report.unused.push_back(e);
    }
  }
  return r;
}

}  // namespace rntforge
