// src/nn/trainer.cc

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

#include "rntforge/nn/trainer.h"

#include <cstdio>
#include <fstream>

namespace rntforge {

void TrainLog::WriteCsv(const std::filesystem::path &path,
                        bool with_perplexity) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << (with_perplexity ? "epoch,loss,perplexity\n" : "epoch,loss\n");
  char buf[128];
  for (const auto &e : epochs) {
    if (with_perplexity)
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", e.epoch, e.loss,
                    std::exp(e.loss));
    else
      std::snprintf(buf, sizeof(buf), "%d,%.6f\n", e.epoch, e.loss);
    out << buf;
  }
}

}  // namespace rntforge
