// include/rntforge/data/wav.h

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

#ifndef RNTFORGE_DATA_WAV_H_
#define RNTFORGE_DATA_WAV_H_

#include <filesystem>
#include <vector>

namespace rntforge {

struct Waveform {
  int sample_rate = 16000;
  std::vector<double> samples;  // int16 scale
};

// Mono 16-bit PCM RIFF/WAVE only.
Waveform ReadWav(const std::filesystem::path &path);
void WriteWav(const std::filesystem::path &path, const Waveform &wav);

}  // namespace rntforge

#endif  // RNTFORGE_DATA_WAV_H_
