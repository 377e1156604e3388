// src/data/wav.cc

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

#include "rntforge/data/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

uint32_t U32(const std::string &s, size_t at) {
  const auto *p = reinterpret_cast<const unsigned char *>(s.data() + at);
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t U16(const std::string &s, size_t at) {
  const auto *p = reinterpret_cast<const unsigned char *>(s.data() + at);
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void Put(std::ostream &out, uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

Waveform ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string raw = ss.str();
  if (raw.size() < 12 || raw.compare(0, 4, "RIFF") || raw.compare(8, 4, "WAVE"))
    throw DataError(path.string() + " is not a RIFF/WAVE file");

  Waveform wav;
  bool have_fmt = false;
  for (size_t pos = 12; pos + 8 <= raw.size();) {
    const std::string id = raw.substr(pos, 4);
    const uint32_t size = U32(raw, pos + 4);
    const size_t body = pos + 8;
    if (body + size > raw.size()) throw DataError("truncated chunk in " + path.string());
    if (id == "fmt ") {
      if (U16(raw, body) != 1 || U16(raw, body + 2) != 1 ||
          U16(raw, body + 14) != 16)
        throw DataError(path.string() + ": only mono 16-bit PCM is supported");
      wav.sample_rate = static_cast<int>(U32(raw, body + 4));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw DataError(path.string() + ": data before fmt chunk");
      wav.samples.resize(size / 2);
      for (size_t i = 0; i < wav.samples.size(); ++i)
        wav.samples[i] = static_cast<int16_t>(U16(raw, body + 2 * i));
      return wav;
    }
    pos = body + size + (size & 1);
  }
  throw DataError(path.string() + " has no data chunk");
}

void WriteWav(const std::filesystem::path &path, const Waveform &wav) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const uint32_t data_bytes = static_cast<uint32_t>(wav.samples.size() * 2);
  out.write("RIFF", 4);
  Put(out, 36 + data_bytes, 4);
  out.write("WAVEfmt ", 8);
  Put(out, 16, 4);
  Put(out, 1, 2);
  Put(out, 1, 2);
  Put(out, wav.sample_rate, 4);
  Put(out, wav.sample_rate * 2, 4);
  Put(out, 2, 2);
  Put(out, 16, 2);
  out.write("data", 4);
  Put(out, data_bytes, 4);
  for (double s : wav.samples) {
    const long v = std::lround(std::clamp(s, -32768.0, 32767.0));
    Put(out, static_cast<uint16_t>(static_cast<int16_t>(v)), 2);
  }
}

}  // namespace rntforge
