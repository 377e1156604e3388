// include/rntforge/numerics/rng.h

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

#ifndef RNTFORGE_NUMERICS_RNG_H_
#define RNTFORGE_NUMERICS_RNG_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace rntforge {

// xoshiro256++ seeded through splitmix64. Every draw is defined purely in
// terms of 64-bit integer arithmetic, so a seed yields the same stream on
// every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed = 42);

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n); rejection sampling, no modulo bias.
  uint64_t UniformInt(uint64_t n);
  // Box-Muller; one normal per two uniforms, nothing cached.
  double Normal(double mean = 0.0, double stddev = 1.0);

  template <class T>
  void Shuffle(std::vector<T> *v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

  // Independent child stream keyed by a label; does not advance this stream.
  Rng Fork(std::string_view label) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t s_[4];
};

uint64_t SplitMix64(uint64_t *state);

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_RNG_H_
