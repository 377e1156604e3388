// include/rntforge/data/logmel.h

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

#ifndef RNTFORGE_DATA_LOGMEL_H_
#define RNTFORGE_DATA_LOGMEL_H_

#include <span>
#include <vector>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

struct LogMelOptions {
  int sample_rate = 16000;
  double window_ms = 25.0;  // Hann
  double hop_ms = 10.0;
  int num_bins = 80;
  double low_hz = 0.0;
  double high_hz = 0.0;  // <= 0 means Nyquist
  double log_floor = 1e-10;
  int fft_size = 512;

  int window_samples() const;
  int hop_samples() const;
};

double HzToMel(double hz);
double MelToHz(double mel);

// Centre frequencies (Hz) of the triangular filters, equally spaced on the
// mel scale.
std::vector<double> MelBinCenters(const LogMelOptions &opts);

// Filterbank weights [num_bins x (fft_size/2 + 1)].
Tensor MelFilterbank(const LogMelOptions &opts);

inline int NumFrames(size_t num_samples, const LogMelOptions &opts) {
  return static_cast<int>((num_samples - opts.window_samples()) /
                          opts.hop_samples()) + 1;
}

// Power spectrum through the mel filterbank, natural log with a floor.
// Output [T_raw x num_bins], T_raw = floor((N - window) / hop) + 1.
// Throws DomainError when the waveform is shorter than one window.
Tensor ComputeLogMel(std::span<const double> samples,
                     const LogMelOptions &opts = {});

}  // namespace rntforge

#endif  // RNTFORGE_DATA_LOGMEL_H_
