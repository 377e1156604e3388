// src/data/logmel.cc

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

#include "rntforge/data/logmel.h"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

// FFTW's planner is not re-entrant; execution on distinct arrays is.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwPlan {
  explicit FftwPlan(int n) : n(n) {
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    {
      std::lock_guard<std::mutex> lock(PlannerMutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  FftwPlan(const FftwPlan &) = delete;
  FftwPlan &operator=(const FftwPlan &) = delete;

  int n;
  double *in;
  fftw_complex *out;
  fftw_plan plan;
};

}  // namespace

int LogMelOptions::window_samples() const {
  return static_cast<int>(std::lround(sample_rate * window_ms / 1000.0));
}

int LogMelOptions::hop_samples() const {
  return static_cast<int>(std::lround(sample_rate * hop_ms / 1000.0));
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> MelBinCenters(const LogMelOptions &opts) {
  const double high = opts.high_hz > 0 ? opts.high_hz : opts.sample_rate / 2.0;
  const double lo_mel = HzToMel(opts.low_hz), hi_mel = HzToMel(high);
  std::vector<double> centers(opts.num_bins);
  for (int b = 0; b < opts.num_bins; ++b)
    centers[b] = MelToHz(lo_mel + (hi_mel - lo_mel) * (b + 1) / (opts.num_bins + 1));
  return centers;
}

Tensor MelFilterbank(const LogMelOptions &opts) {
  const double high = opts.high_hz > 0 ? opts.high_hz : opts.sample_rate / 2.0;
  const double lo_mel = HzToMel(opts.low_hz), hi_mel = HzToMel(high);
  const size_t num_fft_bins = opts.fft_size / 2 + 1;
  Tensor fb({static_cast<size_t>(opts.num_bins), num_fft_bins});
  for (int b = 0; b < opts.num_bins; ++b) {
    const double left = lo_mel + (hi_mel - lo_mel) * b / (opts.num_bins + 1);
    const double center = lo_mel + (hi_mel - lo_mel) * (b + 1) / (opts.num_bins + 1);
    const double right = lo_mel + (hi_mel - lo_mel) * (b + 2) / (opts.num_bins + 1);
    for (size_t k = 0; k < num_fft_bins; ++k) {
      const double mel =
          HzToMel(static_cast<double>(k) * opts.sample_rate / opts.fft_size);
      double w = 0.0;
      if (mel > left && mel <= center) w = (mel - left) / (center - left);
      else if (mel > center && mel < right) w = (right - mel) / (right - center);
      fb.at(b, k) = w;
    }
  }
  return fb;
}

Tensor ComputeLogMel(std::span<const double> samples,
                     const LogMelOptions &opts) {
  const int win = opts.window_samples(), hop = opts.hop_samples();
  if (win <= 0 || hop <= 0 || opts.fft_size < win)
    throw ConfigError("log-mel window must fit in the FFT size");
  if (samples.size() < static_cast<size_t>(win))
    throw DomainError("waveform of " + std::to_string(samples.size()) +
                      " samples is shorter than one " +
                      std::to_string(win) + "-sample window");
  const int frames = NumFrames(samples.size(), opts);
  const Tensor fb = MelFilterbank(opts);
  const size_t num_fft_bins = opts.fft_size / 2 + 1;

  std::vector<double> window(win);
  for (int i = 0; i < win; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (win - 1));

  FftwPlan fft(opts.fft_size);
  std::vector<double> power(num_fft_bins);
  Tensor out({static_cast<size_t>(frames), static_cast<size_t>(opts.num_bins)});
  for (int t = 0; t < frames; ++t) {
    for (int i = 0; i < opts.fft_size; ++i)
      fft.in[i] = i < win ? samples[t * hop + i] * window[i] : 0.0;
    fftw_execute(fft.plan);
    for (size_t k = 0; k < num_fft_bins; ++k)
      power[k] = fft.out[k][0] * fft.out[k][0] + fft.out[k][1] * fft.out[k][1];
    for (int b = 0; b < opts.num_bins; ++b) {
      double e = 0.0;
      for (size_t k = 0; k < num_fft_bins; ++k) e += fb.at(b, k) * power[k];
      out.at(t, b) = std::log(std::max(e, opts.log_floor));
    }
  }
  return out;
}

}  // namespace rntforge
