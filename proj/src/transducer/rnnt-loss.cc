// src/transducer/rnnt-loss.cc

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

#include "rntforge/transducer/rnnt-loss.h"

#include <cmath>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/logmath.h"

namespace rntforge {

double Lattice::ForwardLogLikelihood() const {
  const size_t T = num_frames(), U = target_length();
  return alpha.at(T - 1, U) + BlankAt(T - 1, U);
}

std::vector<double> Lattice::FrameCrossingLogLikelihoods() const {
  const size_t T = num_frames(), U = target_length();
  std::vector<double> out(T);
  for (size_t t = 0; t < T; ++t) {
    std::vector<double> terms;
    for (size_t u = 0; u <= U; ++u) {
      double rest;
      if (t + 1 < T)
        rest = beta.at(t + 1, u);
      else
        rest = (u == U) ? 0.0 : kLogZero;
      terms.push_back(alpha.at(t, u) + BlankAt(t, u) + rest);
    }
    out[t] = LogSumExp(terms);
  }
  return out;
}

std::vector<double> Lattice::FrameOccupancyLogSums() const {
  const size_t T = num_frames(), U = target_length();
  std::vector<double> out(T);
  for (size_t t = 0; t < T; ++t) {
    std::vector<double> terms;
    for (size_t u = 0; u <= U; ++u) terms.push_back(alpha.at(t, u) + beta.at(t, u));
    out[t] = LogSumExp(terms);
  }
  return out;
}

Lattice BuildLattice(const Tensor &log_probs, std::span<const int> target,
                     int blank) {
  if (log_probs.rank() != 3)
    throw DimensionError("lattice log-probs must be [T x (U+1) x V], got " +
                         log_probs.ShapeString());
  const size_t T = log_probs.dim(0), U = target.size();
  const int V = static_cast<int>(log_probs.dim(2));
  if (log_probs.dim(1) != U + 1)
    throw DimensionError("lattice has " + std::to_string(log_probs.dim(1)) +
                         " label positions for a target of length " +
                         std::to_string(U));
  if (blank < 0 || blank >= V)
    throw IndexError("blank index " + std::to_string(blank) +
                     " outside vocabulary of " + std::to_string(V));
  for (size_t i = 0; i < U; ++i) {
    if (target[i] < 0 || target[i] >= V || target[i] == blank)
      throw IndexError("target label " + std::to_string(target[i]) +
                       " at position " + std::to_string(i) + " is invalid");
  }
  CheckLogDomain(log_probs, "lattice log-probs");

  Lattice lat;
  lat.log_probs = log_probs;
  lat.target.assign(target.begin(), target.end());
  lat.blank = blank;
  lat.alpha = Tensor({T, U + 1}, kLogZero);
  lat.beta = Tensor({T, U + 1}, kLogZero);

  Tensor &a = lat.alpha;
  a.at(0, 0) = 0.0;
  for (size_t t = 0; t < T; ++t) {
    for (size_t u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) continue;
      double v = kLogZero;
      if (t > 0) v = a.at(t - 1, u) + lat.BlankAt(t - 1, u);
      if (u > 0) v = LogAdd(v, a.at(t, u - 1) + lat.LabelAt(t, u - 1));
      a.at(t, u) = v;
    }
  }

  Tensor &b = lat.beta;
  for (size_t t = T; t-- > 0;) {
    for (size_t u = U + 1; u-- > 0;) {
      double v;
      if (t == T - 1 && u == U) {
        v = lat.BlankAt(t, u);
      } else {
        v = kLogZero;
        if (t + 1 < T) v = b.at(t + 1, u) + lat.BlankAt(t, u);
        if (u < U) v = LogAdd(v, b.at(t, u + 1) + lat.LabelAt(t, u));
      }
      b.at(t, u) = v;
    }
  }
  return lat;
}

RnntLossResult RnntLoss(const Tensor &log_probs, std::span<const int> target,
                        int blank) {
  RnntLossResult r;
  r.lattice = BuildLattice(log_probs, target, blank);
  const Lattice &lat = r.lattice;
  const double log_p = lat.ForwardLogLikelihood();
  if (!std::isfinite(log_p))
    throw DomainError("target has zero probability under the lattice");
  r.loss = -log_p;

  const size_t T = lat.num_frames(), U = lat.target_length();
  r.grad = Tensor(log_probs.shape(), 0.0);
  // dlogP / dlp[t,u,k] is the posterior of the arc leaving (t,u) by k.
  for (size_t t = 0; t < T; ++t) {
    for (size_t u = 0; u <= U; ++u) {
      const double a = lat.alpha.at(t, u);
      double after_blank;
      if (t + 1 < T)
        after_blank = lat.beta.at(t + 1, u);
      else
        after_blank = (u == U) ? 0.0 : kLogZero;
      r.grad.at(t, u, blank) =
          -std::exp(a + lat.BlankAt(t, u) + after_blank - log_p);
      if (u < U) {
        r.grad.at(t, u, lat.target[u]) =
            -std::exp(a + lat.LabelAt(t, u) + lat.beta.at(t, u + 1) - log_p);
      }
    }
  }
  return r;
}

}  // namespace rntforge
