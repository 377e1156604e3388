// include/rntforge/transducer/rnnt-loss.h

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

#ifndef RNTFORGE_TRANSDUCER_RNNT_LOSS_H_
#define RNTFORGE_TRANSDUCER_RNNT_LOSS_H_

#include <span>
#include <vector>

#include "rntforge/numerics/tensor.h"

namespace rntforge {

// Forward/backward variables over the T x (U+1) output lattice, all in the
// log domain. alpha(t,u) is the log-probability of reaching node (t,u) having
// emitted y_1..y_u; beta(t,u) is the log-probability of completing the
// target from (t,u), including the final blank.
struct Lattice {
  Tensor log_probs;  // [T x (U+1) x V]
  std::vector<int> target;
  int blank = 0;
  Tensor alpha;  // [T x (U+1)]
  Tensor beta;   // [T x (U+1)]

  size_t num_frames() const { return alpha.dim(0); }
  size_t target_length() const { return target.size(); }

  double BlankAt(size_t t, size_t u) const {
    return log_probs.at(t, u, blank);
  }
  // Log-probability of emitting y_{u+1} at (t,u); requires u < U.
  double LabelAt(size_t t, size_t u) const {
    return log_probs.at(t, u, target[u]);
  }

  double ForwardLogLikelihood() const;
  double BackwardLogLikelihood() const { return beta.at(0, 0); }

  // Every alignment crosses from frame t to t+1 (or terminates, for the
  // last frame) through exactly one blank arc, so
  //   logsumexp_u alpha(t,u) + blank(t,u) + beta(t+1,u)
  // equals the log-likelihood for every t. Returns that value per frame.
  std::vector<double> FrameCrossingLogLikelihoods() const;

  // logsumexp_u alpha(t,u) + beta(t,u) per frame. Each alignment
  // contributes once per node it visits on frame t, so this is not constant
  // across t in general.
  std::vector<double> FrameOccupancyLogSums() const;
};

// Builds the lattice and runs both recursions. Throws DimensionError for a
// malformed tensor, IndexError for a bad blank or target id (including a
// target equal to blank), DomainError for NaN/+inf log-probabilities.
Lattice BuildLattice(const Tensor &log_probs, std::span<const int> target,
                     int blank);

struct RnntLossResult {
  double loss = 0.0;  // -log P(target | lattice)
  Tensor grad;        // dloss / dlog_probs, [T x (U+1) x V]
  Lattice lattice;
};

RnntLossResult RnntLoss(const Tensor &log_probs, std::span<const int> target,
                        int blank);

}  // namespace rntforge

#endif  // RNTFORGE_TRANSDUCER_RNNT_LOSS_H_
