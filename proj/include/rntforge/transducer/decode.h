// include/rntforge/transducer/decode.h

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

#ifndef RNTFORGE_TRANSDUCER_DECODE_H_
#define RNTFORGE_TRANSDUCER_DECODE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "rntforge/nn/lstm.h"
#include "rntforge/transducer/rnnt-model.h"

namespace rntforge {

// Prediction-network state after consuming some label history.
struct PredictorState {
  LstmState lstm;
  std::vector<double> projected;  // W_pred h_pred, ready for the joint
};

// What a decoder needs from a transducer. RnntScorer is the real one; tests
// plug in hand-built scorers.
class TransducerScorer {
 public:
  virtual ~TransducerScorer() = default;
  virtual int num_frames() const = 0;
  virtual int vocab_size() const = 0;
  virtual int blank() const = 0;
  // State after the start-of-sequence input.
  virtual PredictorState Start() const = 0;
  virtual PredictorState Extend(const PredictorState &state, int label) const = 0;
  // Normalised log-posteriors over the vocabulary at frame t.
  virtual std::vector<double> LogProbs(int t, const PredictorState &state) const = 0;
};

class RnntScorer : public TransducerScorer {
 public:
  // features: stacked [T x input_dim]. The model must outlive the scorer.
  RnntScorer(const RnntModel &model, const Tensor &features);

  int num_frames() const override { return static_cast<int>(enc_proj_.dim(0)); }
  int vocab_size() const override { return static_cast<int>(model_.vocab_size()); }
  int blank() const override { return model_.blank(); }
  PredictorState Start() const override;
  PredictorState Extend(const PredictorState &state, int label) const override;
  std::vector<double> LogProbs(int t, const PredictorState &state) const override;

 private:
  const RnntModel &model_;
  Tensor enc_proj_;  // [T x J]
};

struct DecodeOptions {
  // Emission cap per frame; once reached the frame is closed with a blank.
  int max_symbols_per_frame = 10;
};

// Per frame: emit the argmax label (ties to the lowest index) and stay on
// the frame, or advance on blank.
std::vector<int> GreedyDecode(const TransducerScorer &scorer,
                              const DecodeOptions &opts = {});

struct Hypothesis {
  std::vector<int> labels;
  double score = 0.0;  // log-add over the merged alignments
  PredictorState state;
};

// Frame-synchronous beam search. Within frame t, hypotheses that take a
// blank move to the frame's finished set (identical label sequences merge
// by log-add); the finished set and the label extensions of the still
// active ones compete for beam_width slots, ties to the earlier entry, so
// beam_width 1 is the greedy decoder. After max_symbols_per_frame labels
// only blanks are allowed. Returns at most beam_width hypotheses, best
// first. Throws ConfigError for beam_width < 1.
std::vector<Hypothesis> BeamDecode(const TransducerScorer &scorer,
                                   int beam_width,
                                   const DecodeOptions &opts = {});

struct DecodedUtterance {
  std::string id;
  std::string text;
  double score = 0.0;
};

// Beam search over stacked features, best hypothesis mapped back to words.
// A hypothesis opening without a word-boundary label is read as if it had
// one.
DecodedUtterance DecodeUtterance(const RnntModel &model, const std::string &id,
                                 const Tensor &stacked, int beam_width,
                                 const DecodeOptions &opts = {});

// Lines "id<TAB>text<TAB>score".
void WriteDecoded(const std::filesystem::path &path,
                  const std::vector<DecodedUtterance> &decoded);
std::vector<DecodedUtterance> ReadDecoded(const std::filesystem::path &path);

}  // namespace rntforge

#endif  // RNTFORGE_TRANSDUCER_DECODE_H_
