// src/transducer/rnnt-trainer.cc

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

#include "rntforge/transducer/rnnt-trainer.h"

#include "rntforge/numerics/parallel.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

RnntExample MakeRnntExample(const Utterance &utt,
                            const LabelInventory &inventory,
                            const MergeTable *merges,
                            const StackOptions &stack) {
  RnntExample ex;
  ex.id = utt.id;
  ex.features = StackFrames(utt.features, stack);
  ex.transcript = utt.transcript;
  ex.target = merges ? WordpieceEncode(utt.transcript, *merges, inventory)
                     : GraphemeEncode(utt.transcript, inventory);
  return ex;
}

std::vector<RnntExample> MakeRnntExamples(const std::vector<Utterance> &utts,
                                          const LabelInventory &inventory,
                                          const MergeTable *merges,
                                          const StackOptions &stack) {
  std::vector<RnntExample> out;
  out.reserve(utts.size());
  for (const auto &u : utts)
    out.push_back(MakeRnntExample(u, inventory, merges, stack));
  return out;
}

TrainLog TrainRnnt(RnntModel *model, const std::vector<RnntExample> &examples,
                   const TrainOptions &opts,
                   const std::function<void(const EpochRecord &)> &on_epoch) {
  std::function<LossStat(const RnntModel &, size_t, RnntModel *)> loss =
      [&](const RnntModel &m, size_t i, RnntModel *grad) {
        return m.LossAndGrad(examples[i].features, examples[i].target, grad);
      };
  return TrainModel<RnntModel>(model, examples.size(), opts, loss, on_epoch);
}

std::vector<DecodedUtterance> DecodeExamples(
    const RnntModel &model, const std::vector<RnntExample> &examples,
    int beam_width, const DecodeOptions &opts) {
  std::vector<DecodedUtterance> out(examples.size());
  ParallelFor(examples.size(), [&](size_t i) {
    out[i] = DecodeUtterance(model, examples[i].id, examples[i].features,
                             beam_width, opts);
  });
  return out;
}

}  // namespace rntforge
