// include/rntforge/transducer/rnnt-trainer.h

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

#ifndef RNTFORGE_TRANSDUCER_RNNT_TRAINER_H_
#define RNTFORGE_TRANSDUCER_RNNT_TRAINER_H_

#include <functional>
#include <vector>

#include "rntforge/data/stack.h"
#include "rntforge/data/utterance.h"
#include "rntforge/nn/trainer.h"
#include "rntforge/tokenize/bpe.h"
#include "rntforge/transducer/decode.h"
#include "rntforge/transducer/rnnt-model.h"

namespace rntforge {

struct RnntExample {
  std::string id;
  Tensor features;  // stacked
  std::vector<int> target;
  std::string transcript;
};

// Stacks the raw features and encodes the transcript over the inventory:
// graphemes, or word pieces when merges is non-null.
RnntExample MakeRnntExample(const Utterance &utt,
                            const LabelInventory &inventory,
                            const MergeTable *merges = nullptr,
                            const StackOptions &stack = {});

std::vector<RnntExample> MakeRnntExamples(const std::vector<Utterance> &utts,
                                          const LabelInventory &inventory,
                                          const MergeTable *merges = nullptr,
                                          const StackOptions &stack = {});

// Loss is the mean per-utterance transducer loss.
TrainLog TrainRnnt(RnntModel *model, const std::vector<RnntExample> &examples,
                   const TrainOptions &opts,
                   const std::function<void(const EpochRecord &)> &on_epoch = {});

// Decodes every example, in parallel across utterances.
std::vector<DecodedUtterance> DecodeExamples(
    const RnntModel &model, const std::vector<RnntExample> &examples,
    int beam_width, const DecodeOptions &opts = {});

}  // namespace rntforge

#endif  // RNTFORGE_TRANSDUCER_RNNT_TRAINER_H_
