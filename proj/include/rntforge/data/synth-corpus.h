// include/rntforge/data/synth-corpus.h

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

#ifndef RNTFORGE_DATA_SYNTH_CORPUS_H_
#define RNTFORGE_DATA_SYNTH_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "rntforge/data/utterance.h"
#include "rntforge/numerics/tensor.h"

namespace rntforge {

// Desk-scale stand-in for a high-resource source language and a related
// low-resource target language. Both languages are spoken with one shared
// bank of acoustic prototypes; they differ in alphabet, lexicon and word
// grammar.
struct SynthSpec {
  int num_prototypes = 12;
  int feature_dim = 80;
  int min_duration = 4;  // raw frames per prototype
  int max_duration = 8;
  double prototype_scale = 1.0;
  int word_gap_frames = 3;  // silence between words
  int edge_frames = 4;      // silence before the first and after the last word

  int source_train = 2000;
  int target_train = 200;
  int target_test = 100;

  int source_vocab = 80;
  int target_vocab = 40;
  int min_word_length = 2;
  int max_word_length = 4;
  int min_words = 2;
  int max_words = 4;
  int successors = 4;  // grammar branching factor
  double noise = 1.0;  // stddev of additive Gaussian noise

  int lm_sentences = 600;   // distinct draws for the text corpus
  int lm_max_repeats = 4;   // each draw is repeated 1..lm_max_repeats times

  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys raise ConfigError.
  static SynthSpec FromJson(const nlohmann::json &j);
};

struct SynthLanguage {
  std::vector<std::string> alphabet;   // letter i spoken as prototype_of[i]
  std::vector<int> prototype_of;
  std::vector<std::string> vocabulary;
  std::vector<std::vector<int>> successors;  // word grammar
};

struct SynthCorpus {
  Tensor prototypes;           // [(K + 1) x d]; row K is silence
  std::vector<int> durations;  // raw frames per prototype (K + 1 entries)
  SynthLanguage source;
  SynthLanguage target;
  std::vector<Utterance> source_train;
  std::vector<Utterance> target_train;
  std::vector<Utterance> target_test;
  std::vector<std::string> lm_text;  // target-language text with repeats

  int silence_prototype() const { return static_cast<int>(durations.size()) - 1; }
};

// Deterministic in (spec, seed). Throws ConfigError for infeasible specs,
// e.g. a vocabulary larger than the word-length range can spell.
SynthCorpus GenerateSynthCorpus(const SynthSpec &spec, uint64_t seed);

// Prototype index sequence (silence included) that an utterance in `lang`
// with this transcript is rendered from, one entry per raw frame.
std::vector<int> RenderPrototypeFrames(const SynthCorpus &corpus,
                                       const SynthLanguage &lang,
                                       const std::string &transcript,
                                       int word_gap_frames, int edge_frames);

}  // namespace rntforge

#endif  // RNTFORGE_DATA_SYNTH_CORPUS_H_
