// src/data/synth-corpus.cc

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

#include "rntforge/data/synth-corpus.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

namespace {

#define SYNTH_FIELDS(X)                                                      \
  X(num_prototypes) X(feature_dim) X(min_duration) X(max_duration)          \
  X(prototype_scale) X(word_gap_frames) X(edge_frames) X(source_train)      \
  X(target_train) X(target_test) X(source_vocab) X(target_vocab)            \
  X(min_word_length) X(max_word_length) X(min_words) X(max_words)           \
  X(successors) X(noise) X(lm_sentences) X(lm_max_repeats)

void CheckSpec(const SynthSpec &s) {
  auto require = [](bool ok, const std::string &msg) {
    if (!ok) throw ConfigError("synthetic corpus: " + msg);
  };
  require(s.num_prototypes >= 2 && s.num_prototypes <= 26,
          "num_prototypes must be in [2, 26]");
  require(s.feature_dim >= 1, "feature_dim must be positive");
  require(s.min_duration >= 1 && s.min_duration <= s.max_duration,
          "need 1 <= min_duration <= max_duration");
  require(s.word_gap_frames >= 0 && s.edge_frames >= 0,
          "silence lengths must be non-negative");
  require(s.min_word_length >= 1 && s.min_word_length <= s.max_word_length,
          "need 1 <= min_word_length <= max_word_length");
  require(s.min_words >= 1 && s.min_words <= s.max_words,
          "need 1 <= min_words <= max_words");
  require(s.source_train >= 0 && s.target_train >= 0 && s.target_test >= 0 &&
              s.lm_sentences >= 0,
          "utterance counts must be non-negative");
  require(s.lm_max_repeats >= 1, "lm_max_repeats must be >= 1");
  require(s.noise >= 0.0, "noise must be non-negative");
  double spellable = 0.0;
  for (int len = s.min_word_length; len <= s.max_word_length; ++len)
    spellable += std::pow(static_cast<double>(s.num_prototypes), len);
  for (int vocab : {s.source_vocab, s.target_vocab}) {
    require(vocab >= 1, "vocabulary sizes must be positive");
    require(vocab <= spellable,
            "vocabulary of " + std::to_string(vocab) +
                " words exceeds the " + std::to_string(static_cast<long>(spellable)) +
                " words the grammar can spell");
    require(s.successors >= 1 && s.successors <= vocab,
            "successors must be in [1, vocabulary size]");
  }
}

SynthLanguage MakeLanguage(const SynthSpec &spec, char first_letter,
                           int vocab_size, bool permute, Rng rng) {
  SynthLanguage lang;
  const int k = spec.num_prototypes;
  for (int i = 0; i < k; ++i) {
    lang.alphabet.emplace_back(1, static_cast<char>(first_letter + i));
    lang.prototype_of.push_back(i);
  }
  if (permute) rng.Shuffle(&lang.prototype_of);

  std::set<std::string> seen;
  while (static_cast<int>(lang.vocabulary.size()) < vocab_size) {
    const int len = spec.min_word_length +
                    static_cast<int>(rng.UniformInt(
                        spec.max_word_length - spec.min_word_length + 1));
    std::string word;
    for (int i = 0; i < len; ++i) word += lang.alphabet[rng.UniformInt(k)];
    if (seen.insert(word).second) lang.vocabulary.push_back(word);
  }
  const int vocab = static_cast<int>(lang.vocabulary.size());
  lang.successors.resize(vocab);
  for (int w = 0; w < vocab; ++w) {
    std::vector<int> all(vocab);
    for (int i = 0; i < vocab; ++i) all[i] = i;
    rng.Shuffle(&all);
    lang.successors[w].assign(all.begin(), all.begin() + spec.successors);
  }
  return lang;
}

std::string SampleSentence(const SynthSpec &spec, const SynthLanguage &lang,
                           Rng *rng) {
  const int n = spec.min_words +
                static_cast<int>(rng->UniformInt(spec.max_words - spec.min_words + 1));
  std::vector<std::string> words;
  int w = static_cast<int>(rng->UniformInt(lang.vocabulary.size()));
  for (int i = 0; i < n; ++i) {
    words.push_back(lang.vocabulary[w]);
    const auto &next = lang.successors[w];
    w = next[rng->UniformInt(next.size())];
  }
  return JoinWords(words);
}

int PrototypeOfLetter(const SynthLanguage &lang, const std::string &letter) {
  for (size_t i = 0; i < lang.alphabet.size(); ++i)
    if (lang.alphabet[i] == letter) return lang.prototype_of[i];
  throw VocabularyError("letter '" + letter + "' is not in the alphabet");
}

Utterance Render(const SynthCorpus &corpus, const SynthSpec &spec,
                 const SynthLanguage &lang, const std::string &id,
                 const std::string &transcript, Rng *noise_rng) {
  Utterance utt;
  utt.id = id;
  utt.transcript = transcript;
  const auto frames = RenderPrototypeFrames(corpus, lang, transcript,
                                            spec.word_gap_frames, spec.edge_frames);
  const size_t d = corpus.prototypes.dim(1);
  utt.features = Tensor({frames.size(), d});
  for (size_t t = 0; t < frames.size(); ++t) {
    auto src = corpus.prototypes.Row(frames[t]);
    auto dst = utt.features.Row(t);
    for (size_t j = 0; j < d; ++j)
      dst[j] = src[j] + (spec.noise > 0 ? noise_rng->Normal(0.0, spec.noise) : 0.0);
  }
  int pos = spec.edge_frames;
  for (const auto &word : SplitWords(transcript)) {
    int len = 0;
    for (const auto &g : SplitGraphemes(word))
      len += corpus.durations[PrototypeOfLetter(lang, g)];
    utt.alignment.push_back({word, pos, pos + len - 1});
    pos += len + spec.word_gap_frames;
  }
  return utt;
}

std::string MakeId(const char *prefix, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%05d", prefix, i);
  return buf;
}

}  // namespace

nlohmann::json SynthSpec::ToJson() const {
  nlohmann::json j;
#define X(f) j[#f] = f;
  SYNTH_FIELDS(X)
#undef X
  return j;
}

SynthSpec SynthSpec::FromJson(const nlohmann::json &j) {
  SynthSpec s;
  std::set<std::string> known;
#define X(f)                                      \
  known.insert(#f);                               \
  if (j.contains(#f)) j.at(#f).get_to(s.f);
  SYNTH_FIELDS(X)
#undef X
  for (const auto &[key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown synth key '" + key + "'");
  return s;
}

std::vector<int> RenderPrototypeFrames(const SynthCorpus &corpus,
                                       const SynthLanguage &lang,
                                       const std::string &transcript,
                                       int word_gap_frames, int edge_frames) {
  const int sil = corpus.silence_prototype();
  std::vector<int> frames(edge_frames, sil);
  const auto words = SplitWords(transcript);
  for (size_t w = 0; w < words.size(); ++w) {
    if (w) frames.insert(frames.end(), word_gap_frames, sil);
    for (const auto &g : SplitGraphemes(words[w])) {
      const int p = PrototypeOfLetter(lang, g);
      frames.insert(frames.end(), corpus.durations[p], p);
    }
  }
  frames.insert(frames.end(), edge_frames, sil);
  return frames;
}

SynthCorpus GenerateSynthCorpus(const SynthSpec &spec, uint64_t seed) {
  CheckSpec(spec);
  const Rng root(seed);
  SynthCorpus corpus;

  Rng proto_rng = root.Fork("prototypes");
  const int k = spec.num_prototypes;
  corpus.prototypes = Tensor({static_cast<size_t>(k + 1),
                              static_cast<size_t>(spec.feature_dim)});
  for (double &v : corpus.prototypes.data())
    v = proto_rng.Normal(0.0, spec.prototype_scale);
  for (int p = 0; p < k; ++p)
    corpus.durations.push_back(
        spec.min_duration +
        static_cast<int>(proto_rng.UniformInt(spec.max_duration - spec.min_duration + 1)));
  corpus.durations.push_back(1);  // silence lengths come from the spec

  corpus.source = MakeLanguage(spec, 'a', spec.source_vocab, false, root.Fork("source-language"));
  corpus.target = MakeLanguage(spec, 'A', spec.target_vocab, true, root.Fork("target-language"));

  auto render_set = [&](const SynthLanguage &lang, int count, const char *prefix,
                        const char *stream) {
    Rng text_rng = root.Fork(std::string(stream) + "-text");
    Rng noise_rng = root.Fork(std::string(stream) + "-noise");
    std::vector<Utterance> out;
    for (int i = 0; i < count; ++i)
      out.push_back(Render(corpus, spec, lang, MakeId(prefix, i),
                           SampleSentence(spec, lang, &text_rng), &noise_rng));
    return out;
  };
  corpus.source_train = render_set(corpus.source, spec.source_train, "src", "source-train");
  corpus.target_train = render_set(corpus.target, spec.target_train, "tgt", "target-train");
  corpus.target_test = render_set(corpus.target, spec.target_test, "tst", "target-test");

  Rng lm_rng = root.Fork("lm-text");
  std::vector<std::string> text;
  for (int i = 0; i < spec.lm_sentences; ++i) {
    const std::string s = SampleSentence(spec, corpus.target, &lm_rng);
    const int repeats = 1 + static_cast<int>(lm_rng.UniformInt(spec.lm_max_repeats));
    text.insert(text.end(), repeats, s);
  }
  lm_rng.Shuffle(&text);
  corpus.lm_text = std::move(text);
  return corpus;
}

}  // namespace rntforge
