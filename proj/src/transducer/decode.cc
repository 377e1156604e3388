// src/transducer/decode.cc

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

#include "rntforge/transducer/decode.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/linalg.h"
#include "rntforge/numerics/logmath.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

RnntScorer::RnntScorer(const RnntModel &model, const Tensor &features)
    : model_(model),
      enc_proj_(model.joint.encoder_proj.Forward(model.Encode(features))) {}

PredictorState RnntScorer::Start() const {
  PredictorState s;
  s.lstm = model_.prediction.lstm.ZeroState();
  return Extend(s, model_.blank());
}

PredictorState RnntScorer::Extend(const PredictorState &state, int label) const {
  PredictorState next;
  next.lstm = state.lstm;
  std::vector<double> out = model_.prediction.Step(label, &next.lstm);
  next.projected.assign(model_.joint.joint_dim(), 0.0);
  MatVecAdd(model_.joint.prediction_proj.weight, out, next.projected);
  return next;
}

std::vector<double> RnntScorer::LogProbs(int t,
                                         const PredictorState &state) const {
  return JointCellLogProbs(model_.joint, enc_proj_.Row(t), state.projected);
}

std::vector<int> GreedyDecode(const TransducerScorer &scorer,
                              const DecodeOptions &opts) {
  std::vector<int> out;
  PredictorState state = scorer.Start();
  const int blank = scorer.blank();
  for (int t = 0; t < scorer.num_frames(); ++t) {
    for (int emitted = 0; emitted < opts.max_symbols_per_frame; ++emitted) {
      std::vector<double> lp = scorer.LogProbs(t, state);
      int best = static_cast<int>(
          std::max_element(lp.begin(), lp.end()) - lp.begin());
      if (best == blank) break;
      out.push_back(best);
      state = scorer.Extend(state, best);
    }
  }
  return out;
}

namespace {

struct Entry {
  double score;
  bool finished;
  size_t index;  // into finished, or parent in active
  int label;     // extension label for active entries
};

}  // namespace

std::vector<Hypothesis> BeamDecode(const TransducerScorer &scorer,
                                   int beam_width, const DecodeOptions &opts) {
  if (beam_width < 1)
    throw ConfigError("beam width must be at least 1, got " +
                      std::to_string(beam_width));
  const size_t beam = static_cast<size_t>(beam_width);
  const int blank = scorer.blank(), V = scorer.vocab_size();

  std::vector<Hypothesis> hyps(1);
  hyps[0].state = scorer.Start();

  for (int t = 0; t < scorer.num_frames(); ++t) {
    std::vector<Hypothesis> finished;
    std::map<std::vector<int>, size_t> finished_at;
    std::vector<Hypothesis> active = std::move(hyps);
    for (int step = 0; !active.empty(); ++step) {
      const bool forced = step >= opts.max_symbols_per_frame;
      std::vector<Entry> extensions;
      for (size_t a = 0; a < active.size(); ++a) {
        std::vector<double> lp = scorer.LogProbs(t, active[a].state);
        for (int k = 0; k < V; ++k) {
          if (k == blank) {
            double s = active[a].score + lp[k];
            auto it = finished_at.find(active[a].labels);
            if (it != finished_at.end()) {
              Hypothesis &f = finished[it->second];
              f.score = LogAdd(f.score, s);
            } else {
              finished_at.emplace(active[a].labels, finished.size());
              Hypothesis h;
              h.labels = active[a].labels;
              h.score = s;
              h.state = active[a].state;
              finished.push_back(std::move(h));
            }
          } else if (!forced) {
            extensions.push_back({active[a].score + lp[k], false, a, k});
          }
        }
      }
      std::vector<Entry> pool;
      pool.reserve(finished.size() + extensions.size());
      for (size_t i = 0; i < finished.size(); ++i)
        pool.push_back({finished[i].score, true, i, blank});
      pool.insert(pool.end(), extensions.begin(), extensions.end());
      std::stable_sort(pool.begin(), pool.end(),
                       [](const Entry &x, const Entry &y) {
                         return x.score > y.score;
                       });
      if (pool.size() > beam) pool.resize(beam);

      std::vector<Hypothesis> kept_finished, next_active;
      for (const Entry &e : pool) {
        if (e.finished) {
          kept_finished.push_back(std::move(finished[e.index]));
        } else {
          Hypothesis h;
          h.labels = active[e.index].labels;
          h.labels.push_back(e.label);
          h.score = e.score;
          h.state = scorer.Extend(active[e.index].state, e.label);
          next_active.push_back(std::move(h));
        }
      }
      finished = std::move(kept_finished);
      finished_at.clear();
      for (size_t i = 0; i < finished.size(); ++i)
        finished_at.emplace(finished[i].labels, i);
      active = std::move(next_active);
    }
    std::stable_sort(finished.begin(), finished.end(),
                     [](const Hypothesis &x, const Hypothesis &y) {
                       return x.score > y.score;
                     });
    hyps = std::move(finished);
  }
  return hyps;
}

DecodedUtterance DecodeUtterance(const RnntModel &model, const std::string &id,
                                 const Tensor &stacked, int beam_width,
                                 const DecodeOptions &opts) {
  RnntScorer scorer(model, stacked);
  std::vector<Hypothesis> nbest = BeamDecode(scorer, beam_width, opts);
  DecodedUtterance d;
  d.id = id;
  d.score = nbest.front().score;
  d.text = DecodeBoundaryLabels(nbest.front().labels, model.inventory,
                                BoundaryPolicy::kImplicitBoundary);
  return d;
}

void WriteDecoded(const std::filesystem::path &path,
                  const std::vector<DecodedUtterance> &decoded) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto &d : decoded) {
    out << d.id << '\t' << d.text << '\t' << std::fixed
        << std::setprecision(6) << d.score << '\n';
  }
}

std::vector<DecodedUtterance> ReadDecoded(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<DecodedUtterance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto a = line.find('\t');
    auto b = line.rfind('\t');
    if (a == std::string::npos || a == b)
      throw DataError("malformed decode line: " + line);
    DecodedUtterance d;
    d.id = line.substr(0, a);
    d.text = line.substr(a + 1, b - a - 1);
    d.score = std::stod(line.substr(b + 1));
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace rntforge
