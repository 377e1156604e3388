// tests/unit/transducer-test.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <vector>

#include "doctest.h"
#include "rntforge/data/synth-corpus.h"
#include "rntforge/nn/checkpoint.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/gradcheck.h"
#include "rntforge/numerics/logmath.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/tokenize/grapheme.h"
#include "rntforge/transducer/decode.h"
#include "rntforge/transducer/joint.h"
#include "rntforge/transducer/rnnt-loss.h"
#include "rntforge/transducer/rnnt-model.h"
#include "rntforge/transducer/rnnt-trainer.h"

using namespace rntforge;
namespace fs = std::filesystem;

namespace {

Tensor RandomTensor(std::vector<size_t> shape, Rng *rng, double scale = 1.0) {
  Tensor t(std::move(shape));
  for (double &x : t.data()) x = rng->Normal(0.0, scale);
  return t;
}

// Random [T x (U+1) x V] rows of normalised log-probabilities.
Tensor RandomLattice(size_t T, size_t U, size_t V, Rng *rng) {
  Tensor lp({T, U + 1, V});
  for (size_t t = 0; t < T; ++t)
    for (size_t u = 0; u <= U; ++u) {
      std::vector<double> z(V);
      for (double &x : z) x = rng->Normal(0.0, 1.5);
      double lse = LogSumExp(z);
      for (size_t k = 0; k < V; ++k) lp.at(t, u, k) = z[k] - lse;
    }
  return lp;
}

std::vector<int> RandomTarget(size_t U, size_t V, int blank, Rng *rng) {
  std::vector<int> y;
  while (y.size() < U) {
    int k = static_cast<int>(rng->UniformInt(V));
    if (k != blank) y.push_back(k);
  }
  return y;
}

// Sum over every monotonic alignment path, enumerated recursively in the
// probability domain.
double BruteForceProbability(const Tensor &lp, const std::vector<int> &y, int blank) {
  const size_t T = lp.dim(0), U = y.size();
  std::function<double(size_t, size_t)> walk = [&](size_t t, size_t u) -> double {
    if (t == T - 1 && u == U) return std::exp(lp.at(t, u, blank));
    double p = 0.0;
    if (t + 1 < T) p += std::exp(lp.at(t, u, blank)) * walk(t + 1, u);
    if (u < U) p += std::exp(lp.at(t, u, y[u])) * walk(t, u + 1);
    return p;
  };
  return walk(0, 0);
}

LabelInventory SmallInventory() { return BuildGraphemeInventory({"ab"}); }  // V = 5

RnntConfig TinyConfig() {
  RnntConfig c;
  c.input_dim = 3;
  c.encoder_layers = 2;
  c.encoder_hidden = 4;
  c.encoder_projection = 3;
  c.embedding_dim = 3;
  c.prediction_layers = 1;
  c.prediction_hidden = 4;
  c.prediction_projection = 3;
  c.joint_dim = 5;
  return c;
}

RnntModel PeakyModel(uint64_t seed, double scale) {
  Rng rng(seed);
  RnntModel m = RnntModel::Random(TinyConfig(), SmallInventory(), &rng);
  ParamList params;
  m.CollectParams(&params);
  for (const auto &p : params)
    for (double &x : p.value->data()) x = rng.Normal(0.0, scale);
  return m;
}

// Scorer whose posteriors depend only on the frame and the number of
// labels emitted so far.
class TableScorer : public TransducerScorer {
 public:
  using Fn = std::function<std::vector<double>(int t, int u)>;
  TableScorer(int frames, int vocab, Fn fn) : frames_(frames), vocab_(vocab), fn_(fn) {}
  int num_frames() const override { return frames_; }
  int vocab_size() const override { return vocab_; }
  int blank() const override { return 0; }
  PredictorState Start() const override {
    PredictorState s;
    s.projected = {0.0};
    return s;
  }
  PredictorState Extend(const PredictorState &s, int) const override {
    PredictorState n = s;
    n.projected[0] += 1.0;
    return n;
  }
  std::vector<double> LogProbs(int t, const PredictorState &s) const override {
    return fn_(t, static_cast<int>(s.projected[0]));
  }

 private:
  int frames_, vocab_;
  Fn fn_;
};

// log P(y) summed over alignments that emit at most `cap` labels per frame,
// with posteriors taken from the scorer along the prefix of y.
double CappedSequenceLogProb(const TransducerScorer &s, const std::vector<int> &y, int cap) {
  const int T = s.num_frames(), U = static_cast<int>(y.size()), blank = s.blank();
  std::vector<PredictorState> states = {s.Start()};
  for (int u = 0; u < U; ++u) states.push_back(s.Extend(states.back(), y[u]));
  // lp[t][u]
  std::vector<std::vector<std::vector<double>>> lp(T);
  for (int t = 0; t < T; ++t)
    for (int u = 0; u <= U; ++u) lp[t].push_back(s.LogProbs(t, states[u]));
  // a[u][c]: mass at (t, u) having emitted c labels in frame t.
  std::vector<double> start(U + 1, kLogZero);
  start[0] = 0.0;
  for (int t = 0; t < T; ++t) {
    std::vector<std::vector<double>> a(U + 1, std::vector<double>(cap + 1, kLogZero));
    for (int u = 0; u <= U; ++u) a[u][0] = start[u];
    std::vector<double> next(U + 1, kLogZero);
    for (int u = 0; u <= U; ++u)
      for (int c = 0; c <= cap; ++c) {
        if (a[u][c] == kLogZero) continue;
        next[u] = LogAdd(next[u], a[u][c] + lp[t][u][blank]);
        if (u < U && c < cap)
          a[u + 1][c + 1] = LogAdd(a[u + 1][c + 1], a[u][c] + lp[t][u][y[u]]);
      }
    start = next;
  }
  return start[U];
}

void EnumerateSequences(int max_len, int vocab, int blank,
                        const std::function<void(const std::vector<int> &)> &f) {
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    f(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int k = 0; k < vocab; ++k) {
      if (k == blank) continue;
      cur.push_back(k);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

}  // namespace

// ------------------------------------------------------------------ loss

TEST_CASE("loss examples on uniform lattices") {
  Tensor one({1, 1, 5}, -std::log(5.0));
  RnntLossResult r = RnntLoss(one, std::vector<int>{}, 0);
  CHECK(r.loss == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(std::abs(r.loss - 1.60944) < 1e-5);

  Tensor two({2, 2, 5}, -std::log(5.0));
  RnntLossResult r2 = RnntLoss(two, std::vector<int>{3}, 0);
  CHECK(r2.loss == doctest::Approx(3 * std::log(5.0) - std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(r2.loss - 4.13517) < 1e-5);
}

TEST_CASE("loss matches exhaustive path enumeration") {
  Rng rng(1234);
  int cases = 0;
  for (size_t T = 1; T <= 4; ++T)
    for (size_t U = 0; U <= 3; ++U)
      for (size_t V = 2; V <= 4; ++V)
        for (int rep = 0; rep < 3; ++rep) {
          Tensor lp = RandomLattice(T, U, V, &rng);
          int blank = static_cast<int>(rng.UniformInt(V));
          std::vector<int> y = RandomTarget(U, V, blank, &rng);
          double brute = -std::log(BruteForceProbability(lp, y, blank));
          double loss = RnntLoss(lp, y, blank).loss;
          CHECK(std::abs(loss - brute) <= 1e-9 * std::abs(brute));
          ++cases;
        }
  CHECK(cases == 144);
}

TEST_CASE("lattice invariants") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    size_t T = 1 + rng.UniformInt(8), U = rng.UniformInt(6), V = 2 + rng.UniformInt(5);
    Tensor lp = RandomLattice(T, U, V, &rng);
    std::vector<int> y = RandomTarget(U, V, 0, &rng);
    Lattice lat = BuildLattice(lp, y, 0);
    for (size_t t = 0; t < T; ++t)
      for (size_t u = 0; u <= U; ++u) {
        std::vector<double> row(V);
        for (size_t k = 0; k < V; ++k) row[k] = lat.log_probs.at(t, u, k);
        CHECK(std::abs(LogSumExp(row)) <= 1e-9);
      }
    CHECK(lat.alpha.at(0, 0) == 0.0);
    double fwd = lat.ForwardLogLikelihood();
    CHECK(std::abs(fwd - lat.BackwardLogLikelihood()) <= 1e-9 * (1 + std::abs(fwd)));
    // Every path crosses from frame t to t+1 (or terminates) through exactly
    // one blank arc, so these sums equal log P at every t.
    for (double v : lat.FrameCrossingLogLikelihoods())
      CHECK(std::abs(v - fwd) <= 1e-8 * (1 + std::abs(fwd)));
  }
}

TEST_CASE("per-frame occupancy sums are not constant in general") {
  // T = 2, U = 1: path A emits at t=0, path B at t=1. The node occupancy
  // sums are P + P_A at t=0 and P + P_B at t=1.
  Tensor lp({2, 2, 2});
  auto set = [&](size_t t, size_t u, double p_label) {
    lp.at(t, u, 1) = std::log(p_label);
    lp.at(t, u, 0) = std::log(1.0 - p_label);
  };
  set(0, 0, 0.9);
  set(0, 1, 0.2);
  set(1, 0, 0.3);
  set(1, 1, 0.4);
  Lattice lat = BuildLattice(lp, std::vector<int>{1}, 0);
  const double pa = 0.9 * 0.8 * 0.6, pb = 0.1 * 0.3 * 0.6, p = pa + pb;
  CHECK(std::exp(lat.ForwardLogLikelihood()) == doctest::Approx(p).epsilon(1e-12));
  std::vector<double> occ = lat.FrameOccupancyLogSums();
  CHECK(std::exp(occ[0]) == doctest::Approx(p + pa).epsilon(1e-12));
  CHECK(std::exp(occ[1]) == doctest::Approx(p + pb).epsilon(1e-12));
  CHECK(std::abs(occ[0] - occ[1]) > 0.1);
  for (double v : lat.FrameCrossingLogLikelihoods())
    CHECK(std::exp(v) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("loss gradient matches finite differences") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(40 + seed);
    Tensor lp = RandomLattice(3, 2, 4, &rng);
    std::vector<int> y = RandomTarget(2, 4, 0, &rng);
    RnntLossResult r = RnntLoss(lp, y, 0);
    Tensor numeric = FiniteDiffGrad(
        [&](const Tensor &x) { return RnntLoss(x, y, 0).loss; }, lp);
    CHECK(RelativeError(r.grad, numeric) <= 1e-6);
  }
}

TEST_CASE("loss input validation") {
  Tensor lp({2, 2, 3}, -std::log(3.0));
  CHECK_THROWS_AS(RnntLoss(lp, std::vector<int>{0}, 0), IndexError);
  CHECK_THROWS_AS(RnntLoss(lp, std::vector<int>{3}, 0), IndexError);
  CHECK_THROWS_AS(RnntLoss(lp, std::vector<int>{1, 2}, 0), DimensionError);
  CHECK_THROWS_AS(RnntLoss(lp, std::vector<int>{1}, 3), IndexError);
  CHECK_THROWS_AS(RnntLoss(Tensor({2, 3}), std::vector<int>{1}, 0), DimensionError);
  Tensor nan = lp;
  nan.at(0, 0, 1) = NAN;
  CHECK_THROWS_AS(RnntLoss(nan, std::vector<int>{1}, 0), DomainError);
  Tensor dead = lp;
  dead.at(1, 1, 0) = kLogZero;
  CHECK_THROWS_AS(RnntLoss(dead, std::vector<int>{1}, 0), DomainError);
}

// ----------------------------------------------------------------- joint

TEST_CASE("joint network shapes and uniform output") {
  JointNetwork joint(3, 2, 4, 6);
  Rng rng(5);
  Tensor lp = JointForward(joint, RandomTensor({4, 3}, &rng), RandomTensor({3, 2}, &rng));
  CHECK(lp.shape() == std::vector<size_t>{4, 3, 6});
  for (double v : lp.data()) CHECK(v == doctest::Approx(-std::log(6.0)).epsilon(1e-15));
  Tensor single = JointForward(joint, RandomTensor({1, 3}, &rng), RandomTensor({1, 2}, &rng));
  CHECK(single.shape() == std::vector<size_t>{1, 1, 6});
  CHECK_THROWS_AS(JointForward(joint, Tensor({4, 2}), Tensor({3, 2})), DimensionError);
  CHECK_THROWS_AS(JointForward(joint, Tensor({4, 3}), Tensor({3, 3})), DimensionError);
  CHECK_FALSE(joint.prediction_proj.has_bias());
  CHECK_FALSE(joint.output.has_bias());
  CHECK(joint.encoder_proj.has_bias());
}

TEST_CASE("joint forward matches per-cell recomputation") {
  Rng rng(6);
  JointNetwork joint(3, 2, 4, 5);
  joint.Initialize(&rng);
  for (double &b : joint.encoder_proj.bias.data()) b = rng.Normal();
  Tensor he = RandomTensor({3, 3}, &rng), hp = RandomTensor({4, 2}, &rng);
  Tensor lp = JointForward(joint, he, hp);
  for (size_t t = 0; t < 3; ++t)
    for (size_t u = 0; u < 4; ++u) {
      std::vector<double> h(4), z(5, 0.0);
      for (size_t j = 0; j < 4; ++j) {
        double a = joint.encoder_proj.bias[j];
        for (size_t i = 0; i < 3; ++i) a += joint.encoder_proj.weight.at(j, i) * he.at(t, i);
        for (size_t i = 0; i < 2; ++i) a += joint.prediction_proj.weight.at(j, i) * hp.at(u, i);
        h[j] = std::tanh(a);
      }
      for (size_t k = 0; k < 5; ++k)
        for (size_t j = 0; j < 4; ++j) z[k] += joint.output.weight.at(k, j) * h[j];
      double total = 0.0;
      for (double v : z) total += std::exp(v);
      for (size_t k = 0; k < 5; ++k)
        CHECK(std::abs(lp.at(t, u, k) - (z[k] - std::log(total))) <= 1e-12);
    }
}

TEST_CASE("joint backward matches finite differences") {
  Rng rng(7);
  JointNetwork joint(3, 2, 4, 5);
  ParamList params;
  joint.CollectParams("joint", &params);
  for (const auto &p : params)
    for (double &x : p.value->data()) x = rng.Normal(0.0, 0.7);
  Tensor he = RandomTensor({3, 3}, &rng), hp = RandomTensor({2, 2}, &rng);
  Tensor g = RandomTensor({3, 2, 5}, &rng);
  auto loss = [&] {
    Tensor lp = JointForward(joint, he, hp);
    double s = 0.0;
    for (size_t i = 0; i < lp.size(); ++i) s += g[i] * lp[i];
    return s;
  };
  JointCache cache;
  JointForward(joint, he, hp, &cache);
  JointNetwork grad = joint.ZerosLike();
  Tensor d_enc, d_pred;
  JointBackward(joint, he, hp, cache, g, &grad, &d_enc, &d_pred);
  ParamList gparams;
  grad.CollectParams("joint", &gparams);
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor *slot = params[i].value;
    const Tensor saved = *slot;
    Tensor numeric = FiniteDiffGrad(
        [&](const Tensor &x) { *slot = x; double v = loss(); *slot = saved; return v; }, saved);
    CHECK(RelativeError(*gparams[i].value, numeric) <= 1e-6);
  }
  Tensor num_enc = FiniteDiffGrad(
      [&](const Tensor &x) { Tensor keep = he; he = x; double v = loss(); he = keep; return v; }, he);
  CHECK(RelativeError(d_enc, num_enc) <= 1e-6);
  Tensor num_pred = FiniteDiffGrad(
      [&](const Tensor &x) { Tensor keep = hp; hp = x; double v = loss(); hp = keep; return v; }, hp);
  CHECK(RelativeError(d_pred, num_pred) <= 1e-6);
}

// ----------------------------------------------------------------- model

TEST_CASE("model invariants and checkpoint round trip") {
  Rng rng(8);
  RnntModel m = RnntModel::Random(TinyConfig(), SmallInventory(), &rng);
  CHECK(m.joint.vocab_size() == m.vocab_size());
  CHECK(m.prediction.embedding.vocab_size() == m.vocab_size());
  CHECK(m.blank() == 0);

  Checkpoint ckpt = m.ToCheckpoint();
  CHECK(ckpt.meta.provenance == "rnnt");
  CHECK(ckpt.meta.blank_index == 0);
  CHECK(ckpt.meta.labels == m.inventory.labels());
  CHECK(ckpt.Find("encoder.layer0.w_input") != nullptr);
  CHECK(ckpt.Find("encoder.layer1.w_projection") != nullptr);
  CHECK(ckpt.Find("prediction.embedding")->role == ParamRole::kEmbedding);
  CHECK(ckpt.Find("prediction.lstm.layer0.w_recurrent") != nullptr);
  CHECK(ckpt.Find("joint.output.weight")->role == ParamRole::kOutput);
  CHECK(ckpt.Find("joint.encoder_proj.bias") != nullptr);
  CHECK(ckpt.Find("joint.prediction_proj.bias") == nullptr);

  const fs::path base = fs::temp_directory_path() / "rntforge-transducer-ckpt";
  SaveCheckpoint(ckpt, base);
  RnntModel back = RnntModel::FromCheckpoint(LoadCheckpoint(base));
  CHECK(back.ToCheckpoint() == ckpt);
  CHECK(back.config == m.config);
  fs::remove(ManifestPath(base));
  fs::remove(BlobPath(base));

  Checkpoint foreign = ckpt;
  foreign.meta.architecture["model"] = "ce";
  CHECK_THROWS_AS(RnntModel::FromCheckpoint(foreign), CodecError);

  CHECK(RnntConfig::FromJson(TinyConfig().ToJson()) == TinyConfig());
  nlohmann::json bad = TinyConfig().ToJson();
  bad["heads"] = 4;
  CHECK_THROWS_AS(RnntConfig::FromJson(bad), ConfigError);
  bad = TinyConfig().ToJson();
  bad["joint_dim"] = 0;
  CHECK_THROWS_AS(RnntConfig::FromJson(bad), ConfigError);
}

TEST_CASE("end-to-end gradient matches finite differences") {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    RnntModel m = PeakyModel(300 + seed, 0.5);
    Rng rng(seed);
    Tensor x = RandomTensor({4, 3}, &rng);
    std::vector<int> y = {1, 3};
    RnntModel grad = m.ZerosLike();
    LossStat stat = m.LossAndGrad(x, y, &grad);
    CHECK(stat.count == 1.0);
    CHECK(stat.sum == doctest::Approx(RnntLoss(m.LatticeLogProbs(x, y), y, 0).loss));
    ParamList params, gparams;
    m.CollectParams(&params);
    grad.CollectParams(&gparams);
    REQUIRE(params.size() == gparams.size());
    for (size_t i = 0; i < params.size(); ++i) {
      Tensor *slot = params[i].value;
      const Tensor saved = *slot;
      Tensor numeric = FiniteDiffGrad(
          [&](const Tensor &v) {
            *slot = v;
            double l = m.LossAndGrad(x, y, nullptr).sum;
            *slot = saved;
            return l;
          },
          saved);
      INFO(params[i].name);
      CHECK(RelativeError(*gparams[i].value, numeric) <= 1e-4);
    }
  }
}

// ---------------------------------------------------------------- decode

TEST_CASE("greedy decode on rigged scorers") {
  auto blank_first = [](int, int) { return std::vector<double>{-0.1, -3.0, -3.0}; };
  CHECK(GreedyDecode(TableScorer(1, 3, blank_first)).empty());

  auto emit_two = [](int t, int u) {
    if (t == 0 && u == 0) return std::vector<double>{-20.0, -20.0, -1e-8};
    return std::vector<double>{-1e-8, -20.0, -20.0};
  };
  CHECK(GreedyDecode(TableScorer(3, 3, emit_two)) == std::vector<int>{2});

  // Ties resolve to the lowest index.
  auto tie = [](int, int u) {
    if (u == 0) return std::vector<double>{-2.0, -1.0, -1.0};
    return std::vector<double>{-0.5, -1.0, -1.0};
  };
  CHECK(GreedyDecode(TableScorer(1, 3, tie)) == std::vector<int>{1});

  // A scorer that never prefers blank is capped per frame.
  auto chatty = [](int, int) { return std::vector<double>{-5.0, -0.01, -5.0}; };
  DecodeOptions opts;
  opts.max_symbols_per_frame = 3;
  CHECK(GreedyDecode(TableScorer(4, 3, chatty), opts).size() == 12);
  CHECK(GreedyDecode(TableScorer(4, 3, chatty)).size() == 40);
}

TEST_CASE("greedy emissions are bounded by frames times the cap") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    RnntModel m = PeakyModel(seed, 2.0);
    Rng rng(seed);
    Tensor x = RandomTensor({5, 3}, &rng);
    RnntScorer scorer(m, x);
    for (int cap : {1, 2, 10}) {
      DecodeOptions opts;
      opts.max_symbols_per_frame = cap;
      CHECK(GreedyDecode(scorer, opts).size() <= static_cast<size_t>(5 * cap));
    }
  }
}

TEST_CASE("beam of one equals greedy") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RnntModel m = PeakyModel(1000 + seed, 1.5);
    Rng rng(seed);
    Tensor x = RandomTensor({2 + rng.UniformInt(5), 3}, &rng, 2.0);
    RnntScorer scorer(m, x);
    std::vector<Hypothesis> beam = BeamDecode(scorer, 1);
    REQUIRE(beam.size() == 1);
    CHECK(beam[0].labels == GreedyDecode(scorer));
  }
  RnntModel m = PeakyModel(1, 1.0);
  RnntScorer scorer(m, Tensor({2, 3}));
  CHECK_THROWS_AS(BeamDecode(scorer, 0), ConfigError);
}

TEST_CASE("beam output is sorted, merged and finite") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RnntModel m = PeakyModel(2000 + seed, 1.0);
    Rng rng(seed);
    RnntScorer scorer(m, RandomTensor({4, 3}, &rng));
    std::vector<Hypothesis> nbest = BeamDecode(scorer, 8);
    REQUIRE_FALSE(nbest.empty());
    CHECK(nbest.size() <= 8);
    std::map<std::vector<int>, int> seen;
    for (size_t i = 0; i < nbest.size(); ++i) {
      CHECK(std::isfinite(nbest[i].score));
      if (i) CHECK(nbest[i - 1].score >= nbest[i].score);
      CHECK(++seen[nbest[i].labels] == 1);
      // A merged score never exceeds the exact sequence probability.
      CHECK(nbest[i].score <=
            CappedSequenceLogProb(scorer, nbest[i].labels, 10) + 1e-9);
    }
  }
}

TEST_CASE("widening the beam can lower the best score") {
  // Two label extensions that have not paid their closing blank outrank
  // the finished greedy path, which then drops out of the wider beam.
  Rng rng(5037);
  RnntModel m = RnntModel::Random(TinyConfig(), SmallInventory(), &rng);
  RnntScorer scorer(m, RandomTensor({4, 3}, &rng, 2.0));
  Hypothesis one = BeamDecode(scorer, 1).front();
  Hypothesis two = BeamDecode(scorer, 2).front();
  CHECK(one.labels == GreedyDecode(scorer));
  CHECK(two.score < one.score - 1.0);
  CHECK(two.labels.size() == 40);
  CHECK(CappedSequenceLogProb(scorer, two.labels, 10) <
        CappedSequenceLogProb(scorer, one.labels, 10));
}

TEST_CASE("wide beam finds the exhaustive argmax sequence") {
  DecodeOptions opts;
  opts.max_symbols_per_frame = 2;
  int found = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(4000 + seed);
    RnntModel m = RnntModel::Random(TinyConfig(), SmallInventory(), &rng);
    const int T = 1 + static_cast<int>(rng.UniformInt(3));
    RnntScorer scorer(m, RandomTensor({static_cast<size_t>(T), 3}, &rng, 2.0));
    std::vector<int> best_seq;
    double best = kLogZero;
    EnumerateSequences(T * 2, 5, 0, [&](const std::vector<int> &y) {
      double lp = CappedSequenceLogProb(scorer, y, 2);
      if (lp > best) best = lp, best_seq = y;
    });
    if (BeamDecode(scorer, 64, opts).front().labels == best_seq) ++found;
  }
  CHECK(found >= 99);
}

TEST_CASE("decoded output file round trip") {
  const fs::path path = fs::temp_directory_path() / "rntforge-decoded.tsv";
  std::vector<DecodedUtterance> d = {{"u1", "ab cd", -1.25}, {"u2", "", -0.5}};
  WriteDecoded(path, d);
  std::vector<DecodedUtterance> back = ReadDecoded(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "u1");
  CHECK(back[0].text == "ab cd");
  CHECK(back[0].score == -1.25);
  CHECK(back[1].text == "");
  fs::remove(path);
}

// --------------------------------------------------------------- trainer

TEST_CASE("training a tiny transducer lowers the loss") {
  SynthSpec spec;
  spec.feature_dim = 3;
  spec.num_prototypes = 3;
  spec.min_duration = spec.max_duration = 4;
  spec.source_train = 0;
  spec.target_train = 24;
  spec.target_test = 4;
  spec.source_vocab = 4;
  spec.target_vocab = 4;
  spec.min_words = spec.max_words = 1;
  spec.min_word_length = 1;
  spec.max_word_length = 2;
  spec.noise = 0.1;
  spec.prototype_scale = 2.0;
  spec.lm_sentences = 0;
  SynthCorpus c = GenerateSynthCorpus(spec, 5);
  std::vector<std::string> texts;
  for (const auto &u : c.target_train) texts.push_back(u.transcript);
  for (const auto &u : c.target_test) texts.push_back(u.transcript);
  LabelInventory inv = BuildGraphemeInventory(texts);
  RnntConfig cfg = TinyConfig();
  cfg.input_dim = 24;
  std::vector<RnntExample> train = MakeRnntExamples(c.target_train, inv);
  CHECK(train[0].features.dim(1) == 24);
  CHECK(train[0].target == GraphemeEncode(c.target_train[0].transcript, inv));

  TrainOptions opts;
  opts.epochs = 5;
  opts.batch_size = 4;
  opts.optimizer.learning_rate = 0.02;
  auto run = [&] {
    Rng rng(3);
    RnntModel m = RnntModel::Random(cfg, inv, &rng);
    TrainLog log = TrainRnnt(&m, train, opts);
    return std::make_pair(m.ToCheckpoint(), log);
  };
  auto [ckpt, log] = run();
  REQUIRE(log.epochs.size() == 5);
  CHECK(log.epochs.back().loss < log.epochs.front().loss);
  auto [ckpt2, log2] = run();
  CHECK(ckpt == ckpt2);

  RnntModel m = RnntModel::FromCheckpoint(ckpt);
  std::vector<RnntExample> test = MakeRnntExamples(c.target_test, inv);
  std::vector<DecodedUtterance> dec = DecodeExamples(m, test, 4);
  REQUIRE(dec.size() == test.size());
  for (size_t i = 0; i < dec.size(); ++i) {
    CHECK(dec[i].id == test[i].id);
    CHECK(std::isfinite(dec[i].score));
  }
}
