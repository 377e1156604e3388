// tests/unit/eval-test.cc

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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rntforge/eval/experiment.h"
#include "rntforge/eval/report.h"
#include "rntforge/eval/wer.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/rng.h"

using namespace rntforge;
namespace fs = std::filesystem;

namespace {

using Words = std::vector<std::string>;

// Plain Levenshtein distance over words, two-row table.
int64_t EditDistance(const Words &a, const Words &b) {
  std::vector<int64_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Words RandomWords(Rng *rng, int max_len) {
  Words w(rng->UniformInt(max_len + 1));
  for (auto &x : w) x = std::string(1, static_cast<char>('a' + rng->UniformInt(4)));
  return w;
}

std::string Join(const Words &w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
  return s;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &tag) {
    path = fs::temp_directory_path() / ("rntforge-eval-" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// A pipeline small enough to run in seconds.
nlohmann::json TinyExperiment() {
  nlohmann::json train = {{"epochs", 2}, {"batch_size", 4}, {"learning_rate", 0.01}};
  return {
      {"seed", 7},
      {"synth",
       {{"num_prototypes", 4}, {"feature_dim", 3}, {"min_duration", 4},
        {"max_duration", 5}, {"source_train", 24}, {"target_train", 12},
        {"target_test", 6}, {"source_vocab", 8}, {"target_vocab", 6},
        {"min_words", 1}, {"max_words", 2}, {"min_word_length", 1},
        {"max_word_length", 3}, {"successors", 2}, {"noise", 0.3},
        {"lm_sentences", 20}}},
      {"model",
       {{"input_dim", 24}, {"encoder_layers", 2}, {"encoder_hidden", 6},
        {"encoder_projection", 4}, {"embedding_dim", 3}, {"prediction_layers", 1},
        {"prediction_hidden", 4}, {"prediction_projection", 3}, {"joint_dim", 6}}},
      {"bpe_merges", 5},
      {"train",
       {{"source_ce", train}, {"source_rnnt", train}, {"target_ce", train},
        {"stage1", train}, {"lm", train}, {"rnnt", train}}},
      {"strategies", {"random"}},
      {"beam_width", 2},
  };
}

}  // namespace

// ------------------------------------------------------------------- WER

TEST_CASE("wer examples") {
  WerBreakdown same = AlignWords({"a", "b"}, {"a", "b"});
  CHECK(same.errors() == 0);
  CHECK(same.wer() == 0.0);
  WerBreakdown del = AlignWords({"a", "b", "c"}, {"a", "c"});
  CHECK(del.deletions == 1);
  CHECK(del.errors() == 1);
  CHECK(FormatWer(del.percent()) == "33.33");
  WerBreakdown ins = AlignWords({"a"}, {"a", "x"});
  CHECK(ins.insertions == 1);
  // One substitution beats a deletion plus an insertion.
  WerBreakdown sub = AlignWords({"a", "b"}, {"a", "x"});
  CHECK(sub.substitutions == 1);
  CHECK(sub.errors() == 1);
  // Ties go to substitution, then deletion.
  WerBreakdown tie = AlignWords({"a", "b"}, {"c"});
  CHECK(tie.substitutions == 1);
  CHECK(tie.deletions == 1);
  CHECK(tie.insertions == 0);
  WerBreakdown empty_hyp = AlignWords({"a", "b"}, {});
  CHECK(empty_hyp.deletions == 2);

  WerBreakdown corpus = ComputeWer({"a b c", "d"}, {"a c", "d e"});
  CHECK(corpus.reference_words == 4);
  CHECK(corpus.errors() == 2);
  CHECK(corpus.wer() == 0.5);
  CHECK_THROWS_AS(ComputeWer({"a"}, {}), DimensionError);
  CHECK_THROWS_AS(ComputeWer({}, {}), DomainError);
  CHECK_THROWS_AS(ComputeWer({" "}, {"a"}), DomainError);
}

TEST_CASE("wer edit count matches a plain DP oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Words ref = RandomWords(&rng, 8), hyp = RandomWords(&rng, 8);
    WerBreakdown b = AlignWords(ref, hyp);
    CHECK(b.errors() == EditDistance(ref, hyp));
    CHECK(b.reference_words == static_cast<int64_t>(ref.size()));
    // The breakdown accounts for both lengths.
    CHECK(static_cast<int64_t>(ref.size()) - b.deletions + b.insertions ==
          static_cast<int64_t>(hyp.size()));
    // Shared words appended to both sides add no edits.
    Words common = RandomWords(&rng, 3);
    Words ref2 = ref, hyp2 = hyp;
    ref2.insert(ref2.end(), common.begin(), common.end());
    hyp2.insert(hyp2.end(), common.begin(), common.end());
    CHECK(AlignWords(ref2, hyp2).errors() == b.errors());
    CHECK(AlignWords(ref, ref).errors() == 0);
    if (!ref.empty()) {
      WerBreakdown c = ComputeWer({Join(ref)}, {Join(hyp)});
      CHECK(c.errors() == b.errors());
    }
  }
}

TEST_CASE("werr arithmetic") {
  CHECK(std::abs(Werr(26.53, 22.38) - 15.6) <= 0.1);
  CHECK(std::abs(Werr(26.53, 21.89) - 17.4) <= 0.2);
  CHECK(std::abs(Werr(83.77, 47.96) - 42.7) <= 0.1);
  CHECK(FormatWerr(Werr(26.53, 22.38)) == "15.6");
  CHECK(FormatWerr(Werr(26.53, 21.89)) == "17.5");
  CHECK(FormatWerr(Werr(83.77, 47.96)) == "42.7");
  for (double b : {0.5, 10.0, 99.0}) CHECK(Werr(b, b) == 0.0);
  CHECK(Werr(20.0, 25.0) == -25.0);
  CHECK_THROWS_AS(Werr(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Werr(-1.0, 1.0), DomainError);
}

TEST_CASE("werr rows are computed against random at the same fraction") {
  auto row = [](std::string id, double f, int64_t errors) {
    StrategyReport r;
    r.strategy = std::move(id);
    r.fraction = f;
    r.ok = true;
    r.wer.substitutions = errors;
    r.wer.reference_words = 100;
    return r;
  };
  std::vector<StrategyReport> rows = {row("random", 1.0, 20), row("x", 1.0, 15),
                                      row("random", 0.5, 40), row("x", 0.5, 20),
                                      row("y", 0.25, 10)};
  rows.push_back(row("z", 1.0, 0));
  rows.back().ok = false;
  ComputeWerr(&rows);
  CHECK(rows[0].has_werr);
  CHECK(rows[0].werr == 0.0);
  CHECK(rows[1].werr == doctest::Approx(25.0));
  CHECK(rows[3].werr == doctest::Approx(50.0));
  CHECK_FALSE(rows[4].has_werr);
  CHECK_FALSE(rows[5].has_werr);
}

// ----------------------------------------------------------- loss curves

TEST_CASE("loss curves export and read back exactly") {
  TempDir dir("curves");
  std::vector<StrategyReport> reports(3);
  Rng rng(5);
  for (int s = 0; s < 3; ++s) {
    reports[s].strategy = "s" + std::to_string(s);
    for (int e = 0; e < 6; ++e) reports[s].losses.push_back(rng.Uniform() * 10.0);
  }
  const fs::path path = dir.path / "loss_curves.csv";
  ExportLossCurves(reports, path);
  std::string text = Slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 19);
  CHECK(text.rfind("strategy,epoch,loss\ns0,1,", 0) == 0);
  std::vector<LossCurve> back = ReadLossCurves(path);
  REQUIRE(back.size() == 3);
  for (int s = 0; s < 3; ++s) {
    CHECK(back[s].first == reports[s].strategy);
    CHECK(back[s].second == reports[s].losses);
  }
  std::ofstream(dir.path / "bad.csv") << "strategy,epoch,loss\na,2,1.0\n";
  CHECK_THROWS_AS(ReadLossCurves(dir.path / "bad.csv"), DataError);
  CHECK_THROWS_AS(ReadLossCurves(dir.path / "missing.csv"), IoError);
}

// ------------------------------------------------------------ experiment

TEST_CASE("experiment config parsing") {
  ExperimentConfig c = ExperimentConfig::FromJson(TinyExperiment());
  CHECK(c.seed == 7);
  CHECK(c.synth.target_train == 12);
  CHECK(c.model.encoder_hidden == 6);
  CHECK(c.rnnt.epochs == 2);
  CHECK(c.beam_width == 2);
  ExperimentConfig again = ExperimentConfig::FromJson(c.ToJson());
  CHECK(again.ToJson() == c.ToJson());

  auto with = [](const char *key, nlohmann::json v) {
    nlohmann::json j = TinyExperiment();
    j[key] = std::move(v);
    return j;
  };
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("colour", 1)), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("strategies", {"bogus"})), StrategyError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("strategies", nlohmann::json::array())),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("beam_width", 0)), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("fractions", {0.5})), ConfigError);
  nlohmann::json scaled = with("fractions", {0.0, 1.0});
  scaled["scaling_strategies"] = {"random"};
  CHECK_THROWS_AS(ExperimentConfig::FromJson(scaled), ConfigError);
  scaled["fractions"] = {0.5, 1.0};
  scaled["scaling_strategies"] = {"random", "two-stage-grapheme"};
  CHECK_THROWS_AS(ExperimentConfig::FromJson(scaled), ConfigError);
  scaled["scaling_strategies"] = {"random", "target-ce+lm"};
  CHECK_THROWS_AS(ExperimentConfig::FromJson(scaled), ConfigError);
  scaled["scaling_strategies"] = {"random", "source-ce+lm", "source-rnnt-encoder"};
  CHECK_NOTHROW(ExperimentConfig::FromJson(scaled));
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("train", {{"rnnt", {{"lr", 1}}}})),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("train", {{"decoder", nlohmann::json::object()}})),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::FromJson(with("seed", "x")), ConfigError);

  TrainOptions o = TrainOptionsFromJson({{"optimizer", "sgd"}, {"epoch_examples", 40}});
  CHECK(o.optimizer.method == OptimizerOptions::Method::kSgd);
  CHECK(o.epoch_examples == 40);
  CHECK_THROWS_AS(TrainOptionsFromJson({{"optimizer", "rmsprop"}}), ConfigError);
  CHECK_THROWS_AS(TrainOptionsFromJson({{"learning_rate", 0.0}}), ConfigError);
}

TEST_CASE("random-only experiment gives a single row with zero werr") {
  TempDir dir("random-only");
  ExperimentConfig c = ExperimentConfig::FromJson(TinyExperiment());
  ExperimentResult r = RunExperiment(c, dir.path);
  REQUIRE(r.main.size() == 1);
  CHECK(r.main[0].ok);
  CHECK(r.main[0].has_werr);
  CHECK(r.main[0].werr == 0.0);
  CHECK(r.main[0].losses.size() == 2);
  CHECK(r.target_train_utterances == 12);
  CHECK(r.target_test_utterances == 6);
  CHECK(r.scaling.empty());
  CHECK(r.pretrain.empty());

  const std::string md = Slurp(dir.path / "report.md");
  CHECK(md.find("| random | ") != std::string::npos);
  CHECK(md.find("| 0.0 |") != std::string::npos);
  const std::string csv = Slurp(dir.path / "report.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(ReadLossCurves(dir.path / "loss_curves.csv").size() == 1);
  for (const char *f : {"config.json", "timing.txt", "target_graphemes.txt",
                        "strategies/random/decoded.tsv",
                        "strategies/random/transplant.csv"})
    CHECK(fs::exists(dir.path / f));
}

TEST_CASE("full strategy matrix runs and is reproducible") {
  nlohmann::json j = TinyExperiment();
  j["strategies"] = {"random", "source-rnnt-encoder", "source-ce-encoder",
                     "two-stage-grapheme", "two-stage-external", "target-ce+lm",
                     "source-ce+lm"};
  j["fractions"] = {0.5, 1.0};
  j["scaling_strategies"] = {"random", "source-ce-encoder"};
  ExperimentConfig c = ExperimentConfig::FromJson(j);
  TempDir a("matrix-a"), b("matrix-b");
  ExperimentResult ra = RunExperiment(c, a.path);
  RunExperiment(c, b.path);

  REQUIRE(ra.main.size() == 7);
  for (const auto &row : ra.main) {
    CAPTURE(row.strategy);
    CHECK(row.ok);
    CHECK(row.has_werr);
    CHECK(row.losses.size() == 2);
  }
  REQUIRE(ra.scaling.size() == 4);
  CHECK(ra.scaling[0].train_utterances == 6);
  CHECK(ra.scaling[2].train_utterances == 12);
  CHECK(ra.pretrain.size() == 6);

  // Every output except the wall-clock log is byte-identical.
  size_t compared = 0;
  for (const auto &e : fs::recursive_directory_iterator(a.path)) {
    if (!e.is_regular_file() || e.path().filename() == "timing.txt") continue;
    const fs::path rel = fs::relative(e.path(), a.path);
    CAPTURE(rel.string());
    CHECK(Slurp(e.path()) == Slurp(b.path / rel));
    ++compared;
  }
  CHECK(compared > 40);
  CHECK(Slurp(a.path / "report.md").find("## Data scaling") != std::string::npos);
}

TEST_CASE("a failing strategy only fails its own row") {
  nlohmann::json j = TinyExperiment();
  j["strategies"] = {"random", "source-ce-encoder"};
  j["source_units"] = "grapheme";
  j["synth"]["source_train"] = 0;  // nothing to pretrain on
  TempDir dir("failing");
  ExperimentResult r = RunExperiment(ExperimentConfig::FromJson(j), dir.path);
  REQUIRE(r.main.size() == 2);
  CHECK(r.main[0].ok);
  CHECK_FALSE(r.main[1].ok);
  CHECK_FALSE(r.main[1].error.empty());
  CHECK(Slurp(dir.path / "report.md").find("FAILED: ") != std::string::npos);
}
