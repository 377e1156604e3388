// tests/unit/cli-test.cc

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


#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rntforge/data/manifest.h"
#include "rntforge/data/wav.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("rntforge-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path &path() const { return path_; }
  fs::path operator/(const std::string &s) const { return path_ / s; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run Invoke(const TempDir &dir, const std::string &args) {
  fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  std::string cmd = std::string("\"") + RNTFORGE_BIN + "\" " + args + " >\"" +
                    out.string() + "\" 2>\"" + err.string() + "\"";
  int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = Slurp(out);
  r.err = Slurp(err);
  return r;
}

std::string Q(const fs::path &p) { return "\"" + p.string() + "\""; }

void WriteFile(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

nlohmann::json TinyConfig() {
  nlohmann::json train = {{"epochs", 1}, {"batch_size", 4}, {"learning_rate", 0.01}};
  return {
      {"seed", 3},
      {"synth",
       {{"num_prototypes", 4}, {"feature_dim", 3}, {"min_duration", 4},
        {"max_duration", 5}, {"source_train", 16}, {"target_train", 8},
        {"target_test", 4}, {"source_vocab", 8}, {"target_vocab", 6},
        {"min_words", 1}, {"max_words", 2}, {"min_word_length", 1},
        {"max_word_length", 3}, {"successors", 2}, {"noise", 0.3},
        {"lm_sentences", 12}}},
      {"model",
       {{"input_dim", 24}, {"encoder_layers", 1}, {"encoder_hidden", 5},
        {"encoder_projection", 4}, {"embedding_dim", 3}, {"prediction_layers", 1},
        {"prediction_hidden", 4}, {"prediction_projection", 3}, {"joint_dim", 5}}},
      {"bpe_merges", 4},
      {"train",
       {{"source_ce", train}, {"source_rnnt", train}, {"target_ce", train},
        {"stage1", train}, {"lm", train}, {"rnnt", train}}},
      {"strategies", {"random", "source-ce-encoder"}},
      {"beam_width", 2},
  };
}

std::vector<std::string> Transcripts(const fs::path &manifest) {
  std::vector<std::string> out;
  for (const auto &e : rntforge::ReadManifest(manifest)) out.push_back(e.transcript);
  return out;
}

}  // namespace

TEST_CASE("usage and exit codes") {
  TempDir dir;
  Run none = Invoke(dir, "");
  CHECK(none.status == 1);
  CHECK(none.err.find("synth") != std::string::npos);
  CHECK(none.err.find("experiment") != std::string::npos);

  Run help = Invoke(dir, "--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("score") != std::string::npos);

  CHECK(Invoke(dir, "--bogus").status == 1);
  CHECK(Invoke(dir, "frobnicate").status == 1);
  // Missing required flag.
  CHECK(Invoke(dir, "score --ref x").status == 1);
  CHECK(Invoke(dir, "decode --model m --data d --beam 0").status == 1);
  CHECK(Invoke(dir, "train-rnnt --data d --labels l --out o --init nonsense").status == 1);

  // Runtime failures are exit 2 with a message.
  Run missing = Invoke(dir, "score --ref " + Q(dir / "nope.txt") + " --hyp " +
                                Q(dir / "nope.txt"));
  CHECK(missing.status == 2);
  CHECK(missing.err.find("error:") == 0);
}

TEST_CASE("every subcommand takes a seed") {
  TempDir dir;
  for (const char *sub : {"synth", "features", "tokenize", "train-ce", "train-lm",
                          "train-rnnt", "transplant", "decode", "score", "experiment"}) {
    CAPTURE(sub);
    Run r = Invoke(dir, std::string(sub) + " --help");
    CHECK(r.status == 0);
    CHECK(r.out.find("--seed") != std::string::npos);
  }
}

TEST_CASE("score") {
  TempDir dir;
  WriteFile(dir / "ref.txt", "the cat sat\na b c d\n");
  WriteFile(dir / "hyp.txt", "the cat sat\na x c\n");
  Run same = Invoke(dir, "score --ref " + Q(dir / "ref.txt") + " --hyp " + Q(dir / "ref.txt"));
  CHECK(same.status == 0);
  CHECK(same.out == "WER 0.00 (S=0 D=0 I=0 N=7)\n");
  Run diff = Invoke(dir, "score --ref " + Q(dir / "ref.txt") + " --hyp " + Q(dir / "hyp.txt"));
  CHECK(diff.status == 0);
  CHECK(diff.out == "WER 28.57 (S=1 D=1 I=0 N=7)\n");
}

TEST_CASE("features") {
  TempDir dir;
  rntforge::Waveform w;
  for (int i = 0; i < 16000 / 4; ++i)
    w.samples.push_back(3000.0 * std::sin(2.0 * 3.141592653589793 * 440.0 * i / 16000.0));
  rntforge::WriteWav(dir / "a.wav", w);
  Run plain = Invoke(dir, "features --wav " + Q(dir / "a.wav") + " --out " + Q(dir / "f"));
  CHECK(plain.status == 0);
  rntforge::Tensor f = rntforge::LoadFeatures(dir / "f");
  CHECK(f.dim(1) == 80);
  CHECK(f.dim(0) > 20);
  Run st = Invoke(dir, "features --stacked --wav " + Q(dir / "a.wav") + " --out " + Q(dir / "s"));
  CHECK(st.status == 0);
  rntforge::Tensor s = rntforge::LoadFeatures(dir / "s");
  CHECK(s.dim(1) == 640);
  CHECK(s.dim(0) < f.dim(0));
}

TEST_CASE("synth is reproducible from the seed") {
  TempDir dir;
  WriteFile(dir / "tiny.json", TinyConfig().dump(2));
  auto synth = [&](const std::string &out, int seed) {
    return Invoke(dir, "synth --config " + Q(dir / "tiny.json") + " --seed " +
                           std::to_string(seed) + " --out " + Q(dir / out));
  };
  REQUIRE(synth("a", 11).status == 0);
  REQUIRE(synth("b", 11).status == 0);
  REQUIRE(synth("c", 12).status == 0);
  int compared = 0;
  bool any_diff = false;
  for (const auto &e : fs::recursive_directory_iterator(dir / "a")) {
    if (!e.is_regular_file()) continue;
    fs::path rel = fs::relative(e.path(), dir / "a");
    CAPTURE(rel.string());
    CHECK(Slurp(e.path()) == Slurp(dir / "b" / rel));
    if (Slurp(e.path()) != Slurp(dir / "c" / rel)) any_diff = true;
    ++compared;
  }
  CHECK(compared > 10);
  CHECK(any_diff);
}

TEST_CASE("pipeline end to end") {
  TempDir dir;
  std::string cfg = " --config " + Q(dir / "tiny.json");
  WriteFile(dir / "tiny.json", TinyConfig().dump(2));
  REQUIRE(Invoke(dir, "synth" + cfg + " --out " + Q(dir / "corpus")).status == 0);
  fs::path corpus = dir / "corpus";

  Run tok = Invoke(dir, "tokenize --unit grapheme --text " + Q(corpus / "lm_text.txt") +
                            " --out " + Q(dir / "graph"));
  REQUIRE(tok.status == 0);
  CHECK(tok.out.find("grapheme labels") != std::string::npos);
  Run wp = Invoke(dir, "tokenize --unit wordpiece" + cfg + " --text " +
                           Q(corpus / "lm_text.txt") + " --out " + Q(dir / "wp"));
  REQUIRE(wp.status == 0);
  CHECK(fs::exists(dir / "wp" / "merges.tsv"));

  Run lm = Invoke(dir, "train-lm" + cfg + " --text " + Q(corpus / "lm_text.txt") +
                           " --labels " + Q(dir / "graph" / "labels.txt") + " --out " +
                           Q(dir / "lm"));
  REQUIRE(lm.status == 0);
  CHECK(lm.out.find("perplexity") != std::string::npos);

  // The source language has its own alphabet.
  std::string source_text;
  for (const auto &t : Transcripts(corpus / "source_train.tsv")) source_text += t + "\n";
  WriteFile(dir / "source_text.txt", source_text);
  REQUIRE(Invoke(dir, "tokenize --unit grapheme --text " + Q(dir / "source_text.txt") +
                          " --out " + Q(dir / "src")).status == 0);
  Run ce = Invoke(dir, "train-ce" + cfg + " --data " + Q(corpus / "source_train.tsv") +
                           " --labels " + Q(dir / "src" / "labels.txt") + " --out " +
                           Q(dir / "ce"));
  REQUIRE(ce.status == 0);
  CHECK(ce.out.find("frame accuracy") != std::string::npos);
  CHECK(fs::exists(dir / "ce_log.csv"));

  Run tp = Invoke(dir, "transplant" + cfg + " --labels " + Q(dir / "graph" / "labels.txt") +
                           " --source " + Q(dir / "ce") + " --out " + Q(dir / "tp"));
  CHECK(tp.status == 0);
  CHECK(tp.out.find("target tensors: 13 (4 copied)") != std::string::npos);

  Run rn = Invoke(dir, "train-rnnt" + cfg + " --init source-ce-encoder --source-ce " +
                           Q(dir / "ce") + " --data " + Q(corpus / "target_train.tsv") +
                           " --labels " + Q(dir / "graph" / "labels.txt") + " --out " +
                           Q(dir / "rnnt"));
  REQUIRE(rn.status == 0);
  CHECK(fs::exists(dir / "rnnt_log.csv"));

  // A strategy missing its source checkpoint is a runtime error.
  Run bad = Invoke(dir, "train-rnnt" + cfg + " --init source-ce-encoder --data " +
                            Q(corpus / "target_train.tsv") + " --labels " +
                            Q(dir / "graph" / "labels.txt") + " --out " + Q(dir / "x"));
  CHECK(bad.status == 2);

  Run dec = Invoke(dir, "decode --beam 2 --model " + Q(dir / "rnnt") + " --data " +
                            Q(corpus / "target_test.tsv") + " --out " + Q(dir / "hyp.txt"));
  REQUIRE(dec.status == 0);
  std::vector<std::string> refs = Transcripts(corpus / "target_test.tsv");
  std::string ref_text;
  for (const auto &r : refs) ref_text += r + "\n";
  WriteFile(dir / "ref.txt", ref_text);
  Run sc = Invoke(dir, "score --ref " + Q(dir / "ref.txt") + " --hyp " + Q(dir / "hyp.txt"));
  CHECK(sc.status == 0);
  CHECK(sc.out.rfind("WER ", 0) == 0);

  Run dec2 = Invoke(dir, "decode --beam 2 --model " + Q(dir / "rnnt") + " --data " +
                             Q(corpus / "target_test.tsv"));
  REQUIRE(dec2.status == 0);
  CHECK(dec2.out == Slurp(dir / "hyp.txt"));
}

TEST_CASE("experiment") {
  TempDir dir;
  WriteFile(dir / "tiny.json", TinyConfig().dump(2));
  Run r = Invoke(dir, "experiment --config " + Q(dir / "tiny.json") + " --out " +
                          Q(dir / "exp"));
  REQUIRE(r.status == 0);
  CHECK(r.out == Slurp(dir / "exp" / "report.md"));
  CHECK(r.out.find("source-ce-encoder") != std::string::npos);
}
