// src/eval/report.cc

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

#include "rntforge/eval/report.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}


std::string WerrCell(const StrategyReport &r) {
  return r.has_werr ? FormatWerr(r.werr) : "n/a";
}

std::string Status(const StrategyReport &r) {
  return r.ok ? "ok" : "FAILED: " + r.error;
}

}  // namespace

std::string FormatWer(double percent) { return Fixed(percent, 2); }
std::string FormatWerr(double percent) { return Fixed(percent, 1); }

std::string RenderReportMarkdown(const ExperimentConfig &config,
                                 const ExperimentResult &result) {
  std::ostringstream os;
  os << "# Transfer-learning benchmark\n\n";
  os << "Seed " << config.seed << ", " << result.target_train_utterances
     << " target training utterances, " << result.target_test_utterances
     << " test utterances, beam width " << config.beam_width << ", "
     << config.rnnt.epochs << " epochs of "
     << (config.rnnt.epoch_examples > 0 ? config.rnnt.epoch_examples
                                        : static_cast<int>(result.target_train_utterances))
     << " utterances.\n\n";
  os << "| Strategy | WER [%] | WERR [%] | S | D | I | N | Epoch-1 loss | "
        "Final loss | Status |\n";
  os << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---|\n";
  for (const auto &r : result.main) {
    os << "| " << r.strategy << " | "
       << (r.ok ? FormatWer(r.wer.percent()) : "-") << " | " << WerrCell(r)
       << " | ";
    if (r.ok)
      os << r.wer.substitutions << " | " << r.wer.deletions << " | "
         << r.wer.insertions << " | " << r.wer.reference_words << " | ";
    else
      os << "- | - | - | - | ";
    os << (r.losses.empty() ? "-" : Fixed(r.losses.front(), 4)) << " | "
       << (r.losses.empty() ? "-" : Fixed(r.losses.back(), 4)) << " | "
       << Status(r) << " |\n";
  }
  if (!result.scaling.empty()) {
    os << "\n## Data scaling\n\n";
    os << "| Fraction | Utterances | Strategy | WER [%] | WERR [%] | Status |\n";
    os << "|---:|---:|---|---:|---:|---|\n";
    for (const auto &r : result.scaling) {
      os << "| " << Fixed(100.0 * r.fraction, 0) << "% | " << r.train_utterances
         << " | " << r.strategy << " | "
         << (r.ok ? FormatWer(r.wer.percent()) : "-") << " | " << WerrCell(r)
         << " | " << Status(r) << " |\n";
    }
  }
  if (!result.pretrain.empty()) {
    os << "\n## Pretrained models\n\n";
    os << "| Model | Metric | Value | Epoch losses |\n";
    os << "|---|---|---:|---|\n";
    for (const auto &p : result.pretrain) {
      os << "| " << p.name << " | " << p.metric << " | " << Fixed(p.value, 4)
         << " | ";
      for (size_t i = 0; i < p.losses.size(); ++i)
        os << (i ? " " : "") << Fixed(p.losses[i], 4);
      os << " |\n";
    }
  }
  return os.str();
}

std::string RenderReportCsv(const ExperimentResult &result) {
  std::ostringstream os;
  os << "section,strategy,fraction,utterances,status,wer,werr,substitutions,"
        "deletions,insertions,reference_words,epoch1_loss,final_loss\n";
  auto rows = [&](const char *section, const std::vector<StrategyReport> &v) {
    for (const auto &r : v) {
      os << section << ',' << r.strategy << ',' << Fixed(r.fraction, 4) << ','
         << r.train_utterances << ',' << (r.ok ? "ok" : "failed") << ',';
      if (r.ok)
        os << FormatWer(r.wer.percent()) << ','
           << (r.has_werr ? FormatWerr(r.werr) : "") << ','
           << r.wer.substitutions << ',' << r.wer.deletions << ','
           << r.wer.insertions << ',' << r.wer.reference_words << ',';
      else
        os << ",,,,,,";
      os << (r.losses.empty() ? "" : Fixed(r.losses.front(), 6)) << ','
         << (r.losses.empty() ? "" : Fixed(r.losses.back(), 6)) << '\n';
    }
  };
  rows("main", result.main);
  rows("scaling", result.scaling);
  return os.str();
}

void ExportLossCurves(const std::vector<StrategyReport> &reports,
                      const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "strategy,epoch,loss\n";
  for (const auto &r : reports)
    for (size_t e = 0; e < r.losses.size(); ++e)
      out << r.strategy << ',' << e + 1 << ',' << Exact(r.losses[e]) << '\n';
}

std::vector<LossCurve> ReadLossCurves(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "strategy,epoch,loss")
    throw DataError(path.string() + " lacks the loss-curve header");
  std::vector<LossCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto a = line.find(','), b = line.rfind(',');
    if (a == std::string::npos || a == b)
      throw DataError("malformed loss-curve row: " + line);
    std::string name = line.substr(0, a);
    int epoch = std::stoi(line.substr(a + 1, b - a - 1));
    double loss = std::stod(line.substr(b + 1));
    if (curves.empty() || curves.back().first != name)
      curves.push_back({name, {}});
    if (static_cast<int>(curves.back().second.size()) != epoch - 1)
      throw DataError("loss curve for " + name + " skips epoch " +
                      std::to_string(epoch));
    curves.back().second.push_back(loss);
  }
  return curves;
}

}  // namespace rntforge
