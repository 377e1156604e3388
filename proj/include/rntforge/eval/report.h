// include/rntforge/eval/report.h

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

#ifndef RNTFORGE_EVAL_REPORT_H_
#define RNTFORGE_EVAL_REPORT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rntforge/eval/experiment.h"

namespace rntforge {

// WER to two decimals, WERR to one, as in the published tables.
std::string FormatWer(double percent);
std::string FormatWerr(double percent);

std::string RenderReportMarkdown(const ExperimentConfig &config,
                                 const ExperimentResult &result);
std::string RenderReportCsv(const ExperimentResult &result);

using LossCurve = std::pair<std::string, std::vector<double>>;

// CSV "strategy,epoch,loss", one row per epoch of every report that has a
// loss series, with losses printed to round-trip exactly.
void ExportLossCurves(const std::vector<StrategyReport> &reports,
                      const std::filesystem::path &path);
std::vector<LossCurve> ReadLossCurves(const std::filesystem::path &path);

}  // namespace rntforge

#endif  // RNTFORGE_EVAL_REPORT_H_
