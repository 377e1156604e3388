// include/rntforge/eval/wer.h

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

#ifndef RNTFORGE_EVAL_WER_H_
#define RNTFORGE_EVAL_WER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace rntforge {

struct WerBreakdown {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t reference_words = 0;

  int64_t errors() const { return substitutions + deletions + insertions; }
  // (S + D + I) / N as a ratio; 0 when N == 0.
  double wer() const;
  double percent() const { return 100.0 * wer(); }
  WerBreakdown &operator+=(const WerBreakdown &o);
};

// Minimum-edit-distance alignment of two word sequences with unit costs.
// The backtrace prefers substitution (or match), then deletion, then
// insertion.
WerBreakdown AlignWords(const std::vector<std::string> &ref,
                        const std::vector<std::string> &hyp);

// Corpus WER over paired sentences. Throws DimensionError for unequal list
// lengths and DomainError when there are no references or no reference
// words.
WerBreakdown ComputeWer(const std::vector<std::string> &references,
                        const std::vector<std::string> &hypotheses);

// Relative WER reduction in percent: 100 (baseline - system) / baseline.
// Throws DomainError unless baseline > 0.
double Werr(double baseline_wer, double system_wer);

}  // namespace rntforge

#endif  // RNTFORGE_EVAL_WER_H_
