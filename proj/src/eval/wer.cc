// src/eval/wer.cc

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

#include "rntforge/eval/wer.h"

#include <algorithm>

#include "rntforge/numerics/errors.h"
#include "rntforge/tokenize/grapheme.h"

namespace rntforge {

double WerBreakdown::wer() const {
  if (reference_words == 0) return 0.0;
  return static_cast<double>(errors()) / static_cast<double>(reference_words);
}

WerBreakdown &WerBreakdown::operator+=(const WerBreakdown &o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  reference_words += o.reference_words;
  return *this;
}

WerBreakdown AlignWords(const std::vector<std::string> &ref,
                        const std::vector<std::string> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int64_t>> d(n + 1, std::vector<int64_t>(m + 1));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int64_t>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int64_t>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int64_t sub = d[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  WerBreakdown w;
  w.reference_words = static_cast<int64_t>(n);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1])) {
      w.substitutions += ref[i - 1] != hyp[j - 1];
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++w.deletions;
      --i;
    } else {
      ++w.insertions;
      --j;
    }
  }
  return w;
}

WerBreakdown ComputeWer(const std::vector<std::string> &references,
                        const std::vector<std::string> &hypotheses) {
  if (references.size() != hypotheses.size())
    throw DimensionError("WER needs paired lists: " +
                         std::to_string(references.size()) + " references, " +
                         std::to_string(hypotheses.size()) + " hypotheses");
  if (references.empty()) throw DomainError("WER over an empty reference set");
  WerBreakdown total;
  for (size_t k = 0; k < references.size(); ++k)
    total += AlignWords(SplitWords(references[k]), SplitWords(hypotheses[k]));
  if (total.reference_words == 0)
    throw DomainError("WER references contain no words");
  return total;
}

double Werr(double baseline_wer, double system_wer) {
  if (!(baseline_wer > 0.0))
    throw DomainError("WERR needs a positive baseline WER");
  return 100.0 * (baseline_wer - system_wer) / baseline_wer;
}

}  // namespace rntforge
