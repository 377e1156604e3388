// include/rntforge/numerics/parallel.h

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

#ifndef RNTFORGE_NUMERICS_PARALLEL_H_
#define RNTFORGE_NUMERICS_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rntforge {

// Worker count: RNTFORGE_THREADS if set and positive, otherwise the
// hardware concurrency.
int NumThreads();

// Runs fn(i) for i in [0, n). Work items must write to disjoint outputs;
// callers that reduce do so afterwards in index order so results do not
// depend on the thread count. The exception from the lowest failing index
// is rethrown.
void ParallelFor(size_t n, const std::function<void(size_t)> &fn);

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_PARALLEL_H_
