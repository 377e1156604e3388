// include/rntforge/numerics/errors.h

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

#ifndef RNTFORGE_NUMERICS_ERRORS_H_
#define RNTFORGE_NUMERICS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rntforge {

// Root of every error thrown by the library. Callers that only need a
// diagnostic can catch this; the subclasses let tests and the CLI tell the
// failure modes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RNTFORGE_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

RNTFORGE_DEFINE_ERROR(DimensionError);
RNTFORGE_DEFINE_ERROR(DomainError);
RNTFORGE_DEFINE_ERROR(IndexError);
RNTFORGE_DEFINE_ERROR(EvaluationError);
RNTFORGE_DEFINE_ERROR(TrainingError);
RNTFORGE_DEFINE_ERROR(VocabularyError);
RNTFORGE_DEFINE_ERROR(DecodeError);
RNTFORGE_DEFINE_ERROR(AlignmentError);
RNTFORGE_DEFINE_ERROR(ConfigError);
RNTFORGE_DEFINE_ERROR(DataError);
RNTFORGE_DEFINE_ERROR(TransplantError);
RNTFORGE_DEFINE_ERROR(StrategyError);
RNTFORGE_DEFINE_ERROR(IoError);

#undef RNTFORGE_DEFINE_ERROR

class CodecError : public Error {
 public:
  enum class Kind { kBadMagic, kVersionMismatch, kTruncated, kIntegrity, kMeta };

  CodecError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_ERRORS_H_
