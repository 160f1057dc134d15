// Copyright 2026 The ScriptWriter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCRIPTWRITER_ERROR_H_
#define SCRIPTWRITER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scriptwriter {

enum class ErrorKind {
  kInvalidDimension,
  kDimensionMismatch,
  kEmptyInput,
  kUndefinedSimilarity,
  kTimeTravel,
  kStaleSignal,
  kUnknownConcept,
  kDeadConcept,
  kUnknownTerm,
  kUnmappedTerm,
  kUnknownValue,
  kUnparseableSentence,
  kVocabularyGap,
  kMalformedPath,
  kParse,
  kIo,
  kConfig,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library. The stage tag names the pipeline
// stage ("hrr", "memory", "ontology", ...) that rejected its input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string &message)
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string &stage() const { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace scriptwriter

#endif  // SCRIPTWRITER_ERROR_H_
