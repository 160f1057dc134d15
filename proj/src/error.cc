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

#include "scriptwriter/error.h"

namespace scriptwriter {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kUndefinedSimilarity: return "undefined-similarity";
    case ErrorKind::kTimeTravel: return "time-travel";
    case ErrorKind::kStaleSignal: return "stale-signal";
    case ErrorKind::kUnknownConcept: return "unknown-concept";
    case ErrorKind::kDeadConcept: return "dead-concept";
    case ErrorKind::kUnknownTerm: return "unknown-term";
    case ErrorKind::kUnmappedTerm: return "unmapped-term";
    case ErrorKind::kUnknownValue: return "unknown-value";
    case ErrorKind::kUnparseableSentence: return "unparseable-sentence";
    case ErrorKind::kVocabularyGap: return "vocabulary-gap";
    case ErrorKind::kMalformedPath: return "malformed-path";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace scriptwriter
