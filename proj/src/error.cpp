// Copyright 2026 The Needminer Authors.
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

#include "needminer/error.hpp"

namespace needminer {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kInvalidKeywordSet: return "InvalidKeywordSet";
    case ErrorCode::kDuplicateVote: return "DuplicateVote";
    case ErrorCode::kItemComplete: return "ItemComplete";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kInvalidVote: return "InvalidVote";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kClassTooSmall: return "ClassTooSmall";
    case ErrorCode::kMinorityTooSmall: return "MinorityTooSmall";
    case ErrorCode::kSingleClassTraining: return "SingleClassTraining";
    case ErrorCode::kInvalidHyperparameter: return "InvalidHyperparameter";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptModel: return "CorruptModel";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kSingleClassTruth: return "SingleClassTruth";
    case ErrorCode::kAllDegenerate: return "AllDegenerate";
  }
  return "UnknownError";
}

}  // namespace needminer
