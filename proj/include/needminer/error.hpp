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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace needminer {

// Every domain failure raised by the library carries one of these codes. The
// CLI prints the code name, so names are part of the external interface.
enum class ErrorCode {
  kIoError,
  kMalformedLine,
  kMissingField,
  kEmptyText,
  kInvalidKeywordSet,
  kDuplicateVote,
  kItemComplete,
  kUnknownItem,
  kInvalidVote,
  kInvalidConfig,
  kEmptyVocabulary,
  kEmptyDataset,
  kClassTooSmall,
  kMinorityTooSmall,
  kSingleClassTraining,
  kInvalidHyperparameter,
  kDimensionMismatch,
  kVersionMismatch,
  kCorruptModel,
  kLengthMismatch,
  kEmpty,
  kSingleClassTruth,
  kAllDegenerate,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace needminer
