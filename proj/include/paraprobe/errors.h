// Copyright 2026 The paraprobe Authors.
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

#ifndef PARAPROBE_ERRORS_H_
#define PARAPROBE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace paraprobe {

// Failure classes. Per-item logs record the class name so error rates can be
// broken down after a run.
enum class ErrorKind {
  kIngest,
  kSchema,
  kConfig,
  kParse,
  kStructure,
  kGeneration,
  kNumeric,
  kTokenization,
  kFilter,
  kPrediction,
  kExecution,
  kTimeout,
  kTruncation,
  kStatistics,
  kCalibration,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace paraprobe

#endif  // PARAPROBE_ERRORS_H_
