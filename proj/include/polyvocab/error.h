// Copyright 2026 The Polyvocab Authors
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

#ifndef POLYVOCAB_ERROR_H_
#define POLYVOCAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace polyvocab {

enum class ErrorCode {
  kInvalidArgument,  // precondition or configuration violation
  kNotFound,         // missing file or pipeline artifact
  kDataLoss,         // malformed input data
  kStaleArtifact,    // artifact content no longer matches its manifest hash
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

Error InvalidArgumentError(const std::string& message);
Error NotFoundError(const std::string& message);
Error DataLossError(const std::string& message);
Error StaleArtifactError(const std::string& message);

}  // namespace polyvocab

#endif  // POLYVOCAB_ERROR_H_
