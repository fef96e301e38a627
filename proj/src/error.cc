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

#include "polyvocab/error.h"

namespace polyvocab {

Error InvalidArgumentError(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

Error NotFoundError(const std::string& message) {
  return Error(ErrorCode::kNotFound, message);
}

Error DataLossError(const std::string& message) {
  return Error(ErrorCode::kDataLoss, message);
}

Error StaleArtifactError(const std::string& message) {
  return Error(ErrorCode::kStaleArtifact, message);
}

}  // namespace polyvocab
