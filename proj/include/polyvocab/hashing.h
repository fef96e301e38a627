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

#ifndef POLYVOCAB_HASHING_H_
#define POLYVOCAB_HASHING_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace polyvocab {

// Lowercase hex SHA-256 digests.
std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path& path);

std::string ReadFileToString(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void WriteStringToFile(const std::filesystem::path& path, std::string_view data);

}  // namespace polyvocab

#endif  // POLYVOCAB_HASHING_H_
