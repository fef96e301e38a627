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

#ifndef POLYVOCAB_MANIFEST_H_
#define POLYVOCAB_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace polyvocab {

// One stage execution. Paths of workdir artifacts are workdir-relative.
struct ManifestRecord {
  std::string stage;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::map<std::string, std::string> outputs;  // path -> sha256
  bool noop = false;

  bool operator==(const ManifestRecord&) const = default;
};

// Append-only log of stage executions kept in <workdir>/manifest.json,
// together with every resolved configuration seen, keyed by its hash.
class Manifest {
 public:
  static constexpr const char* kFileName = "manifest.json";

  static Manifest Load(const std::filesystem::path& workdir);
  void Save(const std::filesystem::path& workdir) const;

  // Most recent record of |stage|, or nullptr.
  const ManifestRecord* Latest(const std::string& stage) const;
  void Append(ManifestRecord record) { records_.push_back(std::move(record)); }
  void RecordConfig(const std::string& hash, const std::string& config_json);

  const std::vector<ManifestRecord>& records() const { return records_; }

 private:
  std::vector<ManifestRecord> records_;
  std::map<std::string, std::string> configs_;
};

}  // namespace polyvocab

#endif  // POLYVOCAB_MANIFEST_H_
