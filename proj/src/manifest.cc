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

#include "polyvocab/manifest.h"

#include "json.hpp"
#include "polyvocab/error.h"
#include "polyvocab/hashing.h"

namespace polyvocab {

Manifest Manifest::Load(const std::filesystem::path& workdir) {
  Manifest manifest;
  const auto path = workdir / kFileName;
  if (!std::filesystem::exists(path)) return manifest;
  try {
    const auto doc = nlohmann::json::parse(ReadFileToString(path));
    for (const auto& r : doc.at("records")) {
      ManifestRecord record;
      record.stage = r.at("stage").get<std::string>();
      record.config_hash = r.at("config_hash").get<std::string>();
      record.seed = r.at("seed").get<std::uint64_t>();
      record.inputs = r.at("inputs").get<std::map<std::string, std::string>>();
      record.outputs = r.at("outputs").get<std::map<std::string, std::string>>();
      record.noop = r.at("noop").get<bool>();
      manifest.records_.push_back(std::move(record));
    }
    for (const auto& [hash, config] : doc.at("configs").items()) {
      manifest.configs_[hash] = config.dump();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataLossError("corrupt manifest " + path.string() + ": " + e.what());
  }
  return manifest;
}

void Manifest::Save(const std::filesystem::path& workdir) const {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : records_) {
    records.push_back({{"stage", r.stage},
                       {"config_hash", r.config_hash},
                       {"seed", r.seed},
                       {"inputs", r.inputs},
                       {"outputs", r.outputs},
                       {"noop", r.noop}});
  }
  nlohmann::json configs = nlohmann::json::object();
  for (const auto& [hash, text] : configs_) configs[hash] = nlohmann::json::parse(text);
  const nlohmann::json doc{{"records", records}, {"configs", configs}};
  WriteStringToFile(workdir / kFileName, doc.dump(1) + "\n");
}

const ManifestRecord* Manifest::Latest(const std::string& stage) const {
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->stage == stage) return &*it;
  }
  return nullptr;
}

void Manifest::RecordConfig(const std::string& hash, const std::string& config_json) {
  configs_[hash] = config_json;
}

}  // namespace polyvocab
