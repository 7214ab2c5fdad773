// Copyright 2026 The xcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XCORR_STORE_H_
#define XCORR_STORE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "xcorr/experiment.h"
#include "xcorr/prediction.h"
#include "xcorr/scenario.h"

namespace xcorr {

// Append-only directory of JSON-lines files, one subdirectory per scenario
// hash: config.json, observations.jsonl, traces.jsonl, predictions.jsonl.
// A later record for the same trial (and algorithm) supersedes earlier ones.
class CorrelationStore {
 public:
  explicit CorrelationStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path ScenarioDir(const ScenarioConfig& cfg) const;

  void WriteConfig(const ScenarioConfig& cfg) const;
  void AppendTrial(const ScenarioConfig& cfg, const TrialData& data,
                   const std::map<std::string, std::vector<Prediction>>&
                       predictions) const;

  struct StoredTrial {
    TrialData data;  // specs are not stored and stay empty
    std::map<std::string, std::vector<Prediction>> predictions;
  };

  // Trials ordered by index. Throws ConfigError on unreadable records.
  static std::vector<StoredTrial> Load(const std::filesystem::path& dir);
  static ScenarioConfig LoadConfig(const std::filesystem::path& dir);

 private:
  std::filesystem::path root_;
};

}  // namespace xcorr

#endif  // XCORR_STORE_H_
