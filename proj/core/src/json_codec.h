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

#ifndef XCORR_SRC_JSON_CODEC_H_
#define XCORR_SRC_JSON_CODEC_H_

#include <string_view>
#include <vector>

#include "json.hpp"
#include "xcorr/core_model.h"
#include "xcorr/placement.h"
#include "xcorr/prediction.h"
#include "xcorr/bayes.h"
#include "xcorr/simulator.h"

namespace xcorr::codec {

using nlohmann::json;

// Parses text, rethrowing parse errors as ConfigError.
json Parse(std::string_view text);

json ToJson(const Combination& c);
json ToJson(const Family& f);
json ToJson(const PlacementMatrix& p);
json ToJson(const Prediction& p);
json ToJson(const ModelParams& p);

Family FamilyFrom(const json& j);
PlacementMatrix PlacementFrom(const json& j);
Prediction PredictionFrom(const json& j);

json GroupsJson(const std::vector<std::vector<InputId>>& groups);
std::vector<std::vector<InputId>> GroupsFrom(const json& j);

}  // namespace xcorr::codec

#endif  // XCORR_SRC_JSON_CODEC_H_
