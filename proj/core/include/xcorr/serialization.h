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

#ifndef XCORR_SERIALIZATION_H_
#define XCORR_SERIALIZATION_H_

#include <string>
#include <string_view>

#include "xcorr/core_family_search.h"
#include "xcorr/core_model.h"
#include "xcorr/experiment.h"
#include "xcorr/placement.h"
#include "xcorr/prediction.h"
#include "xcorr/threshold_analysis.h"

namespace xcorr {

// `[[1,3],[4]]`, canonically sorted.
std::string FamilyToJson(const Family& family);
// Throws ConfigError.
Family FamilyFromJson(std::string_view text);

// {"alpha":..,"m":..,"n":..,"rows":[bitstring per account],"seed":..}
std::string PlacementToJson(const PlacementMatrix& placement);
PlacementMatrix PlacementFromJson(std::string_view text);

std::string PredictionToJson(const Prediction& prediction);
Prediction PredictionFromJson(std::string_view text);

// Groups as a JSON array of input-id arrays.
std::string GroupsToJson(const std::vector<std::vector<InputId>>& groups);
std::vector<std::vector<InputId>> GroupsFromJson(std::string_view text);

std::string ThresholdToJson(const ThresholdResult& result);
std::string RecommendationToJson(const RecommendedConfig& rec);

// One JSON object per tested combination.
std::string SearchTraceToJsonLines(const SearchResult& result,
                                   OutputId output_id);

// Canonical report: sorted keys, two-space indent, no wall-clock fields.
std::string ReportToJson(const Report& report);

// Rows of algo,n_inputs,accounts,metric,value.
std::string ReportToCsv(const Report& report);

std::string ScalingToJson(const ScalingResult& result,
                          const std::string& algorithm);
std::string ScalingToCsv(const ScalingResult& result,
                         const std::string& algorithm);

}  // namespace xcorr

#endif  // XCORR_SERIALIZATION_H_
