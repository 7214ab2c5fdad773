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

#ifndef XCORR_PREDICTION_H_
#define XCORR_PREDICTION_H_

#include <map>
#include <string>
#include <string_view>

#include "xcorr/core_model.h"
#include "xcorr/simulator.h"

namespace xcorr {

enum class Verdict { kTargeted, kUntargeted, kUnknown };

std::string_view ToString(Verdict v);
// Throws ConfigError on an unknown name.
Verdict VerdictFromString(std::string_view name);

struct Prediction {
  OutputId output_id = 0;
  Verdict verdict = Verdict::kUnknown;
  Family family;  // non-empty iff kTargeted
  std::map<std::string, double> scores;

  static Prediction Targeted(OutputId id, Family family);
  static Prediction Untargeted(OutputId id);
  static Prediction Unknown(OutputId id);

  bool targeted() const { return verdict == Verdict::kTargeted; }
};

}  // namespace xcorr

#endif  // XCORR_PREDICTION_H_
