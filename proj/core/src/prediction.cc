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

#include "xcorr/prediction.h"

#include <string>
#include <utility>

#include "xcorr/errors.h"

namespace xcorr {

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kTargeted:
      return "targeted";
    case Verdict::kUntargeted:
      return "untargeted";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Verdict VerdictFromString(std::string_view name) {
  if (name == "targeted") return Verdict::kTargeted;
  if (name == "untargeted") return Verdict::kUntargeted;
  if (name == "unknown") return Verdict::kUnknown;
  throw ConfigError("unknown verdict '" + std::string(name) + "'");
}

Prediction Prediction::Targeted(OutputId id, Family family) {
  if (family.empty()) throw SpecError("targeted prediction needs a family");
  Prediction p;
  p.output_id = id;
  p.verdict = Verdict::kTargeted;
  p.family = std::move(family);
  return p;
}

Prediction Prediction::Untargeted(OutputId id) {
  Prediction p;
  p.output_id = id;
  p.verdict = Verdict::kUntargeted;
  return p;
}

Prediction Prediction::Unknown(OutputId id) {
  Prediction p;
  p.output_id = id;
  p.verdict = Verdict::kUnknown;
  return p;
}

}  // namespace xcorr
